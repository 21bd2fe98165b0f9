#include "slink/prompt.hpp"

#include "slink/errors.hpp"
#include "slink/util.hpp"

#include <algorithm>

namespace slink {

PromptTemplate load_prompt_template(const std::filesystem::path& path,
                                    std::optional<std::size_t> shot_limit) {
    const auto doc = read_json_file(path);
    PromptTemplate tpl;
    tpl.instruction = doc.at("instruction").get<std::string>();
    if (trim_ws(tpl.instruction).empty()) {
        throw ValidationError("prompt template " + path.string() + ": instruction must be non-empty");
    }
    if (doc.contains("shots")) {
        for (const auto& shot : doc.at("shots")) {
            tpl.shots.push_back({shot.at("x").get<std::string>(), shot.at("k").get<std::string>()});
        }
    }
    tpl.temperature = doc.value("temperature", 0.0);
    if (tpl.temperature < 0.0) {
        throw ValidationError("prompt template " + path.string() + ": temperature must be >= 0");
    }
    tpl.max_shots = shot_limit ? std::min(*shot_limit, tpl.shots.size()) : tpl.shots.size();
    return tpl;
}

std::string build_prompt(const PromptTemplate& tpl, const std::string& question) {
    if (trim_ws(question).empty()) {
        throw ArgumentError("build_prompt: question must be non-empty");
    }
    std::string out = tpl.instruction;
    const std::size_t n = std::min(tpl.max_shots, tpl.shots.size());
    for (std::size_t i = 0; i < n; ++i) {
        out += "\n\nx: " + tpl.shots[i].question + "\nK: " + tpl.shots[i].schema;
    }
    out += "\n\nx: " + question + "\nK:";
    return out;
}

} // namespace slink
