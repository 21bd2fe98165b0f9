#include "slink/llm.hpp"

#include "slink/errors.hpp"
#include "slink/util.hpp"

#include <utility>

namespace slink {

std::vector<std::string> probes_from_tables(const std::vector<ParsedTable>& tables) {
    std::vector<std::string> probes;
    for (const ParsedTable& t : tables) {
        for (const std::string& c : t.columns) {
            probes.push_back(t.name + "." + c);
        }
    }
    return probes;
}

HallucinatedSchema hallucinate(LlmClient& client, const PromptTemplate& tpl,
                               const std::string& question) {
    LlmCall call;
    call.prompt = build_prompt(tpl, question);
    call.temperature = tpl.temperature;
    call.question = question;

    HallucinatedSchema out;
    out.raw_response = client.complete(call);

    ParsedSchema parsed = parse_schema(out.raw_response);
    out.skipped = parsed.skipped;
    if (!parsed.tables.empty()) {
        out.tables = std::move(parsed.tables);
    } else {
        // Freeform fallback: treat comma/newline-separated fragments of the
        // response as columns of one pseudo-table.
        out.used_fallback = true;
        std::vector<std::string> fragments = parsed.skipped;
        if (fragments.empty()) fragments.push_back("unparsed");
        out.tables.push_back({"_freeform", std::move(fragments)});
    }
    out.probes = probes_from_tables(out.tables);
    return out;
}

FixtureLlmClient::FixtureLlmClient(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (!std::filesystem::is_directory(dir_)) {
        throw ArgumentError("fixture LLM directory does not exist: " + dir_.string());
    }
}

std::filesystem::path FixtureLlmClient::record_path(const std::filesystem::path& dir,
                                                    const std::string& question) {
    return dir / (sha256_hex(question) + ".json");
}

void FixtureLlmClient::record(const std::filesystem::path& dir, const std::string& question,
                              const std::string& response) {
    std::filesystem::create_directories(dir);
    const nlohmann::json rec = {{"question", question}, {"response", response}};
    write_file_if_absent(record_path(dir, question), rec.dump(2) + "\n");
}

std::string FixtureLlmClient::complete(const LlmCall& call) {
    const auto path = record_path(dir_, call.question);
    if (!std::filesystem::exists(path)) {
        throw TransportError("no recorded response for question: " + call.question + " (expected " +
                             path.string() + ")");
    }
    return read_json_file(path).at("response").get<std::string>();
}

} // namespace slink
