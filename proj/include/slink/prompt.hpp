#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace slink {

struct PromptShot {
    std::string question; // x
    std::string schema;   // K
};

struct PromptTemplate {
    std::string instruction;
    std::vector<PromptShot> shots;
    double temperature = 0.0;
    std::size_t max_shots = 0; // effective shot count; <= shots.size()
};

/// Loads {"instruction": str, "shots": [{"x": str, "k": str}], "temperature": float}.
/// `shot_limit`, when given, caps the number of shots used (prefix order).
PromptTemplate load_prompt_template(const std::filesystem::path& path,
                                    std::optional<std::size_t> shot_limit = std::nullopt);

/// Byte-deterministic prompt: instruction, the shots as "x:"/"K:" pairs, then
/// the target question with an empty "K:".
std::string build_prompt(const PromptTemplate& tpl, const std::string& question);

} // namespace slink
