#pragma once

#include "slink/prompt.hpp"
#include "slink/schema_parse.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace slink {

struct LlmCall {
    std::string prompt;
    double temperature = 0.0;
    /// The user question behind the prompt. Carried as metadata so replay
    /// clients can key recorded responses by question.
    std::string question;
};

class LlmClient {
public:
    virtual ~LlmClient() = default;

    virtual std::string model() const = 0;
    virtual std::string complete(const LlmCall& call) = 0;
};

/// The hallucinated mini-schema for one question.
struct HallucinatedSchema {
    std::vector<ParsedTable> tables;
    std::string raw_response;
    std::vector<std::string> probes; // "table.column", flattened in order
    bool used_fallback = false;      // response did not parse as a schema
    std::vector<std::string> skipped;
};

/// Prompts the client and parses the response. An unparseable response falls
/// back to a single pseudo-table named "_freeform" whose columns are the
/// response's comma/newline-separated fragments, so the result is never
/// empty.
HallucinatedSchema hallucinate(LlmClient& client, const PromptTemplate& tpl,
                               const std::string& question);

std::vector<std::string> probes_from_tables(const std::vector<ParsedTable>& tables);

/// Replays recorded responses from a directory of
/// `<sha256(question)>.json` files holding {"question": str, "response": str}.
class FixtureLlmClient : public LlmClient {
public:
    explicit FixtureLlmClient(std::filesystem::path dir);

    std::string model() const override { return "fixture"; }
    std::string complete(const LlmCall& call) override;

    static std::filesystem::path record_path(const std::filesystem::path& dir,
                                             const std::string& question);
    /// Writes one replay record (first write wins).
    static void record(const std::filesystem::path& dir, const std::string& question,
                       const std::string& response);

private:
    std::filesystem::path dir_;
};

/// Test/tooling client backed by a plain function.
class CallbackLlmClient : public LlmClient {
public:
    using Fn = std::function<std::string(const LlmCall&)>;
    CallbackLlmClient(std::string model, Fn fn) : model_(std::move(model)), fn_(std::move(fn)) {}

    std::string model() const override { return model_; }
    std::string complete(const LlmCall& call) override { return fn_(call); }

private:
    std::string model_;
    Fn fn_;
};

} // namespace slink
