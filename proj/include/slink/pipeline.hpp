#pragma once

#include "slink/documents.hpp"
#include "slink/gather.hpp"
#include "slink/graph.hpp"
#include "slink/llm.hpp"
#include "slink/select.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace slink {

struct RetrievalOptions {
    std::size_t n_cand = 100;
    std::size_t budget = 10;
    double clubsuit = 1.0;
    bool contextual = true;   // embed probes jointly with the question
    bool entropy = true;      // entropy-damped scores
    bool coverage = true;     // soft-max coverage term (vs plain sum)
    bool edges = true;        // connectivity term (off forces clubsuit = 0)
};

struct PipelineResult {
    std::string question;
    std::string method; // "crush" or "single_dpr"
    HallucinatedSchema hallucinated;
    std::vector<int> candidates;
    RetrievalResult selection;
    nlohmann::json manifest; // knobs + cache keys for the run
};

/// Full pipeline: hallucinate a mini-schema, embed its probes, gather a
/// candidate set, score it, and solve the budgeted selection greedily.
PipelineResult retrieve(const std::string& question, const VectorIndex& index,
                        const SchemaGraph& graph, EmbeddingProvider& probe_embedder,
                        LlmClient& llm, const PromptTemplate& prompt_template,
                        const RetrievalOptions& options);

/// Baseline: embed the whole question once and return its top-B documents by
/// cosine.
PipelineResult retrieve_single_dpr(const std::string& question, const VectorIndex& index,
                                   EmbeddingProvider& embedder, std::size_t budget);

/// Result serialization per the documented wire format:
/// {question, probes, candidates, selected:[{rank, qualified_name, gain}],
///  objective, config_digest}.
nlohmann::json result_to_json(const PipelineResult& result,
                              const std::vector<SchemaDocument>& documents,
                              const std::string& config_digest);

} // namespace slink
