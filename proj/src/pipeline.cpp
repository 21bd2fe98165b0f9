#include "slink/pipeline.hpp"

#include "slink/cache.hpp"
#include "slink/errors.hpp"

#include <utility>

namespace slink {

PipelineResult retrieve(const std::string& question, const VectorIndex& index,
                        const SchemaGraph& graph, EmbeddingProvider& probe_embedder,
                        LlmClient& llm, const PromptTemplate& prompt_template,
                        const RetrievalOptions& options) {
    if (options.budget < 1) throw ArgumentError("retrieve: budget must be >= 1");
    if (options.n_cand < 1) throw ArgumentError("retrieve: n_cand must be >= 1");

    PipelineResult result;
    result.question = question;
    result.method = "crush";
    result.hallucinated = hallucinate(llm, prompt_template, question);

    std::vector<EmbeddingVector> probe_vectors;
    std::vector<std::string> probe_cache_keys;
    probe_vectors.reserve(result.hallucinated.probes.size());
    for (const std::string& probe : result.hallucinated.probes) {
        probe_vectors.push_back(embed_probe(probe_embedder, question, probe, options.contextual));
        probe_cache_keys.push_back(embedding_cache_key(
            probe_embedder.id(), probe_embedder.model(),
            probe_input_text(question, probe, options.contextual)));
    }

    result.candidates = gather_candidates(index, probe_vectors, options.n_cand);
    if (!result.candidates.empty()) {
        const ScoredCandidateSet scored = score_candidates(
            probe_vectors, result.candidates, index, ScoreOptions{options.entropy});
        const double clubsuit = options.edges ? options.clubsuit : 0.0;
        result.selection = select_greedy(scored, graph, options.budget, clubsuit,
                                         ObjectiveOptions{options.coverage});
    } else {
        result.selection.budget = options.budget;
    }

    result.manifest = {
        {"method", result.method},
        {"question", question},
        {"n_cand", options.n_cand},
        {"budget", options.budget},
        {"clubsuit", options.clubsuit},
        {"contextual", options.contextual},
        {"entropy", options.entropy},
        {"coverage", options.coverage},
        {"edges", options.edges},
        {"embedding_provider", probe_embedder.id()},
        {"embedding_model", probe_embedder.model()},
        {"llm_model", llm.model()},
        {"llm_cache_key",
         completion_cache_key(llm.model(), build_prompt(prompt_template, question),
                              prompt_template.temperature)},
        {"probe_cache_keys", probe_cache_keys},
        {"hallucination_fallback", result.hallucinated.used_fallback},
    };
    return result;
}

PipelineResult retrieve_single_dpr(const std::string& question, const VectorIndex& index,
                                   EmbeddingProvider& embedder, std::size_t budget) {
    if (budget < 1) throw ArgumentError("retrieve_single_dpr: budget must be >= 1");

    PipelineResult result;
    result.question = question;
    result.method = "single_dpr";

    const EmbeddingVector query = embed_text(embedder, question);
    const auto neighbors = index.knn(query, budget);
    result.selection.budget = budget;
    for (const Neighbor& n : neighbors) {
        result.candidates.push_back(n.doc_id);
        result.selection.selected.push_back(n.doc_id);
        result.selection.gains.push_back(n.cosine);
    }

    result.manifest = {
        {"method", result.method},
        {"question", question},
        {"budget", budget},
        {"embedding_provider", embedder.id()},
        {"embedding_model", embedder.model()},
        {"question_cache_key", embedding_cache_key(embedder.id(), embedder.model(), question)},
    };
    return result;
}

nlohmann::json result_to_json(const PipelineResult& result,
                              const std::vector<SchemaDocument>& documents,
                              const std::string& config_digest) {
    nlohmann::json candidates = nlohmann::json::array();
    for (int doc : result.candidates) {
        candidates.push_back(documents.at(static_cast<std::size_t>(doc)).qualified_name);
    }
    nlohmann::json selected = nlohmann::json::array();
    for (std::size_t i = 0; i < result.selection.selected.size(); ++i) {
        const int doc = result.selection.selected[i];
        selected.push_back({
            {"rank", i + 1},
            {"qualified_name", documents.at(static_cast<std::size_t>(doc)).qualified_name},
            {"gain", i < result.selection.gains.size() ? result.selection.gains[i] : 0.0},
        });
    }
    return {
        {"question", result.question},  {"probes", result.hallucinated.probes},
        {"candidates", candidates},     {"selected", selected},
        {"objective", result.selection.objective}, {"config_digest", config_digest},
    };
}

} // namespace slink
