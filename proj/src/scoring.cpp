#include "slink/scoring.hpp"

#include "slink/errors.hpp"

#include <algorithm>
#include <cmath>

namespace slink {

double sigmoid(double z) {
    return 1.0 / (1.0 + std::exp(-z));
}

int ScoredCandidateSet::candidate_position(int doc_id) const {
    auto it = std::find(candidates.begin(), candidates.end(), doc_id);
    if (it == candidates.end()) return -1;
    return static_cast<int>(it - candidates.begin());
}

double ScoredCandidateSet::best_score(std::size_t position) const {
    double best = 0.0;
    for (const auto& row : scores) best = std::max(best, row[position]);
    return best;
}

ScoredCandidateSet score_from_cosines(std::vector<int> candidate_ids,
                                      std::vector<std::vector<double>> cosines,
                                      const ScoreOptions& options) {
    if (candidate_ids.empty()) throw ArgumentError("score: need at least one candidate");
    if (cosines.empty()) throw ArgumentError("score: need at least one probe");
    const std::size_t n = candidate_ids.size();
    for (const auto& row : cosines) {
        if (row.size() != n) {
            throw ArgumentError("score: cosine row size does not match candidate count");
        }
    }

    ScoredCandidateSet out;
    out.candidates = std::move(candidate_ids);
    out.cosines = std::move(cosines);
    const std::size_t k_count = out.cosines.size();
    out.probs.assign(k_count, std::vector<double>(n, 0.0));
    out.entropies.assign(k_count, 0.0);
    out.scores.assign(k_count, std::vector<double>(n, 0.0));
    out.degenerate_probes.assign(k_count, false);

    for (std::size_t k = 0; k < k_count; ++k) {
        double z = 0.0;
        for (double c : out.cosines[k]) z += 0.5 * (1.0 + c);
        if (z == 0.0) {
            // every cosine is exactly -1; neutralize the probe
            out.degenerate_probes[k] = true;
            const double uniform = 1.0 / static_cast<double>(n);
            out.probs[k].assign(n, uniform);
            out.entropies[k] = std::log(static_cast<double>(n));
            continue;
        }
        double entropy = 0.0;
        for (std::size_t d = 0; d < n; ++d) {
            const double p = 0.5 * (1.0 + out.cosines[k][d]) / z;
            out.probs[k][d] = p;
            if (p > 0.0) entropy -= p * std::log(p);
        }
        out.entropies[k] = entropy;
    }

    double mean = 0.0;
    for (double h : out.entropies) mean += h;
    out.mean_entropy = mean / static_cast<double>(k_count);

    for (std::size_t k = 0; k < k_count; ++k) {
        if (out.degenerate_probes[k]) continue; // score row stays zero
        const double damp =
            options.entropy_damping ? sigmoid(out.mean_entropy - out.entropies[k]) : 1.0;
        for (std::size_t d = 0; d < n; ++d) {
            out.scores[k][d] = 0.5 * (1.0 + out.cosines[k][d]) * damp;
        }
    }
    return out;
}

ScoredCandidateSet score_candidates(const std::vector<EmbeddingVector>& probe_vectors,
                                    const std::vector<int>& candidate_ids,
                                    const VectorIndex& index, const ScoreOptions& options) {
    std::vector<std::vector<double>> cosines(probe_vectors.size(),
                                             std::vector<double>(candidate_ids.size(), 0.0));
    for (std::size_t k = 0; k < probe_vectors.size(); ++k) {
        for (std::size_t d = 0; d < candidate_ids.size(); ++d) {
            cosines[k][d] = index.cosine(probe_vectors[k],
                                         static_cast<std::size_t>(candidate_ids[d]));
        }
    }
    return score_from_cosines(candidate_ids, std::move(cosines), options);
}

} // namespace slink
