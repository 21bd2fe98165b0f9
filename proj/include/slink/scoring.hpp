#pragma once

#include "slink/embedding.hpp"
#include "slink/index.hpp"

#include <cstddef>
#include <vector>

namespace slink {

struct ScoreOptions {
    /// When false, the entropy damping factor is replaced by 1 and the score
    /// is the raw shifted cosine.
    bool entropy_damping = true;
};

/// Candidate documents with per-probe match distributions, entropies, and
/// damped scores.
struct ScoredCandidateSet {
    std::vector<int> candidates;               // doc_ids, insertion order
    std::vector<std::vector<double>> cosines;  // K x C
    std::vector<std::vector<double>> probs;    // K x C, rows sum to 1
    std::vector<double> entropies;             // H(k), natural log
    double mean_entropy = 0.0;                 // mean of H(k) over probes
    std::vector<std::vector<double>> scores;   // K x C, in [0, 1]
    std::vector<bool> degenerate_probes;       // all-cosines -1 rows, neutralized

    std::size_t probe_count() const { return cosines.size(); }
    std::size_t candidate_count() const { return candidates.size(); }

    /// Position of doc_id in `candidates`, or -1.
    int candidate_position(int doc_id) const;

    /// max over probes of scores[k][position]; used for greedy tie-breaks.
    double best_score(std::size_t position) const;
};

/// Core scoring from a precomputed cosine matrix (probes x candidates).
/// For each probe k: p_d = (1+cos)/2 normalized over candidates,
/// H(k) = -sum p ln p, and score = (1+cos)/2 * sigmoid(mean_H - H(k)).
/// A probe whose cosines are all exactly -1 gets uniform probabilities and a
/// zero score row, flagged in degenerate_probes.
ScoredCandidateSet score_from_cosines(std::vector<int> candidate_ids,
                                      std::vector<std::vector<double>> cosines,
                                      const ScoreOptions& options = {});

/// Computes the cosine matrix between probe vectors and candidate rows of the
/// index, then scores it.
ScoredCandidateSet score_candidates(const std::vector<EmbeddingVector>& probe_vectors,
                                    const std::vector<int>& candidate_ids,
                                    const VectorIndex& index, const ScoreOptions& options = {});

double sigmoid(double z);

} // namespace slink
