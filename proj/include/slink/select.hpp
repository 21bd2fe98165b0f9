#pragma once

#include "slink/objective.hpp"

#include <cstdint>
#include <vector>

namespace slink {

/// A selected subset with its objective value and per-step marginal gains.
struct RetrievalResult {
    std::vector<int> selected; // greedy insertion order
    std::size_t budget = 0;
    double objective = 0.0;
    std::vector<double> gains; // gains[i] = F(R_i) - F(R_{i-1}), exact
    double clubsuit = 0.0;
};

/// Greedy maximization of objective() under a cardinality budget. Each round
/// adds the candidate with the highest resulting objective; ties break by
/// larger best per-probe score, then smaller doc_id. Deterministic and
/// invariant under permutations of the candidate list. Stops early when
/// candidates run out; an empty candidate set yields an empty result.
RetrievalResult select_greedy(const ScoredCandidateSet& scored, const SchemaGraph& graph,
                              std::size_t budget, double clubsuit,
                              const ObjectiveOptions& options = {});

/// Exact optimum by subset enumeration, for tests and small ablation runs.
/// Refuses when C(|C|, B) exceeds `subset_cap`.
RetrievalResult select_bruteforce(const ScoredCandidateSet& scored, const SchemaGraph& graph,
                                  std::size_t budget, double clubsuit,
                                  const ObjectiveOptions& options = {},
                                  std::uint64_t subset_cap = 200000);

/// Number of B-subsets of an n-set, saturating at 2^63-1.
std::uint64_t subset_count(std::size_t n, std::size_t b);

} // namespace slink
