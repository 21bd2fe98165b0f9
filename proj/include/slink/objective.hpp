#pragma once

#include "slink/graph.hpp"
#include "slink/scoring.hpp"

#include <span>

namespace slink {

struct ObjectiveOptions {
    /// When false, the coverage term sums scores directly instead of taking
    /// the soft maximum over the subset.
    bool coverage_smx = true;
    /// Asserts max(S) <= smx(S) <= max(S) + ln|S| on every evaluation.
    bool debug_assert_smx_bounds = false;
};

/// Soft maximum: ln(sum(exp(v))) over a non-empty set.
double smx(std::span<const double> values);

/// Coverage term: per probe, the soft maximum of its scores inside the
/// subset, summed over probes (or a plain sum under the ablation).
double coverage_objective(const ScoredCandidateSet& scored, std::span<const int> subset,
                          const ObjectiveOptions& options = {});

/// Connectivity term: per subset element, the soft maximum of its positive
/// edge weights to other subset elements; isolated elements contribute 0.
double connectivity_objective(const SchemaGraph& graph, std::span<const int> subset,
                              const ObjectiveOptions& options = {});

/// Full objective: coverage + clubsuit * connectivity. Subset elements must
/// belong to the candidate set. Iteration is canonicalized by ascending
/// doc_id, so the value is independent of subset and candidate order.
double objective(const ScoredCandidateSet& scored, const SchemaGraph& graph,
                 std::span<const int> subset, double clubsuit,
                 const ObjectiveOptions& options = {});

} // namespace slink
