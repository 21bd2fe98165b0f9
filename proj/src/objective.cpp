#include "slink/objective.hpp"

#include "slink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

namespace slink {

namespace {

void assert_smx_bounds(std::span<const double> values, double result) {
    double m = values[0];
    for (double v : values) m = std::max(m, v);
    const double upper = m + std::log(static_cast<double>(values.size()));
    const double slack = 1e-9;
    if (result < m - slack || result > upper + slack) {
        throw Error("smx bounds violated: smx=" + std::to_string(result) + " max=" +
                    std::to_string(m) + " n=" + std::to_string(values.size()));
    }
}

/// Subset doc_ids mapped to candidate positions, sorted by doc_id.
std::vector<std::pair<int, std::size_t>> canonical_positions(const ScoredCandidateSet& scored,
                                                             std::span<const int> subset) {
    if (subset.empty()) throw ArgumentError("objective: subset must be non-empty");
    std::unordered_map<int, std::size_t> position;
    position.reserve(scored.candidates.size());
    for (std::size_t i = 0; i < scored.candidates.size(); ++i) {
        position.emplace(scored.candidates[i], i);
    }
    std::vector<std::pair<int, std::size_t>> out;
    out.reserve(subset.size());
    for (int doc : subset) {
        auto it = position.find(doc);
        if (it == position.end()) {
            throw ArgumentError("objective: doc_id " + std::to_string(doc) +
                                " is not in the candidate set");
        }
        out.emplace_back(doc, it->second);
    }
    std::sort(out.begin(), out.end());
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].first == out[i - 1].first) {
            throw ArgumentError("objective: duplicate doc_id " + std::to_string(out[i].first) +
                                " in subset");
        }
    }
    return out;
}

} // namespace

double smx(std::span<const double> values) {
    if (values.empty()) throw ArgumentError("smx of an empty set is undefined");
    double m = values[0];
    for (double v : values) m = std::max(m, v);
    double acc = 0.0;
    for (double v : values) acc += std::exp(v - m);
    return m + std::log(acc);
}

double coverage_objective(const ScoredCandidateSet& scored, std::span<const int> subset,
                          const ObjectiveOptions& options) {
    const auto members = canonical_positions(scored, subset);
    double total = 0.0;
    std::vector<double> vals;
    vals.reserve(members.size());
    for (std::size_t k = 0; k < scored.probe_count(); ++k) {
        vals.clear();
        for (const auto& [doc, pos] : members) vals.push_back(scored.scores[k][pos]);
        if (options.coverage_smx) {
            const double v = smx(vals);
            if (options.debug_assert_smx_bounds) assert_smx_bounds(vals, v);
            total += v;
        } else {
            for (double v : vals) total += v;
        }
    }
    return total;
}

double connectivity_objective(const SchemaGraph& graph, std::span<const int> subset,
                              const ObjectiveOptions& options) {
    if (subset.empty()) throw ArgumentError("objective: subset must be non-empty");
    std::vector<int> members(subset.begin(), subset.end());
    std::sort(members.begin(), members.end());

    double total = 0.0;
    std::vector<double> incident;
    for (int doc : members) {
        incident.clear();
        // neighbors are sorted by id; intersect with the sorted subset
        auto nbrs = graph.neighbors(doc);
        std::size_t mi = 0;
        for (const auto& [other, w] : nbrs) {
            while (mi < members.size() && members[mi] < other) ++mi;
            if (mi == members.size()) break;
            if (members[mi] == other && other != doc && w > 0.0) {
                incident.push_back(w);
            }
        }
        if (incident.empty()) continue; // isolated element: no connectivity reward
        const double v = smx(incident);
        if (options.debug_assert_smx_bounds) assert_smx_bounds(incident, v);
        total += v;
    }
    return total;
}

double objective(const ScoredCandidateSet& scored, const SchemaGraph& graph,
                 std::span<const int> subset, double clubsuit, const ObjectiveOptions& options) {
    const double o1 = coverage_objective(scored, subset, options);
    if (clubsuit == 0.0) return o1;
    return o1 + clubsuit * connectivity_objective(graph, subset, options);
}

} // namespace slink
