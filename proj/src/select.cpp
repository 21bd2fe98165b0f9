#include "slink/select.hpp"

#include "slink/errors.hpp"

#include <algorithm>
#include <limits>

namespace slink {

RetrievalResult select_greedy(const ScoredCandidateSet& scored, const SchemaGraph& graph,
                              std::size_t budget, double clubsuit,
                              const ObjectiveOptions& options) {
    if (budget < 1) throw ArgumentError("select_greedy: budget must be >= 1");

    RetrievalResult result;
    result.budget = budget;
    result.clubsuit = clubsuit;
    if (scored.candidate_count() == 0) return result;

    // Candidates in ascending doc_id order: combined with exact tie-breaks
    // this makes the outcome independent of the input candidate order.
    std::vector<std::pair<int, std::size_t>> pool; // (doc_id, position)
    pool.reserve(scored.candidate_count());
    for (std::size_t i = 0; i < scored.candidate_count(); ++i) {
        pool.emplace_back(scored.candidates[i], i);
    }
    std::sort(pool.begin(), pool.end());

    std::vector<int> current;
    double prev_objective = 0.0;
    const std::size_t rounds = std::min(budget, pool.size());
    for (std::size_t round = 0; round < rounds; ++round) {
        double best_objective = -std::numeric_limits<double>::infinity();
        double best_tiebreak = -1.0;
        int best_doc = -1;
        std::size_t best_pool_index = 0;

        current.push_back(0); // slot for the trial element
        for (std::size_t pi = 0; pi < pool.size(); ++pi) {
            const auto [doc, pos] = pool[pi];
            if (doc < 0) continue; // already taken
            current.back() = doc;
            const double value = objective(scored, graph, current, clubsuit, options);
            const double tiebreak = scored.best_score(pos);
            if (value > best_objective ||
                (value == best_objective && tiebreak > best_tiebreak)) {
                best_objective = value;
                best_tiebreak = tiebreak;
                best_doc = doc;
                best_pool_index = pi;
            }
        }
        current.back() = best_doc;
        pool[best_pool_index].first = -1;
        result.selected.push_back(best_doc);
        result.gains.push_back(best_objective - prev_objective);
        prev_objective = best_objective;
    }
    result.objective = prev_objective;
    return result;
}

std::uint64_t subset_count(std::size_t n, std::size_t b) {
    if (b > n) return 0;
    b = std::min(b, n - b);
    const std::uint64_t cap = std::numeric_limits<std::int64_t>::max();
    std::uint64_t result = 1;
    for (std::size_t i = 1; i <= b; ++i) {
        // result *= (n - b + i) / i, kept exact by dividing last
        const std::uint64_t factor = n - b + i;
        if (result > cap / factor) return cap;
        result = result * factor / i;
    }
    return result;
}

RetrievalResult select_bruteforce(const ScoredCandidateSet& scored, const SchemaGraph& graph,
                                  std::size_t budget, double clubsuit,
                                  const ObjectiveOptions& options, std::uint64_t subset_cap) {
    if (budget < 1) throw ArgumentError("select_bruteforce: budget must be >= 1");
    RetrievalResult result;
    result.budget = budget;
    result.clubsuit = clubsuit;
    const std::size_t n = scored.candidate_count();
    if (n == 0) return result;

    const std::size_t b = std::min(budget, n);
    const std::uint64_t total = subset_count(n, b);
    if (total > subset_cap) {
        throw RefusalError("select_bruteforce: C(" + std::to_string(n) + ", " + std::to_string(b) +
                           ") = " + std::to_string(total) + " subsets exceeds cap " +
                           std::to_string(subset_cap) + "; use select_greedy");
    }

    std::vector<int> docs(scored.candidates);
    std::sort(docs.begin(), docs.end());

    std::vector<std::size_t> choose(b);
    for (std::size_t i = 0; i < b; ++i) choose[i] = i;
    std::vector<int> subset(b);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> best_subset;
    while (true) {
        for (std::size_t i = 0; i < b; ++i) subset[i] = docs[choose[i]];
        const double value = objective(scored, graph, subset, clubsuit, options);
        if (value > best) {
            best = value;
            best_subset = subset;
        }
        // next combination in lexicographic order
        std::size_t i = b;
        while (i > 0) {
            --i;
            if (choose[i] != i + n - b) {
                ++choose[i];
                for (std::size_t j = i + 1; j < b; ++j) choose[j] = choose[j - 1] + 1;
                break;
            }
            if (i == 0) {
                result.selected = std::move(best_subset);
                result.objective = best;
                return result;
            }
        }
    }
}

} // namespace slink
