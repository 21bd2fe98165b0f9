#include "slink/gather.hpp"

#include "slink/errors.hpp"

namespace slink {

std::vector<int> gather_candidates(const VectorIndex& index,
                                   const std::vector<EmbeddingVector>& probe_vectors,
                                   std::size_t n_cand) {
    if (n_cand < 1) throw ArgumentError("gather_candidates: n_cand must be >= 1");
    if (probe_vectors.empty()) throw ArgumentError("gather_candidates: need at least one probe");
    if (index.empty()) return {};

    std::vector<std::vector<Neighbor>> rankings;
    rankings.reserve(probe_vectors.size());
    for (const auto& probe : probe_vectors) {
        rankings.push_back(index.rank_all(probe));
    }

    std::vector<int> result;
    std::vector<char> seen(index.size(), 0);
    std::vector<std::size_t> cursor(rankings.size(), 0);
    bool any_active = true;
    while (result.size() < n_cand && any_active) {
        any_active = false;
        for (std::size_t p = 0; p < rankings.size(); ++p) {
            auto& pos = cursor[p];
            while (pos < rankings[p].size() && seen[static_cast<std::size_t>(rankings[p][pos].doc_id)]) {
                ++pos;
            }
            if (pos >= rankings[p].size()) continue;
            any_active = true;
            const int doc = rankings[p][pos].doc_id;
            seen[static_cast<std::size_t>(doc)] = 1;
            result.push_back(doc);
            ++pos;
            if (result.size() == n_cand) break;
        }
    }
    return result;
}

} // namespace slink
