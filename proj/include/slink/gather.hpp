#pragma once

#include "slink/embedding.hpp"
#include "slink/index.hpp"

#include <vector>

namespace slink {

/// Probe-fair round-robin union of per-probe rankings: walk rank positions
/// 1, 2, 3, ...; at each position every probe contributes its best not yet
/// collected document; stop at n_cand distinct documents or when all probes
/// are exhausted. Result order is insertion order.
std::vector<int> gather_candidates(const VectorIndex& index,
                                   const std::vector<EmbeddingVector>& probe_vectors,
                                   std::size_t n_cand);

} // namespace slink
