#pragma once

#include "slink/embedding.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace slink {

struct Neighbor {
    int doc_id;
    double cosine;
};

struct IndexManifest {
    std::size_t dim = 0;
    std::size_t count = 0;
    std::string provider;
    std::string model;
    std::string doc_ids_sha256;     // sha256 over '\n'-joined qualified names
    std::string display_sha256;     // sha256 over '\n'-joined display texts
};

/// Dense row-major matrix of document embeddings, row i == doc_id i.
/// Immutable after construction; brute-force exact cosine k-NN.
class VectorIndex {
public:
    VectorIndex() = default;

    /// Validates that all rows share one dimension and none has zero norm.
    static VectorIndex build(std::vector<EmbeddingVector> rows);

    std::size_t size() const { return count_; }
    std::size_t dim() const { return dim_; }
    bool empty() const { return count_ == 0; }

    std::span<const float> row(std::size_t i) const;
    double row_norm(std::size_t i) const { return norms_[i]; }

    double cosine(const EmbeddingVector& query, std::size_t row) const;

    /// Top-k by cosine descending, ties by ascending doc_id. Returns
    /// min(k, N) results; empty index yields an empty list.
    std::vector<Neighbor> knn(const EmbeddingVector& query, std::size_t k) const;

    /// Full ranking (knn with k = N).
    std::vector<Neighbor> rank_all(const EmbeddingVector& query) const;

    /// Writes `vectors.f32` (little-endian float32 rows) and `manifest.json`.
    void save(const std::filesystem::path& dir, const IndexManifest& manifest) const;
    static std::pair<VectorIndex, IndexManifest> load(const std::filesystem::path& dir);

private:
    std::vector<float> data_; // count * dim
    std::vector<double> norms_;
    std::size_t dim_ = 0;
    std::size_t count_ = 0;
};

} // namespace slink
