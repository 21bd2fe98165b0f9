#include "slink/index.hpp"

#include "slink/errors.hpp"
#include "slink/util.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "vector store assumes a little-endian host");

namespace slink {

VectorIndex VectorIndex::build(std::vector<EmbeddingVector> rows) {
    VectorIndex index;
    index.count_ = rows.size();
    if (rows.empty()) return index;
    index.dim_ = rows[0].dim();
    if (index.dim_ == 0) throw ValidationError("index rows must have positive dimension");
    index.data_.reserve(index.count_ * index.dim_);
    index.norms_.reserve(index.count_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].dim() != index.dim_) {
            throw ValidationError("dimension mismatch at row " + std::to_string(i) + ": got " +
                                  std::to_string(rows[i].dim()) + ", index dim " +
                                  std::to_string(index.dim_));
        }
        const double n = rows[i].norm();
        if (n == 0.0) {
            throw ValidationError("zero vector rejected at ingestion (row " + std::to_string(i) +
                                  ")");
        }
        index.norms_.push_back(n);
        index.data_.insert(index.data_.end(), rows[i].values.begin(), rows[i].values.end());
    }
    return index;
}

std::span<const float> VectorIndex::row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
}

double VectorIndex::cosine(const EmbeddingVector& query, std::size_t r) const {
    const double qn = query.norm();
    if (qn == 0.0) throw ArgumentError("cosine query must have non-zero norm");
    const auto d = row(r);
    double dot = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        dot += static_cast<double>(query.values[i]) * static_cast<double>(d[i]);
    }
    return dot / (qn * norms_[r]);
}

std::vector<Neighbor> VectorIndex::knn(const EmbeddingVector& query, std::size_t k) const {
    if (k < 1) throw ArgumentError("knn: k must be >= 1");
    if (empty()) return {};
    if (query.dim() != dim_) {
        throw ArgumentError("knn: query dim " + std::to_string(query.dim()) +
                            " does not match index dim " + std::to_string(dim_));
    }
    std::vector<Neighbor> all;
    all.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) {
        all.push_back({static_cast<int>(i), cosine(query, i)});
    }
    const std::size_t take = std::min(k, count_);
    auto better = [](const Neighbor& a, const Neighbor& b) {
        if (a.cosine != b.cosine) return a.cosine > b.cosine;
        return a.doc_id < b.doc_id;
    };
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                      better);
    all.resize(take);
    return all;
}

std::vector<Neighbor> VectorIndex::rank_all(const EmbeddingVector& query) const {
    if (empty()) return {};
    return knn(query, count_);
}

void VectorIndex::save(const std::filesystem::path& dir, const IndexManifest& manifest) const {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "vectors.f32", std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + (dir / "vectors.f32").string());
        out.write(reinterpret_cast<const char*>(data_.data()),
                  static_cast<std::streamsize>(data_.size() * sizeof(float)));
        if (!out) throw Error("short write to vectors.f32");
    }
    nlohmann::json m = {
        {"dim", manifest.dim},           {"count", manifest.count},
        {"provider", manifest.provider}, {"model", manifest.model},
        {"doc_ids_sha256", manifest.doc_ids_sha256},
        {"display_sha256", manifest.display_sha256},
    };
    write_json_file(dir / "manifest.json", m);
}

std::pair<VectorIndex, IndexManifest> VectorIndex::load(const std::filesystem::path& dir) {
    const auto m = read_json_file(dir / "manifest.json");
    IndexManifest manifest;
    manifest.dim = m.at("dim").get<std::size_t>();
    manifest.count = m.at("count").get<std::size_t>();
    manifest.provider = m.at("provider").get<std::string>();
    manifest.model = m.at("model").get<std::string>();
    manifest.doc_ids_sha256 = m.at("doc_ids_sha256").get<std::string>();
    manifest.display_sha256 = m.value("display_sha256", std::string{});

    const std::string raw = read_file(dir / "vectors.f32");
    if (raw.size() != manifest.count * manifest.dim * sizeof(float)) {
        throw ValidationError("vectors.f32 size " + std::to_string(raw.size()) +
                              " does not match manifest (count=" + std::to_string(manifest.count) +
                              ", dim=" + std::to_string(manifest.dim) + ")");
    }
    VectorIndex index;
    index.dim_ = manifest.dim;
    index.count_ = manifest.count;
    index.data_.resize(manifest.count * manifest.dim);
    std::memcpy(index.data_.data(), raw.data(), raw.size());
    index.norms_.reserve(manifest.count);
    for (std::size_t i = 0; i < manifest.count; ++i) {
        double acc = 0.0;
        const auto r = index.row(i);
        for (float v : r) acc += static_cast<double>(v) * static_cast<double>(v);
        const double n = std::sqrt(acc);
        if (n == 0.0) {
            throw ValidationError("zero vector in stored index at row " + std::to_string(i));
        }
        index.norms_.push_back(n);
    }
    return {std::move(index), std::move(manifest)};
}

} // namespace slink
