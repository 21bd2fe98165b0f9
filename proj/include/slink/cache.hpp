#pragma once

#include "slink/embedding.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

namespace slink {

/// Content-addressed, write-once store of JSON blobs: one file per key.
/// Writes go through a temp file and rename, so concurrent writers of the
/// same key are safe and the first stored value wins.
class DirCache {
public:
    explicit DirCache(std::filesystem::path dir);

    std::optional<nlohmann::json> get(const std::string& key) const;
    void put_if_absent(const std::string& key, const nlohmann::json& value) const;
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

std::string embedding_cache_key(const std::string& provider_id, const std::string& model,
                                const std::string& text);
std::string completion_cache_key(const std::string& model, const std::string& prompt,
                                 double temperature);

/// Wraps a provider with a DirCache. A cache hit returns the stored vector
/// bit-identically; misses are fetched from the inner provider and frozen.
class CachedEmbedder : public EmbeddingProvider {
public:
    CachedEmbedder(std::shared_ptr<EmbeddingProvider> inner, std::filesystem::path cache_dir);

    std::string id() const override { return inner_->id(); }
    std::string model() const override { return inner_->model(); }
    std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) override;

    /// Number of texts already present in the cache (resumability probe).
    std::size_t count_cached(const std::vector<std::string>& texts) const;

private:
    std::shared_ptr<EmbeddingProvider> inner_;
    DirCache cache_;
};

} // namespace slink
