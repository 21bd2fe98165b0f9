#include "slink/cache.hpp"

#include "slink/errors.hpp"
#include "slink/util.hpp"

#include <utility>

namespace slink {

namespace {

// \x1f keeps concatenated key parts from colliding across boundaries.
std::string join_key(std::initializer_list<std::string_view> parts) {
    std::string joined;
    for (std::string_view p : parts) {
        joined.append(p);
        joined.push_back('\x1f');
    }
    return sha256_hex(joined);
}

} // namespace

DirCache::DirCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::optional<nlohmann::json> DirCache::get(const std::string& key) const {
    const auto path = dir_ / (key + ".json");
    if (!std::filesystem::exists(path)) return std::nullopt;
    return read_json_file(path);
}

void DirCache::put_if_absent(const std::string& key, const nlohmann::json& value) const {
    write_file_if_absent(dir_ / (key + ".json"), value.dump() + "\n");
}

std::string embedding_cache_key(const std::string& provider_id, const std::string& model,
                                const std::string& text) {
    return join_key({"embed", provider_id, model, text});
}

std::string completion_cache_key(const std::string& model, const std::string& prompt,
                                 double temperature) {
    const nlohmann::json t = temperature; // deterministic float formatting
    return join_key({"complete", model, prompt, t.dump()});
}

CachedEmbedder::CachedEmbedder(std::shared_ptr<EmbeddingProvider> inner,
                               std::filesystem::path cache_dir)
    : inner_(std::move(inner)), cache_(std::move(cache_dir)) {}

std::vector<EmbeddingVector> CachedEmbedder::embed_batch(const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out(texts.size());
    std::vector<std::size_t> missing;
    std::vector<std::string> missing_texts;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        const auto key = embedding_cache_key(inner_->id(), inner_->model(), texts[i]);
        if (auto hit = cache_.get(key)) {
            out[i].values = hit->at("values").get<std::vector<float>>();
        } else {
            missing.push_back(i);
            missing_texts.push_back(texts[i]);
        }
    }
    if (!missing_texts.empty()) {
        auto fetched = inner_->embed_batch(missing_texts);
        if (fetched.size() != missing_texts.size()) {
            throw TransportError("embedding provider returned " + std::to_string(fetched.size()) +
                                 " vectors for " + std::to_string(missing_texts.size()) + " inputs");
        }
        for (std::size_t j = 0; j < missing.size(); ++j) {
            const auto key = embedding_cache_key(inner_->id(), inner_->model(), missing_texts[j]);
            cache_.put_if_absent(key, nlohmann::json{{"values", fetched[j].values}});
            // re-read so a concurrent first writer still wins
            auto stored = cache_.get(key);
            if (!stored) throw Error("cache write failed for key " + key);
            out[missing[j]].values = stored->at("values").get<std::vector<float>>();
        }
    }
    return out;
}

std::size_t CachedEmbedder::count_cached(const std::vector<std::string>& texts) const {
    std::size_t n = 0;
    for (const std::string& t : texts) {
        if (cache_.get(embedding_cache_key(inner_->id(), inner_->model(), t))) ++n;
    }
    return n;
}

} // namespace slink
