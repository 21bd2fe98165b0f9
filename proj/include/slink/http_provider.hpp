#pragma once

#include "slink/cache.hpp"
#include "slink/embedding.hpp"
#include "slink/llm.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

namespace slink {

struct HttpProviderConfig {
    std::string endpoint; // full URL, e.g. "http://127.0.0.1:8080/v1/embeddings"
    std::string model;
    std::string auth_env;                    // env var holding the API key; empty = no auth
    std::string auth_header = "Authorization";
    std::string auth_scheme = "Bearer";      // prepended to the key; may be empty
    int max_attempts = 3;
    int retry_backoff_ms = 200;
    std::size_t max_in_flight = 8;
    std::size_t batch_size = 64;
    int connect_timeout_s = 5;
    int read_timeout_s = 60;
};

/// POSTs {"model": str, "input": [str, ...]} and expects
/// {"data": [{"embedding": [float, ...]}, ...]} in input order.
class HttpEmbeddingProvider : public EmbeddingProvider {
public:
    explicit HttpEmbeddingProvider(HttpProviderConfig config);
    ~HttpEmbeddingProvider() override;

    std::string id() const override;
    std::string model() const override { return config_.model; }
    std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) override;

private:
    HttpProviderConfig config_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Completion-style or chat-style JSON payloads, selected by config.
/// Responses are cached keyed by (model, prompt, temperature) when a cache
/// directory is given; the first observed response is frozen.
class HttpLlmClient : public LlmClient {
public:
    enum class PayloadStyle { completion, chat };

    HttpLlmClient(HttpProviderConfig config, PayloadStyle style, int max_tokens,
                  std::optional<std::filesystem::path> cache_dir);
    ~HttpLlmClient() override;

    std::string model() const override { return config_.model; }
    std::string complete(const LlmCall& call) override;

private:
    HttpProviderConfig config_;
    PayloadStyle style_;
    int max_tokens_;
    std::optional<DirCache> cache_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace slink
