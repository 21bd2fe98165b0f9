#include "slink/http_provider.hpp"

#include "slink/errors.hpp"
#include "slink/util.hpp"

#include <chrono>
#include <cstdlib>
#include <deque>
#include <future>
#include <semaphore>
#include <thread>

#include <httplib.h>

namespace slink {

namespace {

struct ParsedUrl {
    std::string base; // scheme://host[:port]
    std::string path; // /rest, defaults to "/"
};

ParsedUrl parse_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ArgumentError("endpoint must be a full URL: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::optional<std::pair<std::string, std::string>> auth_header(const HttpProviderConfig& cfg) {
    if (cfg.auth_env.empty()) return std::nullopt;
    const char* key = std::getenv(cfg.auth_env.c_str());
    if (key == nullptr || *key == '\0') {
        throw ArgumentError("API key environment variable not set: " + cfg.auth_env);
    }
    const std::string value = cfg.auth_scheme.empty() ? key : cfg.auth_scheme + " " + key;
    return std::make_pair(cfg.auth_header, value);
}

/// POSTs `body` with retries; returns the parsed JSON response.
nlohmann::json post_json(const HttpProviderConfig& cfg, const nlohmann::json& body) {
    const ParsedUrl url = parse_url(cfg.endpoint);
    const auto auth = auth_header(cfg);
    std::string last_error;
    for (int attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
        if (attempt > 1) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(cfg.retry_backoff_ms * (attempt - 1)));
        }
        httplib::Client client(url.base);
        client.set_connection_timeout(cfg.connect_timeout_s, 0);
        client.set_read_timeout(cfg.read_timeout_s, 0);
        httplib::Headers headers;
        if (auth) headers.insert(*auth);
        auto res = client.Post(url.path, headers, body.dump(), "application/json");
        if (!res) {
            last_error = "connection failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status < 200 || res->status >= 300) {
            last_error = "HTTP " + std::to_string(res->status) + ": " + res->body;
            continue;
        }
        try {
            return nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::parse_error& e) {
            last_error = std::string("malformed JSON response: ") + e.what();
        }
    }
    throw TransportError("request to " + cfg.endpoint + " failed after " +
                         std::to_string(cfg.max_attempts) + " attempts; last error: " + last_error);
}

} // namespace

struct HttpEmbeddingProvider::Impl {
    std::counting_semaphore<> in_flight;
    explicit Impl(std::size_t slots) : in_flight(static_cast<std::ptrdiff_t>(slots)) {}
};

HttpEmbeddingProvider::HttpEmbeddingProvider(HttpProviderConfig config)
    : config_(std::move(config)),
      impl_(std::make_unique<Impl>(std::max<std::size_t>(1, config_.max_in_flight))) {}

HttpEmbeddingProvider::~HttpEmbeddingProvider() = default;

std::string HttpEmbeddingProvider::id() const {
    return "http:" + config_.endpoint;
}

std::vector<EmbeddingVector> HttpEmbeddingProvider::embed_batch(
    const std::vector<std::string>& texts) {
    if (texts.empty()) return {};
    const std::size_t chunk = std::max<std::size_t>(1, config_.batch_size);
    const std::size_t n_chunks = (texts.size() + chunk - 1) / chunk;

    std::vector<EmbeddingVector> out(texts.size());
    auto fetch_chunk = [&](std::size_t ci) {
        impl_->in_flight.acquire();
        struct Release {
            std::counting_semaphore<>& s;
            ~Release() { s.release(); }
        } release{impl_->in_flight};

        const std::size_t begin = ci * chunk;
        const std::size_t end = std::min(texts.size(), begin + chunk);
        nlohmann::json input = nlohmann::json::array();
        for (std::size_t i = begin; i < end; ++i) input.push_back(texts[i]);
        const auto response =
            post_json(config_, {{"model", config_.model}, {"input", std::move(input)}});
        if (!response.contains("data") || !response.at("data").is_array() ||
            response.at("data").size() != end - begin) {
            throw TransportError("embedding response shape mismatch from " + config_.endpoint);
        }
        for (std::size_t i = begin; i < end; ++i) {
            out[i].values =
                response.at("data").at(i - begin).at("embedding").get<std::vector<float>>();
        }
    };

    // Sliding window of at most max_in_flight concurrent chunk fetches.
    std::deque<std::future<void>> window;
    std::exception_ptr first_error;
    for (std::size_t ci = 0; ci < n_chunks; ++ci) {
        if (window.size() >= std::max<std::size_t>(1, config_.max_in_flight)) {
            try {
                window.front().get();
            } catch (...) {
                if (!first_error) first_error = std::current_exception();
            }
            window.pop_front();
        }
        if (first_error) break;
        window.push_back(std::async(std::launch::async, fetch_chunk, ci));
    }
    for (auto& f : window) {
        try {
            f.get();
        } catch (...) {
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

struct HttpLlmClient::Impl {
    std::counting_semaphore<> in_flight;
    explicit Impl(std::size_t slots) : in_flight(static_cast<std::ptrdiff_t>(slots)) {}
};

HttpLlmClient::HttpLlmClient(HttpProviderConfig config, PayloadStyle style, int max_tokens,
                             std::optional<std::filesystem::path> cache_dir)
    : config_(std::move(config)),
      style_(style),
      max_tokens_(max_tokens),
      impl_(std::make_unique<Impl>(std::max<std::size_t>(1, config_.max_in_flight))) {
    if (cache_dir) cache_.emplace(*cache_dir);
}

HttpLlmClient::~HttpLlmClient() = default;

std::string HttpLlmClient::complete(const LlmCall& call) {
    const std::string key = completion_cache_key(config_.model, call.prompt, call.temperature);
    if (cache_) {
        if (auto hit = cache_->get(key)) {
            return hit->at("response").get<std::string>();
        }
    }

    impl_->in_flight.acquire();
    struct Release {
        std::counting_semaphore<>& s;
        ~Release() { s.release(); }
    } release{impl_->in_flight};

    nlohmann::json body;
    if (style_ == PayloadStyle::completion) {
        body = {{"model", config_.model},
                {"prompt", call.prompt},
                {"temperature", call.temperature},
                {"max_tokens", max_tokens_}};
    } else {
        body = {{"model", config_.model},
                {"messages", nlohmann::json::array({{{"role", "user"}, {"content", call.prompt}}})},
                {"temperature", call.temperature},
                {"max_tokens", max_tokens_}};
    }
    const auto response = post_json(config_, body);
    std::string text;
    try {
        const auto& choice = response.at("choices").at(0);
        text = style_ == PayloadStyle::completion
                   ? choice.at("text").get<std::string>()
                   : choice.at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw TransportError("completion response shape mismatch from " + config_.endpoint + ": " +
                             e.what());
    }
    if (cache_) {
        cache_->put_if_absent(key, {{"response", text}});
        if (auto stored = cache_->get(key)) {
            return stored->at("response").get<std::string>(); // first writer wins
        }
    }
    return text;
}

} // namespace slink
