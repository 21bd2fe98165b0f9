#include "slink/embedding.hpp"

#include "slink/errors.hpp"
#include "slink/util.hpp"

#include <cmath>

namespace slink {

double EmbeddingVector::norm() const {
    double acc = 0.0;
    for (float v : values) acc += static_cast<double>(v) * static_cast<double>(v);
    return std::sqrt(acc);
}

EmbeddingVector embed_text(EmbeddingProvider& provider, const std::string& text) {
    if (trim_ws(text).empty()) {
        throw ArgumentError("embed_text: text must be non-empty");
    }
    auto batch = provider.embed_batch({text});
    if (batch.size() != 1) {
        throw TransportError("embedding provider returned " + std::to_string(batch.size()) +
                             " vectors for 1 input");
    }
    if (batch[0].norm() == 0.0) {
        throw ValidationError("embedding provider returned a zero vector for text: " + text);
    }
    return std::move(batch[0]);
}

std::string probe_input_text(const std::string& question, const std::string& probe,
                             bool contextual) {
    if (!contextual) return probe;
    const std::string q = collapse_ws(question);
    if (q.empty()) return probe;
    return q + " " + probe;
}

EmbeddingVector embed_probe(EmbeddingProvider& provider, const std::string& question,
                            const std::string& probe, bool contextual) {
    if (trim_ws(probe).empty()) {
        throw ArgumentError("embed_probe: probe must be non-empty");
    }
    return embed_text(provider, probe_input_text(question, probe, contextual));
}

HashEmbedder::HashEmbedder(std::size_t dim) : dim_(dim), model_("hash-" + std::to_string(dim)) {
    if (dim == 0) throw ArgumentError("HashEmbedder: dim must be positive");
}

EmbeddingVector HashEmbedder::embed_one(const std::string& text) const {
    std::vector<double> acc(dim_, 0.0);
    const auto tokens = tokenize(text);
    for (const std::string& token : tokens) {
        const std::uint64_t h = fnv1a64(token);
        const std::size_t bucket = static_cast<std::size_t>(h % dim_);
        acc[bucket] += (h >> 63) ? -1.0 : 1.0;
    }
    double sq = 0.0;
    for (double v : acc) sq += v * v;
    if (sq == 0.0) {
        // no tokens, or exact sign cancellation
        acc.assign(dim_, 0.0);
        acc[static_cast<std::size_t>(fnv1a64(text) % dim_)] = 1.0;
        sq = 1.0;
    }
    const double inv = 1.0 / std::sqrt(sq);
    EmbeddingVector out;
    out.values.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        out.values[i] = static_cast<float>(acc[i] * inv);
    }
    return out;
}

std::vector<EmbeddingVector> HashEmbedder::embed_batch(const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(embed_one(t));
    return out;
}

} // namespace slink
