#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace slink {

struct EmbeddingVector {
    std::vector<float> values;

    std::size_t dim() const { return values.size(); }
    double norm() const;

    friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;

    /// Stable provider identifier, part of every cache key.
    virtual std::string id() const = 0;
    virtual std::string model() const = 0;

    /// Embeds a batch of texts, one vector per input, order preserved.
    virtual std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) = 0;
};

/// Embeds a single non-empty text. Rejects empty input and zero vectors.
EmbeddingVector embed_text(EmbeddingProvider& provider, const std::string& text);

/// Probe embedding: with `contextual` set the probe is embedded in the
/// context of the question (the concatenation "question probe"); otherwise
/// the probe is embedded alone.
EmbeddingVector embed_probe(EmbeddingProvider& provider, const std::string& question,
                            const std::string& probe, bool contextual);

/// The exact text a probe embedding request sends to the provider.
std::string probe_input_text(const std::string& question, const std::string& probe, bool contextual);

/// Offline deterministic embedder: tokens hashed into `dim` signed buckets,
/// summed, L2-normalized. Texts with no alphanumeric tokens fall back to a
/// single bucket keyed by the raw bytes, so the result never has zero norm.
class HashEmbedder : public EmbeddingProvider {
public:
    explicit HashEmbedder(std::size_t dim = 256);

    std::string id() const override { return "hash"; }
    std::string model() const override { return model_; }
    std::size_t dim() const { return dim_; }

    std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) override;
    EmbeddingVector embed_one(const std::string& text) const;

private:
    std::size_t dim_;
    std::string model_;
};

} // namespace slink
