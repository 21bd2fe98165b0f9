#pragma once

#include "slink/bench.hpp"
#include "slink/cache.hpp"
#include "slink/documents.hpp"
#include "slink/graph.hpp"
#include "slink/http_provider.hpp"
#include "slink/index.hpp"
#include "slink/llm.hpp"
#include "slink/pipeline.hpp"
#include "slink/prompt.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

namespace slink {

struct EmbeddingConfig {
    std::string kind = "hash"; // "hash" | "http"
    std::size_t dim = 256;     // hash embedder width
    std::string endpoint;
    std::string model;
    std::string auth_env;
    std::string auth_header = "Authorization";
    std::string auth_scheme = "Bearer";
    std::size_t max_in_flight = 8;
    std::size_t batch_size = 64;
};

struct LlmConfig {
    std::string kind = "http"; // "http" | "fixture"
    std::string fixture_dir;   // replay directory for kind == "fixture"
    std::string endpoint;
    std::string model;
    std::string auth_env;
    std::string auth_header = "Authorization";
    std::string auth_scheme = "Bearer";
    std::string payload_style = "completion"; // "completion" | "chat"
    int max_tokens = 256;
    std::size_t max_in_flight = 8;
};

struct RunConfig {
    std::filesystem::path catalog_path;
    bool prefix_db = true;
    bool append_descriptions = true;

    EmbeddingConfig embedding;
    LlmConfig llm;

    RetrievalOptions retrieval;
    bool resolve_per_budget = false;

    double same_table_weight = 0.01;
    double fk_weight = 0.01;

    std::filesystem::path cache_dir = ".slink-cache";
    std::filesystem::path index_dir; // defaults to cache_dir / "index"
    std::filesystem::path prompt_template_path;
    std::optional<std::size_t> shots;         // cap the few-shot count
    std::optional<double> temperature;        // overrides the template value

    std::filesystem::path resolved_index_dir() const {
        return index_dir.empty() ? cache_dir / "index" : index_dir;
    }
};

/// Parses a config file. Relative paths inside the file are resolved against
/// the file's directory.
RunConfig load_config(const std::filesystem::path& path);

/// Fully materialized config (every default filled in), used for digests and
/// run manifests. Paths appear as written, not resolved.
nlohmann::json config_manifest(const RunConfig& config);
std::string config_digest(const RunConfig& config);

/// Everything a run needs, assembled from a config.
struct Runtime {
    RunConfig config;
    SchemaCatalog catalog;
    std::vector<SchemaDocument> documents;
    SchemaGraph graph;
    std::shared_ptr<EmbeddingProvider> embedder; // cache-wrapped
    std::unique_ptr<LlmClient> llm;              // null when not configured
    PromptTemplate prompt_template;
    VectorIndex index;
    std::string digest;
};

/// Builds providers + catalog + graph. Set `need_llm` when the hallucination
/// stage will run, and `load_index` to read the vector store from disk
/// (verifying it matches the exploded catalog).
Runtime make_runtime(RunConfig config, bool need_llm, bool load_index);

/// Embeds all documents (cache-aware) and writes the vector store.
/// Returns the number of rows written.
std::size_t build_index(Runtime& runtime);

/// Expected manifest values for the current catalog + provider.
IndexManifest expected_manifest(const Runtime& runtime);

} // namespace slink
