#include "slink/config.hpp"

#include "slink/errors.hpp"
#include "slink/util.hpp"

#include <utility>

namespace slink {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    if (p.empty()) return {};
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

HttpProviderConfig http_config_from(const EmbeddingConfig& e) {
    HttpProviderConfig h;
    h.endpoint = e.endpoint;
    h.model = e.model;
    h.auth_env = e.auth_env;
    h.auth_header = e.auth_header;
    h.auth_scheme = e.auth_scheme;
    h.max_in_flight = e.max_in_flight;
    h.batch_size = e.batch_size;
    return h;
}

HttpProviderConfig http_config_from(const LlmConfig& l) {
    HttpProviderConfig h;
    h.endpoint = l.endpoint;
    h.model = l.model;
    h.auth_env = l.auth_env;
    h.auth_header = l.auth_header;
    h.auth_scheme = l.auth_scheme;
    h.max_in_flight = l.max_in_flight;
    return h;
}

} // namespace

RunConfig load_config(const std::filesystem::path& path) {
    const auto doc = read_json_file(path);
    const auto base = std::filesystem::absolute(path).parent_path();
    RunConfig c;

    if (doc.contains("catalog")) {
        const auto& cat = doc.at("catalog");
        c.catalog_path = resolve(base, cat.value("path", std::string{}));
        c.prefix_db = cat.value("prefix_db", c.prefix_db);
        c.append_descriptions = cat.value("append_descriptions", c.append_descriptions);
    }
    if (doc.contains("embedding")) {
        const auto& e = doc.at("embedding");
        c.embedding.kind = e.value("kind", c.embedding.kind);
        c.embedding.dim = e.value("dim", c.embedding.dim);
        c.embedding.endpoint = e.value("endpoint", c.embedding.endpoint);
        c.embedding.model = e.value("model", c.embedding.model);
        c.embedding.auth_env = e.value("auth_env", c.embedding.auth_env);
        c.embedding.auth_header = e.value("auth_header", c.embedding.auth_header);
        c.embedding.auth_scheme = e.value("auth_scheme", c.embedding.auth_scheme);
        c.embedding.max_in_flight = e.value("max_in_flight", c.embedding.max_in_flight);
        c.embedding.batch_size = e.value("batch_size", c.embedding.batch_size);
    }
    if (doc.contains("llm")) {
        const auto& l = doc.at("llm");
        c.llm.kind = l.value("kind", c.llm.kind);
        c.llm.fixture_dir = l.contains("fixture_dir")
                                ? resolve(base, l.at("fixture_dir").get<std::string>()).string()
                                : c.llm.fixture_dir;
        c.llm.endpoint = l.value("endpoint", c.llm.endpoint);
        c.llm.model = l.value("model", c.llm.model);
        c.llm.auth_env = l.value("auth_env", c.llm.auth_env);
        c.llm.auth_header = l.value("auth_header", c.llm.auth_header);
        c.llm.auth_scheme = l.value("auth_scheme", c.llm.auth_scheme);
        c.llm.payload_style = l.value("payload_style", c.llm.payload_style);
        c.llm.max_tokens = l.value("max_tokens", c.llm.max_tokens);
        c.llm.max_in_flight = l.value("max_in_flight", c.llm.max_in_flight);
    }
    if (doc.contains("retrieval")) {
        const auto& r = doc.at("retrieval");
        c.retrieval.n_cand = r.value("n_cand", c.retrieval.n_cand);
        c.retrieval.budget = r.value("budget", c.retrieval.budget);
        c.retrieval.clubsuit = r.value("clubsuit", c.retrieval.clubsuit);
        c.retrieval.contextual = r.value("contextual", c.retrieval.contextual);
        c.retrieval.entropy = r.value("entropy", c.retrieval.entropy);
        c.retrieval.coverage = r.value("coverage", c.retrieval.coverage);
        c.retrieval.edges = r.value("edges", c.retrieval.edges);
        c.resolve_per_budget = r.value("resolve_per_budget", c.resolve_per_budget);
    }
    if (doc.contains("graph")) {
        const auto& g = doc.at("graph");
        c.same_table_weight = g.value("same_table_weight", c.same_table_weight);
        c.fk_weight = g.value("fk_weight", c.fk_weight);
    }
    if (doc.contains("cache_dir")) {
        c.cache_dir = resolve(base, doc.at("cache_dir").get<std::string>());
    }
    if (doc.contains("index_dir")) {
        c.index_dir = resolve(base, doc.at("index_dir").get<std::string>());
    }
    if (doc.contains("prompt_template")) {
        c.prompt_template_path = resolve(base, doc.at("prompt_template").get<std::string>());
    }
    if (doc.contains("shots") && !doc.at("shots").is_null()) {
        c.shots = doc.at("shots").get<std::size_t>();
    }
    if (doc.contains("temperature") && !doc.at("temperature").is_null()) {
        c.temperature = doc.at("temperature").get<double>();
    }
    return c;
}

namespace {

// Content digest so that equal config digests really do mean equal inputs.
std::string file_digest(const std::filesystem::path& path) {
    if (path.empty() || !std::filesystem::exists(path)) return "";
    return sha256_hex(read_file(path));
}

} // namespace

nlohmann::json config_manifest(const RunConfig& c) {
    nlohmann::json shots;
    if (c.shots) shots = *c.shots;
    nlohmann::json temperature;
    if (c.temperature) temperature = *c.temperature;
    return {
        {"catalog",
         {{"path", c.catalog_path.filename().string()},
          {"sha256", file_digest(c.catalog_path)},
          {"prefix_db", c.prefix_db},
          {"append_descriptions", c.append_descriptions}}},
        {"embedding",
         {{"kind", c.embedding.kind},
          {"dim", c.embedding.dim},
          {"endpoint", c.embedding.endpoint},
          {"model", c.embedding.model},
          {"auth_env", c.embedding.auth_env},
          {"max_in_flight", c.embedding.max_in_flight},
          {"batch_size", c.embedding.batch_size}}},
        {"llm",
         {{"kind", c.llm.kind},
          {"fixture_dir", std::filesystem::path(c.llm.fixture_dir).filename().string()},
          {"endpoint", c.llm.endpoint},
          {"model", c.llm.model},
          {"auth_env", c.llm.auth_env},
          {"payload_style", c.llm.payload_style},
          {"max_tokens", c.llm.max_tokens},
          {"max_in_flight", c.llm.max_in_flight}}},
        {"retrieval",
         {{"n_cand", c.retrieval.n_cand},
          {"budget", c.retrieval.budget},
          {"clubsuit", c.retrieval.clubsuit},
          {"contextual", c.retrieval.contextual},
          {"entropy", c.retrieval.entropy},
          {"coverage", c.retrieval.coverage},
          {"edges", c.retrieval.edges},
          {"resolve_per_budget", c.resolve_per_budget}}},
        {"graph", {{"same_table_weight", c.same_table_weight}, {"fk_weight", c.fk_weight}}},
        {"prompt_template",
         {{"path", c.prompt_template_path.filename().string()},
          {"sha256", file_digest(c.prompt_template_path)}}},
        {"shots", shots},
        {"temperature", temperature},
    };
}

std::string config_digest(const RunConfig& config) {
    return sha256_hex(config_manifest(config).dump());
}

Runtime make_runtime(RunConfig config, bool need_llm, bool load_index) {
    Runtime rt;
    rt.config = std::move(config);
    rt.digest = config_digest(rt.config);

    if (rt.config.catalog_path.empty()) {
        throw ArgumentError("config: catalog.path is required");
    }
    rt.catalog = load_catalog(rt.config.catalog_path);
    rt.documents = explode(rt.catalog,
                           {rt.config.prefix_db, rt.config.append_descriptions});
    rt.graph = build_graph(rt.catalog, rt.config.same_table_weight, rt.config.fk_weight);

    std::shared_ptr<EmbeddingProvider> inner;
    if (rt.config.embedding.kind == "hash") {
        inner = std::make_shared<HashEmbedder>(rt.config.embedding.dim);
    } else if (rt.config.embedding.kind == "http") {
        if (rt.config.embedding.endpoint.empty()) {
            throw ArgumentError("config: embedding.endpoint is required for kind 'http'");
        }
        inner = std::make_shared<HttpEmbeddingProvider>(http_config_from(rt.config.embedding));
    } else {
        throw ArgumentError("config: unknown embedding kind '" + rt.config.embedding.kind + "'");
    }
    rt.embedder =
        std::make_shared<CachedEmbedder>(std::move(inner), rt.config.cache_dir / "embeddings");

    if (need_llm) {
        if (rt.config.llm.kind == "fixture") {
            if (rt.config.llm.fixture_dir.empty()) {
                throw ArgumentError("config: llm.fixture_dir is required for kind 'fixture'");
            }
            rt.llm = std::make_unique<FixtureLlmClient>(rt.config.llm.fixture_dir);
        } else if (rt.config.llm.kind == "http") {
            if (rt.config.llm.endpoint.empty()) {
                throw ArgumentError("config: llm.endpoint is required for kind 'http'");
            }
            const auto style = rt.config.llm.payload_style == "chat"
                                   ? HttpLlmClient::PayloadStyle::chat
                                   : HttpLlmClient::PayloadStyle::completion;
            rt.llm = std::make_unique<HttpLlmClient>(http_config_from(rt.config.llm), style,
                                                     rt.config.llm.max_tokens,
                                                     rt.config.cache_dir / "completions");
        } else {
            throw ArgumentError("config: unknown llm kind '" + rt.config.llm.kind + "'");
        }
        if (rt.config.prompt_template_path.empty()) {
            throw ArgumentError("config: prompt_template is required for retrieval");
        }
        rt.prompt_template = load_prompt_template(rt.config.prompt_template_path, rt.config.shots);
        if (rt.config.temperature) rt.prompt_template.temperature = *rt.config.temperature;
    }

    if (load_index) {
        auto [index, manifest] = VectorIndex::load(rt.config.resolved_index_dir());
        const IndexManifest expected = expected_manifest(rt);
        if (manifest.doc_ids_sha256 != expected.doc_ids_sha256 ||
            (!manifest.display_sha256.empty() &&
             manifest.display_sha256 != expected.display_sha256) ||
            manifest.provider != expected.provider || manifest.model != expected.model ||
            manifest.count != rt.documents.size()) {
            throw ValidationError(
                "stored index does not match the current catalog/provider; rerun `slink index`");
        }
        rt.index = std::move(index);
    }
    return rt;
}

IndexManifest expected_manifest(const Runtime& rt) {
    std::string ids;
    std::string displays;
    for (std::size_t i = 0; i < rt.documents.size(); ++i) {
        if (i > 0) {
            ids.push_back('\n');
            displays.push_back('\n');
        }
        ids += rt.documents[i].qualified_name;
        displays += rt.documents[i].display_text;
    }
    IndexManifest m;
    m.count = rt.documents.size();
    m.provider = rt.embedder->id();
    m.model = rt.embedder->model();
    m.doc_ids_sha256 = sha256_hex(ids);
    m.display_sha256 = sha256_hex(displays);
    return m;
}

std::size_t build_index(Runtime& rt) {
    std::vector<std::string> texts;
    texts.reserve(rt.documents.size());
    for (const SchemaDocument& doc : rt.documents) texts.push_back(doc.display_text);

    std::vector<EmbeddingVector> rows;
    try {
        rows = rt.embedder->embed_batch(texts);
    } catch (const Error& e) {
        const auto* cached = dynamic_cast<const CachedEmbedder*>(rt.embedder.get());
        const std::size_t done = cached ? cached->count_cached(texts) : 0;
        throw TransportError(std::string(e.what()) + " (" + std::to_string(done) + "/" +
                             std::to_string(texts.size()) +
                             " rows already cached; rerun to resume)");
    }
    rt.index = VectorIndex::build(std::move(rows));

    IndexManifest manifest = expected_manifest(rt);
    manifest.dim = rt.index.dim();
    rt.index.save(rt.config.resolved_index_dir(), manifest);
    return rt.index.size();
}

} // namespace slink
