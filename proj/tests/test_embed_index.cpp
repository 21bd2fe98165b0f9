#include "slink/cache.hpp"
#include "slink/embedding.hpp"
#include "slink/errors.hpp"
#include "slink/index.hpp"
#include "slink/util.hpp"

#include "support/test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace slink;

namespace {

// Exhaustive-scan oracle, written independently of VectorIndex::knn.
std::vector<Neighbor> knn_oracle(const std::vector<EmbeddingVector>& rows,
                                 const EmbeddingVector& query, std::size_t k) {
    std::vector<Neighbor> scored;
    const double qn = query.norm();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < query.dim(); ++j) {
            dot += static_cast<double>(query.values[j]) * static_cast<double>(rows[i].values[j]);
        }
        scored.push_back({static_cast<int>(i), dot / (qn * rows[i].norm())});
    }
    std::stable_sort(scored.begin(), scored.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.cosine != b.cosine) return a.cosine > b.cosine;
        return a.doc_id < b.doc_id;
    });
    scored.resize(std::min(k, scored.size()));
    return scored;
}

std::vector<EmbeddingVector> random_rows(std::size_t n, std::size_t dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<float> dist(0.0f, 1.0f);
    std::vector<EmbeddingVector> rows(n);
    for (auto& r : rows) {
        r.values.resize(dim);
        for (auto& v : r.values) v = dist(rng);
    }
    return rows;
}

} // namespace

TEST_CASE("hash embedder is deterministic and unit-norm") {
    HashEmbedder embedder(256);
    const EmbeddingVector a1 = embed_text(embedder, "a");
    const EmbeddingVector a2 = embed_text(embedder, "a");
    CHECK(a1 == a2);
    CHECK(a1.dim() == 256);
    CHECK(a1.norm() == doctest::Approx(1.0).epsilon(1e-9));

    HashEmbedder fresh(256);
    CHECK(embed_text(fresh, "a") == a1);
}

TEST_CASE("hash embedder separates unrelated texts") {
    HashEmbedder embedder(256);
    const auto a = embed_text(embedder, "station latitude");
    const auto b = embed_text(embedder, "instructor salary");
    CHECK_FALSE(a == b);
}

TEST_CASE("hash embedder handles texts with no alphanumeric tokens") {
    HashEmbedder embedder(64);
    const auto v = embed_text(embedder, "?!");
    CHECK(v.norm() == doctest::Approx(1.0));
}

TEST_CASE("embed_text rejects empty input") {
    HashEmbedder embedder(64);
    CHECK_THROWS_AS(embed_text(embedder, ""), ArgumentError);
    CHECK_THROWS_AS(embed_text(embedder, "   "), ArgumentError);
}

TEST_CASE("embed_probe: contextual off equals plain probe embedding") {
    HashEmbedder embedder(128);
    const auto plain = embed_text(embedder, "Club.Name");
    CHECK(embed_probe(embedder, "count members", "Club.Name", false) == plain);
}

TEST_CASE("embed_probe: empty question degenerates to the probe alone") {
    HashEmbedder embedder(128);
    const auto plain = embed_text(embedder, "Club.Name");
    CHECK(embed_probe(embedder, "", "Club.Name", true) == plain);
    CHECK(embed_probe(embedder, "   ", "Club.Name", true) == plain);
}

TEST_CASE("embed_probe: contextual on and off differ for a real question") {
    HashEmbedder embedder(128);
    const auto on = embed_probe(embedder, "count members", "Club.Name", true);
    const auto off = embed_probe(embedder, "count members", "Club.Name", false);
    CHECK_FALSE(on == off);
}

TEST_CASE("embedding cache returns bit-identical vectors and stops provider calls") {
    testing::TempDir tmp("embcache");

    struct CountingEmbedder : EmbeddingProvider {
        HashEmbedder inner{64};
        int calls = 0;
        std::string id() const override { return "counting"; }
        std::string model() const override { return "m1"; }
        std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) override {
            calls += static_cast<int>(texts.size());
            return inner.embed_batch(texts);
        }
    };
    auto counting = std::make_shared<CountingEmbedder>();
    CachedEmbedder cached(counting, tmp.path());

    const auto v1 = embed_text(cached, "alpha beta");
    CHECK(counting->calls == 1);
    const auto v2 = embed_text(cached, "alpha beta");
    CHECK(counting->calls == 1); // cache hit
    CHECK(v1 == v2);

    // a second cache instance reads the same stored bytes
    CachedEmbedder cached2(counting, tmp.path());
    CHECK(embed_text(cached2, "alpha beta") == v1);
    CHECK(counting->calls == 1);
}

TEST_CASE("index build rejects zero vectors and dimension mismatches") {
    EmbeddingVector zero;
    zero.values.assign(8, 0.0f);
    EmbeddingVector ok;
    ok.values.assign(8, 0.5f);
    CHECK_THROWS_AS(VectorIndex::build({ok, zero}), ValidationError);

    EmbeddingVector small;
    small.values.assign(4, 0.5f);
    CHECK_THROWS_AS(VectorIndex::build({ok, small}), ValidationError);
}

TEST_CASE("knn: query equal to a row ranks that row first with cosine 1") {
    auto rows = random_rows(12, 16, 7);
    EmbeddingVector query = rows[7];
    const auto index = VectorIndex::build(rows);
    const auto result = index.knn(query, 3);
    REQUIRE(result.size() == 3);
    CHECK(result[0].doc_id == 7);
    CHECK(result[0].cosine == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("knn: query orthogonal to all rows gives zero cosines") {
    std::vector<EmbeddingVector> rows(3);
    for (std::size_t i = 0; i < 3; ++i) {
        rows[i].values.assign(4, 0.0f);
        rows[i].values[i] = 1.0f; // e1, e2, e3
    }
    EmbeddingVector query;
    query.values.assign(4, 0.0f);
    query.values[3] = 1.0f; // e4
    const auto result = VectorIndex::build(rows).knn(query, 3);
    for (const auto& n : result) CHECK(n.cosine == doctest::Approx(0.0));
}

TEST_CASE("knn matches the exhaustive-scan oracle exactly") {
    const auto rows = random_rows(10, 8, 42);
    const auto index = VectorIndex::build(rows);
    std::mt19937 rng(1);
    std::normal_distribution<float> dist(0.0f, 1.0f);
    for (int trial = 0; trial < 20; ++trial) {
        EmbeddingVector q;
        q.values.resize(8);
        for (auto& v : q.values) v = dist(rng);
        const auto expected = knn_oracle(rows, q, 3);
        const auto actual = index.knn(q, 3);
        REQUIRE(actual.size() == expected.size());
        for (std::size_t i = 0; i < actual.size(); ++i) {
            CHECK(actual[i].doc_id == expected[i].doc_id);
            CHECK(actual[i].cosine == doctest::Approx(expected[i].cosine).epsilon(1e-12));
        }
    }
}

TEST_CASE("knn ties break by ascending doc_id") {
    // identical rows -> all cosines equal
    std::vector<EmbeddingVector> rows(4);
    for (auto& r : rows) r.values = {1.0f, 2.0f};
    const auto index = VectorIndex::build(rows);
    EmbeddingVector q;
    q.values = {1.0f, 2.0f};
    const auto result = index.knn(q, 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(result[i].doc_id == static_cast<int>(i));
}

TEST_CASE("knn with k = N returns a permutation of all doc ids") {
    const auto rows = random_rows(9, 6, 5);
    const auto index = VectorIndex::build(rows);
    EmbeddingVector q = rows[0];
    auto result = index.knn(q, 9);
    std::vector<int> ids;
    for (const auto& n : result) ids.push_back(n.doc_id);
    std::sort(ids.begin(), ids.end());
    for (int i = 0; i < 9; ++i) CHECK(ids[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("knn on an empty index returns an empty list") {
    VectorIndex index;
    EmbeddingVector q;
    q.values = {1.0f};
    CHECK(index.knn(q, 5).empty());
}

TEST_CASE("cosine self and negation identities hold for stored rows") {
    const auto rows = random_rows(6, 10, 11);
    const auto index = VectorIndex::build(rows);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(index.cosine(rows[i], i) == doctest::Approx(1.0).epsilon(1e-12));
        EmbeddingVector neg = rows[i];
        for (auto& v : neg.values) v = -v;
        CHECK(index.cosine(neg, i) == doctest::Approx(-1.0).epsilon(1e-12));
        for (std::size_t j = 0; j < rows.size(); ++j) {
            CHECK(std::abs(index.cosine(rows[i], j)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("index save/load round-trips bit-identically") {
    testing::TempDir tmp("index");
    const auto rows = random_rows(5, 12, 3);
    const auto index = VectorIndex::build(rows);
    IndexManifest manifest;
    manifest.dim = index.dim();
    manifest.count = index.size();
    manifest.provider = "hash";
    manifest.model = "hash-12";
    manifest.doc_ids_sha256 = sha256_hex("ids");
    manifest.display_sha256 = sha256_hex("displays");
    index.save(tmp.path(), manifest);

    const auto [loaded, loaded_manifest] = VectorIndex::load(tmp.path());
    CHECK(loaded_manifest.provider == "hash");
    CHECK(loaded_manifest.doc_ids_sha256 == manifest.doc_ids_sha256);
    REQUIRE(loaded.size() == index.size());
    REQUIRE(loaded.dim() == index.dim());
    for (std::size_t i = 0; i < index.size(); ++i) {
        const auto a = index.row(i);
        const auto b = loaded.row(i);
        for (std::size_t j = 0; j < index.dim(); ++j) CHECK(a[j] == b[j]);
    }
}

TEST_CASE("index load detects a truncated vector file") {
    testing::TempDir tmp("index");
    const auto index = VectorIndex::build(random_rows(4, 8, 9));
    IndexManifest manifest;
    manifest.dim = 8;
    manifest.count = 4;
    index.save(tmp.path(), manifest);
    // truncate
    const std::string raw = read_file(tmp.path() / "vectors.f32");
    write_file_atomic(tmp.path() / "vectors.f32", raw.substr(0, raw.size() - 4));
    CHECK_THROWS_AS(VectorIndex::load(tmp.path()), ValidationError);
}
