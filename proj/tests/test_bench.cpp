#include "slink/bench.hpp"
#include "slink/errors.hpp"
#include "slink/union_builder.hpp"
#include "slink/util.hpp"

#include "support/test_helpers.hpp"

#include <doctest.h>

#include <map>

using namespace slink;
using nlohmann::json;

namespace {

SchemaCatalog toy_catalog() {
    return catalog_from_json(json::parse(R"({
        "databases": [
            {"name": "db1", "tables": [
                {"name": "t1", "columns": [{"name": "a"}, {"name": "b"}]},
                {"name": "t2", "columns": [{"name": "c"}]}
            ]},
            {"name": "db2", "tables": [
                {"name": "t3", "columns": [{"name": "d"}, {"name": "e"}]}
            ]}
        ]})"));
}

PipelineResult fixed_result(const std::vector<int>& docs) {
    PipelineResult r;
    r.selection.selected = docs;
    return r;
}

} // namespace

TEST_CASE("column recall counts gold hits within the budget") {
    const std::vector<std::string> gold = {"db.t.a", "db.t.b"};
    CHECK(recall_at(gold, {"db.t.a", "db.t.c"}, 2, GoldMode::columns) == doctest::Approx(0.5));
    CHECK(recall_at(gold, {"db.t.a", "db.t.b", "db.t.c"}, 3, GoldMode::columns) ==
          doctest::Approx(1.0));
    // budget cuts the list before matching
    CHECK(recall_at(gold, {"db.t.c", "db.t.a", "db.t.b"}, 1, GoldMode::columns) ==
          doctest::Approx(0.0));
}

TEST_CASE("matching is case-insensitive on qualified names") {
    CHECK(recall_at({"DB.T.A"}, {"db.t.a"}, 1, GoldMode::columns) == doctest::Approx(1.0));
    CHECK(recall_at({"db.T1"}, {"DB.t1.x"}, 1, GoldMode::tables) == doctest::Approx(1.0));
}

TEST_CASE("table mode deduces tables from retrieved columns") {
    // gold tables {T1, T2}; retrieved columns cover T1 and T3 -> recall 0.5
    const std::vector<std::string> gold = {"T1", "T2"};
    const std::vector<std::string> retrieved = {"T1.a", "T1.b", "T3.c"};
    CHECK(recall_at(gold, retrieved, 3, GoldMode::tables) == doctest::Approx(0.5));
}

TEST_CASE("recall is monotone in the budget") {
    const std::vector<std::string> gold = {"t.a", "t.b", "t.c"};
    const std::vector<std::string> retrieved = {"t.x", "t.a", "t.y", "t.b", "t.c"};
    double prev = 0.0;
    for (std::size_t b = 1; b <= retrieved.size(); ++b) {
        const double r = recall_at(gold, retrieved, b, GoldMode::columns);
        CHECK(r >= prev);
        prev = r;
    }
    CHECK(prev == doctest::Approx(1.0));
}

TEST_CASE("empty gold set is an argument error") {
    CHECK_THROWS_AS(recall_at({}, {"t.a"}, 1, GoldMode::columns), ArgumentError);
}

TEST_CASE("load_examples validates gold names and drops star queries") {
    testing::TempDir tmp("bench");
    const auto catalog = toy_catalog();
    const auto docs = explode(catalog);
    const auto path = tmp.path() / "examples.jsonl";

    SUBCASE("valid file with a star exclusion") {
        write_file_atomic(path,
                          R"({"question": "q1", "gold_columns": ["db1.t1.a"]})"
                          "\n"
                          R"({"question": "q2", "gold_columns": ["db1.t1.*"]})"
                          "\n"
                          R"({"question": "q3", "gold_tables": ["db2.t3"], "source_db": "db2"})"
                          "\n");
        const auto examples = load_examples(path, catalog, docs);
        REQUIRE(examples.size() == 2); // the star example is dropped at ingestion
        CHECK(examples[0].mode() == GoldMode::columns);
        CHECK(examples[1].mode() == GoldMode::tables);
        CHECK(examples[1].source_db == "db2");
    }
    SUBCASE("unresolvable gold column") {
        write_file_atomic(path, R"({"question": "q", "gold_columns": ["db1.t1.zzz"]})" "\n");
        CHECK_THROWS_AS(load_examples(path, catalog, docs), ValidationError);
    }
    SUBCASE("exactly one gold mode required") {
        write_file_atomic(path, R"({"question": "q"})" "\n");
        CHECK_THROWS_AS(load_examples(path, catalog, docs), ValidationError);
        write_file_atomic(
            path,
            R"({"question": "q", "gold_columns": ["db1.t1.a"], "gold_tables": ["db1.t1"]})" "\n");
        CHECK_THROWS_AS(load_examples(path, catalog, docs), ValidationError);
    }
}

TEST_CASE("evaluate slices ranking prefixes and averages per budget") {
    const auto catalog = toy_catalog();
    const auto docs = explode(catalog);
    // doc ids: db1.t1.a=0, db1.t1.b=1, db1.t2.c=2, db2.t3.d=3, db2.t3.e=4
    std::vector<BenchmarkExample> examples(3);
    examples[0].question = "q0";
    examples[0].gold_columns = {"db1.t1.a", "db1.t1.b"};
    examples[1].question = "q1";
    examples[1].gold_columns = {"db2.t3.d"};
    examples[2].question = "q2";
    examples[2].gold_columns = {"db1.t2.c", "db2.t3.e"};

    std::map<std::string, std::vector<int>> rankings = {
        {"q0", {0, 2, 1, 3, 4}}, // gold at ranks 1 and 3
        {"q1", {1, 2, 3, 0, 4}}, // gold at rank 3
        {"q2", {2, 4, 0, 1, 3}}, // gold at ranks 1 and 2
    };
    MethodRunner runner = [&](const std::string& q, std::size_t budget) {
        auto r = fixed_result(rankings.at(q));
        r.selection.selected.resize(std::min(budget, r.selection.selected.size()));
        return r;
    };
    EvaluateOptions options;
    options.budgets = {1, 3};
    options.max_in_flight = 1;
    options.config_digest = "test";
    const auto report = evaluate(examples, "stub", runner, catalog, docs, options);

    REQUIRE(report.n_examples == 3);
    CHECK(report.n_excluded == 0);
    // hand-computed: budget 1 -> [0.5, 0, 0.5] avg 1/3; budget 3 -> [1, 1, 1]
    CHECK(report.macro[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(report.macro[1] == doctest::Approx(1.0));
    // averages equal the mean of per-example values
    for (std::size_t b = 0; b < 2; ++b) {
        double mean = 0.0;
        for (const auto& row : report.per_example) mean += row[b];
        mean /= 3.0;
        CHECK(report.macro[b] == doctest::Approx(mean).epsilon(1e-12));
    }
}

TEST_CASE("evaluate records provider failures as exclusions") {
    const auto catalog = toy_catalog();
    const auto docs = explode(catalog);
    std::vector<BenchmarkExample> examples(2);
    examples[0].question = "ok";
    examples[0].gold_columns = {"db1.t1.a"};
    examples[1].question = "boom";
    examples[1].gold_columns = {"db1.t1.b"};

    MethodRunner runner = [&](const std::string& q, std::size_t) -> PipelineResult {
        if (q == "boom") throw TransportError("provider down");
        return fixed_result({0, 1});
    };
    EvaluateOptions options;
    options.budgets = {1};
    options.max_in_flight = 4;
    const auto report = evaluate(examples, "stub", runner, catalog, docs, options);
    CHECK(report.n_examples == 1);
    CHECK(report.n_excluded == 1);
    CHECK(report.macro[0] == doctest::Approx(1.0));
}

TEST_CASE("resolve_per_budget re-runs the solver at every budget") {
    const auto catalog = toy_catalog();
    const auto docs = explode(catalog);
    std::vector<BenchmarkExample> examples(1);
    examples[0].question = "q";
    examples[0].gold_columns = {"db1.t1.a"};

    int calls = 0;
    std::vector<std::size_t> seen_budgets;
    MethodRunner runner = [&](const std::string&, std::size_t budget) {
        ++calls;
        seen_budgets.push_back(budget);
        auto r = fixed_result({0, 1, 2});
        r.selection.selected.resize(std::min(budget, r.selection.selected.size()));
        return r;
    };
    EvaluateOptions options;
    options.budgets = {1, 2, 3};
    options.max_in_flight = 1;

    options.resolve_per_budget = false;
    (void)evaluate(examples, "stub", runner, catalog, docs, options);
    CHECK(calls == 1);
    CHECK(seen_budgets == std::vector<std::size_t>{3}); // one run at max budget

    calls = 0;
    seen_budgets.clear();
    options.resolve_per_budget = true;
    (void)evaluate(examples, "stub", runner, catalog, docs, options);
    CHECK(calls == 3);
    CHECK(seen_budgets == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("full retrieval gives recall one everywhere") {
    const auto catalog = toy_catalog();
    const auto docs = explode(catalog);
    std::vector<BenchmarkExample> examples(1);
    examples[0].question = "q";
    examples[0].gold_columns = {"db1.t1.a", "db2.t3.e"};
    MethodRunner runner = [&](const std::string&, std::size_t) {
        return fixed_result({0, 1, 2, 3, 4});
    };
    EvaluateOptions options;
    options.budgets = {5};
    const auto report = evaluate(examples, "stub", runner, catalog, docs, options);
    CHECK(report.macro[0] == doctest::Approx(1.0));
}

TEST_CASE("reports serialize deterministically") {
    RecallReport r;
    r.method = "crush";
    r.budgets = {3, 5};
    r.macro = {0.5, 0.75};
    r.n_examples = 4;
    r.n_excluded = 1;
    r.config_digest = "abc123";
    const std::string csv = report_csv({r});
    CHECK(csv ==
          "# config_digest=abc123\n"
          "method,budget,recall,n_examples,n_excluded\n"
          "crush,3,0.500000,4,1\n"
          "crush,5,0.750000,4,1\n");
    CHECK(report_csv({r}) == csv);
    const std::string table = report_table({r});
    CHECK(table.find("r @ 3") != std::string::npos);
    CHECK(table.find("crush") != std::string::npos);
}

TEST_CASE("export_subset reconstructs a loadable mini-catalog") {
    testing::TempDir tmp("export");
    const auto catalog = toy_catalog();
    const auto docs = explode(catalog);
    const auto path = tmp.path() / "subset.json";

    SUBCASE("two columns from one table") {
        export_subset("q", {0, 1}, catalog, docs, path);
        const auto [question, mini] = load_subset(path);
        CHECK(question == "q");
        REQUIRE(mini.table_count() == 1);
        CHECK(mini.databases[0].tables[0].name == "db1.t1");
        CHECK(mini.column_count() == 2);
    }
    SUBCASE("columns spanning three tables keep source order") {
        export_subset("q", {4, 0, 2}, catalog, docs, path);
        const auto doc = read_json_file(path);
        REQUIRE(doc.at("tables").size() == 3);
        CHECK(doc.at("tables")[0].at("name") == "db1.t1");
        CHECK(doc.at("tables")[1].at("name") == "db1.t2");
        CHECK(doc.at("tables")[2].at("name") == "db2.t3");
        // round-trip validates
        const auto [question, mini] = load_subset(path);
        CHECK(mini.column_count() == 3);
    }
}

TEST_CASE("build_union merges databases and counts add up") {
    SchemaCatalog a = catalog_from_json(json::parse(
        R"({"databases": [{"name": "x", "tables": [{"name": "t", "columns": [{"name": "c"}]}]}]})"));
    SchemaCatalog b = catalog_from_json(json::parse(
        R"({"databases": [{"name": "y", "tables": [{"name": "t", "columns": [{"name": "c"}, {"name": "d"}]}]}]})"));

    const SchemaCatalog merged = build_union({a, b});
    CHECK(merged.databases.size() == 2);
    CHECK(merged.column_count() == 3);
    // union convention: exploding with prefix_db yields db-prefixed texts
    const auto docs = explode(merged, {.prefix_db = true});
    CHECK(docs[0].display_text == "x.t.c");
    CHECK(docs[2].display_text == "y.t.d");

    CHECK_THROWS_AS(build_union({a, a}), ValidationError);
}

TEST_CASE("singleton union is the identity on content") {
    SchemaCatalog a = toy_catalog();
    const SchemaCatalog merged = build_union({a});
    CHECK(catalog_to_json(merged) == catalog_to_json(a));
}

TEST_CASE("spider tables converter builds a validated catalog") {
    const json tables = json::parse(R"([
        {
            "db_id": "network_1",
            "table_names_original": ["friend", "student"],
            "column_names_original": [
                [-1, "*"],
                [0, "student_id"], [0, "friend_id"],
                [1, "id"], [1, "name"]
            ],
            "primary_keys": [3],
            "foreign_keys": [[1, 3]]
        },
        {
            "db_id": "college",
            "table_names_original": ["course"],
            "column_names_original": [[-1, "*"], [0, "code"]],
            "primary_keys": [[1]],
            "foreign_keys": []
        }
    ])");
    const SchemaCatalog catalog = catalog_from_spider_tables(tables);
    CHECK(catalog.databases.size() == 2);
    CHECK(catalog.table_count() == 3);
    CHECK(catalog.column_count() == 5); // "*" rows dropped
    const Table* friend_table = catalog.databases[0].find_table("friend");
    REQUIRE(friend_table != nullptr);
    REQUIRE(friend_table->foreign_keys.size() == 1);
    CHECK(friend_table->foreign_keys[0].ref_table == "student");
    CHECK(friend_table->foreign_keys[0].ref_column == "id");
    CHECK(catalog.databases[1].tables[0].primary_key ==
          std::vector<std::string>{"code"});
}
