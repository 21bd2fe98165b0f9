#include "slink/bench.hpp"

#include "slink/errors.hpp"
#include "slink/util.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace slink {

namespace {

std::string strip_last_component(const std::string& qualified) {
    const auto pos = qualified.rfind('.');
    return pos == std::string::npos ? qualified : qualified.substr(0, pos);
}

} // namespace

std::vector<BenchmarkExample> load_examples(const std::filesystem::path& path,
                                            const SchemaCatalog& catalog,
                                            const std::vector<SchemaDocument>& documents) {
    std::set<std::string> known_columns;
    std::set<std::string> known_tables;
    for (const SchemaDocument& doc : documents) {
        known_columns.insert(to_lower(doc.qualified_name));
        known_tables.insert(to_lower(table_qualified_name(catalog, doc)));
    }

    std::vector<BenchmarkExample> out;
    const std::string content = read_file(path);
    std::size_t line_no = 0;
    for (std::string_view line : split_any(content, "\n")) {
        ++line_no;
        if (trim_ws(line).empty()) continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        BenchmarkExample ex;
        ex.question = rec.at("question").get<std::string>();
        if (rec.contains("gold_columns")) {
            ex.gold_columns = rec.at("gold_columns").get<std::vector<std::string>>();
        }
        if (rec.contains("gold_tables")) {
            ex.gold_tables = rec.at("gold_tables").get<std::vector<std::string>>();
        }
        ex.source_db = rec.value("source_db", std::string{});

        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (ex.gold_columns.empty() == ex.gold_tables.empty()) {
            throw ValidationError(where + ": exactly one of gold_columns/gold_tables must be set");
        }
        // gold SQL with '*' cannot name its columns; drop such examples
        const auto& gold = ex.gold_columns.empty() ? ex.gold_tables : ex.gold_columns;
        if (std::any_of(gold.begin(), gold.end(),
                        [](const std::string& g) { return g.find('*') != std::string::npos; })) {
            continue;
        }
        for (const std::string& g : ex.gold_columns) {
            if (!known_columns.contains(to_lower(g))) {
                throw ValidationError(where + ": gold column '" + g + "' not found in catalog");
            }
        }
        for (const std::string& g : ex.gold_tables) {
            if (!known_tables.contains(to_lower(g))) {
                throw ValidationError(where + ": gold table '" + g + "' not found in catalog");
            }
        }
        out.push_back(std::move(ex));
    }
    return out;
}

double recall_at(const std::vector<std::string>& gold,
                 const std::vector<std::string>& retrieved_qualified, std::size_t budget,
                 GoldMode mode) {
    if (gold.empty()) throw ArgumentError("recall_at: gold set must be non-empty");

    std::set<std::string> gold_set;
    for (const std::string& g : gold) gold_set.insert(to_lower(g));

    std::set<std::string> retrieved;
    const std::size_t take = std::min(budget, retrieved_qualified.size());
    for (std::size_t i = 0; i < take; ++i) {
        const std::string low = to_lower(retrieved_qualified[i]);
        retrieved.insert(mode == GoldMode::columns ? low : strip_last_component(low));
    }

    std::size_t hit = 0;
    for (const std::string& g : gold_set) {
        if (retrieved.contains(g)) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(gold_set.size());
}

RecallReport evaluate(const std::vector<BenchmarkExample>& examples,
                      const std::string& method_label, const MethodRunner& run_method,
                      const SchemaCatalog& /*catalog*/, const std::vector<SchemaDocument>& documents,
                      const EvaluateOptions& options) {
    if (options.budgets.empty()) throw ArgumentError("evaluate: budgets must be non-empty");
    const std::size_t max_budget = *std::max_element(options.budgets.begin(), options.budgets.end());

    RecallReport report;
    report.method = method_label;
    report.budgets = options.budgets;
    report.config_digest = options.config_digest;

    struct Row {
        bool excluded = false;
        std::vector<double> recalls;
    };
    std::vector<Row> rows(examples.size());

    auto run_example = [&](std::size_t i) {
        const BenchmarkExample& ex = examples[i];
        Row& row = rows[i];
        try {
            std::vector<std::string> retrieved_max;
            auto names_of = [&](const PipelineResult& r) {
                std::vector<std::string> names;
                names.reserve(r.selection.selected.size());
                for (int doc : r.selection.selected) {
                    names.push_back(documents.at(static_cast<std::size_t>(doc)).qualified_name);
                }
                return names;
            };
            if (!options.resolve_per_budget) {
                retrieved_max = names_of(run_method(ex.question, max_budget));
            }
            const auto& gold = ex.mode() == GoldMode::columns ? ex.gold_columns : ex.gold_tables;
            for (std::size_t b = 0; b < options.budgets.size(); ++b) {
                const std::vector<std::string> retrieved =
                    options.resolve_per_budget ? names_of(run_method(ex.question, options.budgets[b]))
                                               : retrieved_max;
                row.recalls.push_back(recall_at(gold, retrieved, options.budgets[b], ex.mode()));
            }
        } catch (const Error&) {
            row.excluded = true;
        }
    };

    const std::size_t workers =
        std::max<std::size_t>(1, std::min(options.max_in_flight, examples.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < examples.size(); ++i) run_example(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < examples.size();
                     i = next.fetch_add(1)) {
                    run_example(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    report.macro.assign(options.budgets.size(), 0.0);
    for (const Row& row : rows) {
        if (row.excluded) {
            ++report.n_excluded;
            continue;
        }
        report.per_example.push_back(row.recalls);
        for (std::size_t b = 0; b < row.recalls.size(); ++b) report.macro[b] += row.recalls[b];
    }
    report.n_examples = report.per_example.size();
    if (report.n_examples > 0) {
        for (double& m : report.macro) m /= static_cast<double>(report.n_examples);
    }
    return report;
}

std::string report_csv(const std::vector<RecallReport>& reports) {
    std::ostringstream out;
    if (!reports.empty()) {
        out << "# config_digest=" << reports.front().config_digest << "\n";
    }
    out << "method,budget,recall,n_examples,n_excluded\n";
    char buf[64];
    for (const RecallReport& r : reports) {
        for (std::size_t b = 0; b < r.budgets.size(); ++b) {
            std::snprintf(buf, sizeof(buf), "%.6f", r.macro[b]);
            out << r.method << "," << r.budgets[b] << "," << buf << "," << r.n_examples << ","
                << r.n_excluded << "\n";
        }
    }
    return out.str();
}

std::string report_table(const std::vector<RecallReport>& reports) {
    std::ostringstream out;
    if (!reports.empty()) {
        out << "# config_digest=" << reports.front().config_digest << "\n";
    }
    out << "method            n  excl";
    if (!reports.empty()) {
        for (std::size_t b : reports.front().budgets) {
            char head[32];
            std::snprintf(head, sizeof(head), "  r @ %-4zu", b);
            out << head;
        }
    }
    out << "\n";
    char buf[64];
    for (const RecallReport& r : reports) {
        std::snprintf(buf, sizeof(buf), "%-15s %3zu %5zu", r.method.c_str(), r.n_examples,
                      r.n_excluded);
        out << buf;
        for (double m : r.macro) {
            std::snprintf(buf, sizeof(buf), "  %-8.4f", m);
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

void export_subset(const std::string& question, const std::vector<int>& selected,
                   const SchemaCatalog& catalog, const std::vector<SchemaDocument>& documents,
                   const std::filesystem::path& out_path) {
    // group columns by owning table, keeping catalog source order
    std::map<std::pair<int, int>, std::vector<const SchemaDocument*>> grouped;
    for (int doc_id : selected) {
        const SchemaDocument& doc = documents.at(static_cast<std::size_t>(doc_id));
        grouped[{doc.database_index, doc.table_index}].push_back(&doc);
    }
    nlohmann::json tables = nlohmann::json::array();
    for (auto& [key, docs] : grouped) {
        std::sort(docs.begin(), docs.end(), [](const SchemaDocument* a, const SchemaDocument* b) {
            return a->column_index < b->column_index;
        });
        nlohmann::json cols = nlohmann::json::array();
        for (const SchemaDocument* d : docs) {
            const Column& col = catalog.databases[static_cast<std::size_t>(d->database_index)]
                                    .tables[static_cast<std::size_t>(d->table_index)]
                                    .columns[static_cast<std::size_t>(d->column_index)];
            cols.push_back(col.name);
        }
        tables.push_back({{"name", table_qualified_name(catalog, *docs.front())},
                          {"columns", std::move(cols)}});
    }
    write_json_file(out_path, {{"question", question}, {"tables", std::move(tables)}});
}

std::pair<std::string, SchemaCatalog> load_subset(const std::filesystem::path& path) {
    const auto doc = read_json_file(path);
    nlohmann::json tables = nlohmann::json::array();
    for (const auto& jt : doc.at("tables")) {
        nlohmann::json cols = nlohmann::json::array();
        for (const auto& c : jt.at("columns")) {
            cols.push_back({{"name", c.get<std::string>()}});
        }
        tables.push_back({{"name", jt.at("name").get<std::string>()}, {"columns", std::move(cols)}});
    }
    const nlohmann::json catalog_doc = {
        {"databases", nlohmann::json::array({{{"name", ""}, {"tables", std::move(tables)}}})}};
    return {doc.at("question").get<std::string>(),
            catalog_from_json(catalog_doc, /*allow_dotted_names=*/true)};
}

} // namespace slink
