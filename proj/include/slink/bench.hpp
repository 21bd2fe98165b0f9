#pragma once

#include "slink/documents.hpp"
#include "slink/pipeline.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace slink {

enum class GoldMode { columns, tables };

struct BenchmarkExample {
    std::string question;
    std::vector<std::string> gold_columns; // qualified column names
    std::vector<std::string> gold_tables;  // qualified table names (table mode)
    std::string source_db;                 // optional provenance

    GoldMode mode() const { return gold_columns.empty() ? GoldMode::tables : GoldMode::columns; }
};

/// Loads JSONL examples ({"question", "gold_columns"?, "gold_tables"?,
/// "source_db"?} per line) and checks every gold name resolves in the
/// catalog. Examples whose gold contains "*" are dropped at ingestion.
std::vector<BenchmarkExample> load_examples(const std::filesystem::path& path,
                                            const SchemaCatalog& catalog,
                                            const std::vector<SchemaDocument>& documents);

/// Recall of the gold set within the first `budget` retrieved columns.
/// In table mode, tables are deduced from retrieved columns first.
/// Matching is case-insensitive on qualified names.
double recall_at(const std::vector<std::string>& gold,
                 const std::vector<std::string>& retrieved_qualified, std::size_t budget,
                 GoldMode mode);

struct RecallReport {
    std::string method;
    std::vector<std::size_t> budgets;
    std::vector<std::vector<double>> per_example; // [example][budget index]
    std::vector<double> macro;                    // per budget index
    std::size_t n_examples = 0;
    std::size_t n_excluded = 0;
    std::string config_digest;
};

struct EvaluateOptions {
    std::vector<std::size_t> budgets;
    bool resolve_per_budget = false; // re-run the solver at every budget
    std::size_t max_in_flight = 8;
    std::string config_digest;
};

/// Runs `run_method(question, budget)` per example (at max budget unless
/// resolve_per_budget) and slices ranking prefixes for the smaller budgets.
/// Provider failures exclude the example and are counted.
using MethodRunner = std::function<PipelineResult(const std::string& question, std::size_t budget)>;

RecallReport evaluate(const std::vector<BenchmarkExample>& examples, const std::string& method_label,
                      const MethodRunner& run_method, const SchemaCatalog& catalog,
                      const std::vector<SchemaDocument>& documents, const EvaluateOptions& options);

/// CSV rows "method,budget,recall,n_examples,n_excluded" under a
/// "# config_digest=..." comment line.
std::string report_csv(const std::vector<RecallReport>& reports);

/// Fixed-width text table, one row per method, one column per budget.
std::string report_table(const std::vector<RecallReport>& reports);

/// Writes {question, tables:[{name, columns:[...]}]} reconstructing a
/// mini-catalog from the selected columns, in source order.
void export_subset(const std::string& question, const std::vector<int>& selected,
                   const SchemaCatalog& catalog, const std::vector<SchemaDocument>& documents,
                   const std::filesystem::path& out_path);

/// Loads an exported subset file back as a (question, catalog) pair; the
/// catalog passes validation with upstream-qualified table names allowed.
std::pair<std::string, SchemaCatalog> load_subset(const std::filesystem::path& path);

} // namespace slink
