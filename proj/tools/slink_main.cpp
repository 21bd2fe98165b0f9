#include "slink/bench.hpp"
#include "slink/config.hpp"
#include "slink/errors.hpp"
#include "slink/union_builder.hpp"
#include "slink/util.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace slink;

struct CommonArgs {
    std::string config_path;
    bool offline = false;
    std::optional<std::string> catalog;
    std::optional<std::string> cache_dir;
    std::optional<std::string> index_dir;
    std::optional<std::string> prompt_template;
    std::optional<std::size_t> n_cand;
    std::optional<std::size_t> budget;
    std::optional<double> clubsuit;
    std::optional<bool> contextual, entropy, coverage, edges;
    std::optional<std::size_t> shots;
    std::optional<double> temperature;
    std::optional<std::string> fixture_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Run configuration file (JSON)")->required();
    cmd->add_flag("--offline", args.offline,
                  "Force the hash embedder and the fixture LLM (no network)");
    cmd->add_option("--catalog", args.catalog, "Override catalog path");
    cmd->add_option("--cache-dir", args.cache_dir, "Override cache directory");
    cmd->add_option("--index-dir", args.index_dir, "Override index directory");
    cmd->add_option("--prompt", args.prompt_template, "Override prompt template path");
    cmd->add_option("--n-cand", args.n_cand, "Candidate set size");
    cmd->add_option("--budget", args.budget, "Selection budget B");
    cmd->add_option("--clubsuit", args.clubsuit, "Connectivity weight");
    cmd->add_option("--contextual", args.contextual, "Embed probes with the question (bool)");
    cmd->add_option("--entropy", args.entropy, "Entropy damping (bool)");
    cmd->add_option("--coverage", args.coverage, "Soft-max coverage term (bool)");
    cmd->add_option("--edges", args.edges, "Connectivity term (bool)");
    cmd->add_option("--shots", args.shots, "Few-shot count cap");
    cmd->add_option("--temperature", args.temperature, "LLM temperature override");
    cmd->add_option("--fixture-dir", args.fixture_dir, "Fixture LLM replay directory");
}

RunConfig make_config(const CommonArgs& args) {
    RunConfig config = load_config(args.config_path);
    // flags win over the file
    if (args.catalog) config.catalog_path = *args.catalog;
    if (args.cache_dir) config.cache_dir = *args.cache_dir;
    if (args.index_dir) config.index_dir = *args.index_dir;
    if (args.prompt_template) config.prompt_template_path = *args.prompt_template;
    if (args.n_cand) config.retrieval.n_cand = *args.n_cand;
    if (args.budget) config.retrieval.budget = *args.budget;
    if (args.clubsuit) config.retrieval.clubsuit = *args.clubsuit;
    if (args.contextual) config.retrieval.contextual = *args.contextual;
    if (args.entropy) config.retrieval.entropy = *args.entropy;
    if (args.coverage) config.retrieval.coverage = *args.coverage;
    if (args.edges) config.retrieval.edges = *args.edges;
    if (args.shots) config.shots = *args.shots;
    if (args.temperature) config.temperature = *args.temperature;
    if (args.fixture_dir) config.llm.fixture_dir = *args.fixture_dir;
    if (args.offline) {
        config.embedding.kind = "hash";
        config.llm.kind = "fixture";
    }
    return config;
}

int cmd_index(const CommonArgs& args) {
    Runtime rt = make_runtime(make_config(args), /*need_llm=*/false, /*load_index=*/false);
    const std::size_t before =
        dynamic_cast<CachedEmbedder&>(*rt.embedder)
            .count_cached([&] {
                std::vector<std::string> texts;
                for (const auto& d : rt.documents) texts.push_back(d.display_text);
                return texts;
            }());
    const std::size_t rows = build_index(rt);
    std::cout << "indexed " << rows << " documents (" << before << " cache hits) -> "
              << rt.config.resolved_index_dir().string() << "\n";
    std::cout << "config_digest=" << rt.digest << "\n";
    return 0;
}

int cmd_retrieve(const CommonArgs& args, const std::string& question, const std::string& out_path,
                 const std::string& export_path, const std::string& method) {
    Runtime rt = make_runtime(make_config(args), /*need_llm=*/method == "crush",
                              /*load_index=*/true);
    PipelineResult result =
        method == "crush"
            ? retrieve(question, rt.index, rt.graph, *rt.embedder, *rt.llm, rt.prompt_template,
                       rt.config.retrieval)
            : retrieve_single_dpr(question, rt.index, *rt.embedder, rt.config.retrieval.budget);

    const nlohmann::json payload = result_to_json(result, rt.documents, rt.digest);
    std::cout << payload.dump(2) << "\n";
    if (!out_path.empty()) {
        write_json_file(out_path, payload);
        nlohmann::json manifest = result.manifest;
        manifest["config_digest"] = rt.digest;
        write_json_file(out_path + ".manifest.json", manifest);
    }
    if (!export_path.empty()) {
        export_subset(question, result.selection.selected, rt.catalog, rt.documents, export_path);
    }
    return 0;
}

int cmd_eval(const CommonArgs& args, const std::string& examples_path,
             const std::vector<std::string>& methods, std::vector<std::size_t> budgets,
             const std::string& out_dir) {
    const bool wants_crush =
        std::find(methods.begin(), methods.end(), "crush") != methods.end();
    Runtime rt = make_runtime(make_config(args), wants_crush, /*load_index=*/true);
    const auto examples = load_examples(examples_path, rt.catalog, rt.documents);

    if (budgets.empty()) budgets = {3, 5, 10, 20};
    EvaluateOptions eval_options;
    eval_options.budgets = budgets;
    eval_options.resolve_per_budget = rt.config.resolve_per_budget;
    eval_options.max_in_flight = rt.config.embedding.max_in_flight;
    eval_options.config_digest = rt.digest;

    std::vector<RecallReport> reports;
    for (const std::string& method : methods) {
        MethodRunner runner;
        if (method == "crush") {
            runner = [&](const std::string& q, std::size_t b) {
                RetrievalOptions opts = rt.config.retrieval;
                opts.budget = b;
                return retrieve(q, rt.index, rt.graph, *rt.embedder, *rt.llm, rt.prompt_template,
                                opts);
            };
        } else if (method == "single_dpr") {
            runner = [&](const std::string& q, std::size_t b) {
                return retrieve_single_dpr(q, rt.index, *rt.embedder, b);
            };
        } else {
            throw ArgumentError("unknown method '" + method + "' (use crush or single_dpr)");
        }
        reports.push_back(
            evaluate(examples, method, runner, rt.catalog, rt.documents, eval_options));
    }

    const std::string csv = report_csv(reports);
    const std::string table = report_table(reports);
    std::cout << table;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file_atomic(std::filesystem::path(out_dir) / "report.csv", csv);
        write_file_atomic(std::filesystem::path(out_dir) / "report.txt", table);
        std::cout << "wrote " << (std::filesystem::path(out_dir) / "report.csv").string() << "\n";
    }
    return 0;
}

int cmd_hallucinate(const CommonArgs& args, const std::string& question, bool show_prompt,
                    const std::string& record_dir) {
    Runtime rt = make_runtime(make_config(args), /*need_llm=*/true, /*load_index=*/false);
    if (show_prompt) {
        std::cout << build_prompt(rt.prompt_template, question) << "\n---\n";
    }
    const HallucinatedSchema schema = hallucinate(*rt.llm, rt.prompt_template, question);
    nlohmann::json tables = nlohmann::json::array();
    for (const ParsedTable& t : schema.tables) {
        tables.push_back({{"table", t.name}, {"columns", t.columns}});
    }
    const nlohmann::json payload = {{"question", question},
                                    {"raw_response", schema.raw_response},
                                    {"tables", tables},
                                    {"probes", schema.probes},
                                    {"used_fallback", schema.used_fallback},
                                    {"skipped", schema.skipped}};
    std::cout << payload.dump(2) << "\n";
    if (!record_dir.empty()) {
        FixtureLlmClient::record(record_dir, question, schema.raw_response);
    }
    return 0;
}

int cmd_build_union(const std::vector<std::string>& inputs, const std::string& format,
                    const std::string& out_path) {
    SchemaCatalog result;
    if (format == "catalog") {
        std::vector<SchemaCatalog> catalogs;
        for (const std::string& in : inputs) catalogs.push_back(load_catalog(in));
        result = build_union(catalogs);
    } else if (format == "spider" || format == "bird") {
        if (inputs.size() != 1) {
            throw ArgumentError("--format " + format + " expects exactly one tables.json file");
        }
        result = catalog_from_spider_tables(read_json_file(inputs[0]));
    } else {
        throw ArgumentError("unknown --format '" + format + "'");
    }
    save_catalog(result, out_path);
    std::cout << "wrote " << out_path << ": " << result.databases.size() << " databases, "
              << result.table_count() << " tables, " << result.column_count() << " columns\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schema subsetting for questions over very large database schemas"};
    app.require_subcommand(1);

    CommonArgs index_args;
    auto* index_cmd = app.add_subcommand("index", "Embed the catalog and write the vector store");
    add_common(index_cmd, index_args);

    CommonArgs retrieve_args;
    std::string question, out_path, export_path, retrieve_method = "crush";
    auto* retrieve_cmd = app.add_subcommand("retrieve", "Retrieve a schema subset for a question");
    add_common(retrieve_cmd, retrieve_args);
    retrieve_cmd->add_option("--question", question, "Natural-language question")->required();
    retrieve_cmd->add_option("--out", out_path, "Write the result JSON here");
    retrieve_cmd->add_option("--export-subset", export_path, "Write a mini-catalog JSON here");
    retrieve_cmd->add_option("--method", retrieve_method, "crush | single_dpr")
        ->check(CLI::IsMember({"crush", "single_dpr"}));

    CommonArgs eval_args;
    std::string examples_path, eval_out_dir;
    std::vector<std::string> methods{"crush", "single_dpr"};
    std::vector<std::size_t> budgets;
    auto* eval_cmd = app.add_subcommand("eval", "Compute recall@B over an examples file");
    add_common(eval_cmd, eval_args);
    eval_cmd->add_option("--examples", examples_path, "JSONL examples file")->required();
    eval_cmd->add_option("--methods", methods, "Methods to evaluate")->delimiter(',');
    eval_cmd->add_option("--budgets", budgets, "Budgets, e.g. 3,5,10,20")->delimiter(',');
    eval_cmd->add_option("--out", eval_out_dir, "Directory for report.csv / report.txt");

    CommonArgs hallucinate_args;
    std::string h_question, record_dir;
    bool show_prompt = false;
    auto* hallucinate_cmd =
        app.add_subcommand("hallucinate", "Show the hallucinated mini-schema for a question");
    add_common(hallucinate_cmd, hallucinate_args);
    hallucinate_cmd->add_option("--question", h_question, "Natural-language question")->required();
    hallucinate_cmd->add_flag("--show-prompt", show_prompt, "Print the full prompt first");
    hallucinate_cmd->add_option("--record-fixture", record_dir,
                                "Also record the response for fixture replay");

    std::vector<std::string> union_inputs;
    std::string union_format = "catalog", union_out;
    auto* union_cmd = app.add_subcommand("build-union", "Merge catalogs into one union catalog");
    union_cmd->add_option("inputs", union_inputs, "Input files")->required();
    union_cmd->add_option("--format", union_format, "catalog | spider | bird");
    union_cmd->add_option("--out", union_out, "Output catalog path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (index_cmd->parsed()) return cmd_index(index_args);
        if (retrieve_cmd->parsed()) {
            return cmd_retrieve(retrieve_args, question, out_path, export_path, retrieve_method);
        }
        if (eval_cmd->parsed()) {
            return cmd_eval(eval_args, examples_path, methods, budgets, eval_out_dir);
        }
        if (hallucinate_cmd->parsed()) {
            return cmd_hallucinate(hallucinate_args, h_question, show_prompt, record_dir);
        }
        if (union_cmd->parsed()) return cmd_build_union(union_inputs, union_format, union_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
