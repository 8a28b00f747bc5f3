#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "apizer/catalog.hpp"
#include "apizer/evaluator.hpp"
#include "apizer/jobs.hpp"
#include "apizer/pipeline.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            lines.push_back(line);
        }
    }
    return lines;
}

json report_to_json(const apizer::eval::EvalReport& r) {
    return json{
        {"params_equivalent", r.params_equivalent},
        {"missing", r.missing},
        {"common", r.common},
        {"spurious", r.spurious},
        {"jaccard", r.jaccard},
        {"return_category", apizer::eval::to_string(r.return_category)},
        {"return_equivalent", r.return_equivalent},
        {"ast_diff", r.ast_diff},
    };
}

struct ApizeArgs {
    std::string snippet;
    std::string title;
    std::string url;
    long answer_id = 0;
    std::string catalog;
    std::string out = ".";
    double time_budget = 10.0;
    std::string verb_lexicon;
};

int cmd_apize(const ApizeArgs& args) {
    auto catalog = apizer::catalog::TypeCatalog::load(args.catalog);
    apizer::pipeline::SoPage page{args.title, args.url, args.answer_id, 0};
    auto result = apizer::pipeline::apize(read_file(args.snippet), page, catalog,
                                          args.time_budget, args.verb_lexicon);
    switch (result.outcome) {
        case apizer::pipeline::Outcome::Skipped:
            std::cout << "skipped: " << result.reason << "\n";
            return 2;
        case apizer::pipeline::Outcome::Failed:
            std::cout << "failed: " << result.reason << "\n";
            return 3;
        default:
            break;
    }
    std::string rendered = result.render();
    std::string path = args.out + "/" + result.class_name + ".java";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << rendered;
    std::cout << (result.outcome == apizer::pipeline::Outcome::Apized ? "apized"
                                                                      : "already-api")
              << ": " << path << "\n";
    return 0;
}

struct BatchArgs {
    std::string input;
    std::string catalog;
    std::string out = ".";
    double time_budget = 10.0;
    int jobs = 1;
    std::string verb_lexicon;
};

int cmd_batch(const BatchArgs& args) {
    auto catalog = apizer::catalog::TypeCatalog::load(args.catalog);
    apizer::jobs::BatchOptions options;
    options.time_budget = args.time_budget;
    options.jobs = args.jobs;
    options.out_dir = args.out;
    options.verb_lexicon = args.verb_lexicon;
    auto [results, summary] = apizer::jobs::run_batch(read_lines(args.input),
                                                      catalog, options);
    for (const auto& r : results) {
        std::cout << r.answer_id << "\t" << r.outcome;
        if (!r.detail.empty()) std::cout << "\t" << r.detail;
        std::cout << "\n";
    }
    std::cout << "apized=" << summary.apized << " already-api=" << summary.already_api
              << " skipped=" << summary.skipped << " failed=" << summary.failed
              << " total=" << summary.total() << "\n";
    return 0;
}

struct EvaluateArgs {
    std::string human;
    std::string tool;
    std::string pairs;
};

int cmd_evaluate(const EvaluateArgs& args) {
    using apizer::eval::EvalReport;
    if (!args.pairs.empty()) {
        int ok = 0;
        int errors = 0;
        json aggregate;
        std::map<std::string, int> by_count_apis;
        std::map<std::string, int> by_count_equiv;
        std::map<std::string, int> category_count;
        std::map<std::string, int> category_equiv;
        int params_equivalent = 0;
        int returns_equivalent = 0;
        for (const auto& line : read_lines(args.pairs)) {
            json rec;
            json out;
            try {
                rec = json::parse(line);
                auto human = apizer::eval::parse_single_method(rec.at("human"));
                auto tool = apizer::eval::parse_single_method(rec.at("tool"));
                EvalReport r = apizer::eval::evaluate_pair(human, tool);
                out = report_to_json(r);
                if (rec.contains("id")) out["id"] = rec["id"];
                ++ok;
                size_t human_params = human.params.size();
                std::string bucket = human_params >= 3 ? "3+"
                                                       : std::to_string(human_params);
                ++by_count_apis[bucket];
                if (r.params_equivalent) {
                    ++by_count_equiv[bucket];
                    ++params_equivalent;
                }
                std::string cat = apizer::eval::to_string(r.return_category);
                ++category_count[cat];
                if (r.return_equivalent) {
                    ++category_equiv[cat];
                    ++returns_equivalent;
                }
            } catch (const std::exception& e) {
                out = json{{"error", e.what()}};
                if (rec.is_object() && rec.contains("id")) out["id"] = rec["id"];
                ++errors;
            }
            std::cout << out.dump() << "\n";
        }
        json params_by_count = json::object();
        for (const auto& [bucket, count] : by_count_apis) {
            params_by_count[bucket] = json{{"apis", count},
                                           {"equivalent", by_count_equiv[bucket]}};
        }
        json returns = json::object();
        for (const auto& [cat, count] : category_count) {
            returns[cat] = json{{"count", count}, {"equivalent", category_equiv[cat]}};
        }
        aggregate = json{{"pairs", ok},
                         {"errors", errors},
                         {"params_equivalent", params_equivalent},
                         {"params_by_human_count", params_by_count},
                         {"return_categories", returns},
                         {"returns_equivalent", returns_equivalent}};
        std::cout << aggregate.dump() << "\n";
        return ok > 0 ? 0 : 3;
    }
    auto human = apizer::eval::parse_single_method(read_file(args.human));
    auto tool = apizer::eval::parse_single_method(read_file(args.tool));
    std::cout << report_to_json(apizer::eval::evaluate_pair(human, tool)).dump()
              << "\n";
    return 0;
}

struct ClonesArgs {
    std::string pairs;
    double threshold = 0.70;
};

int cmd_clones(const ClonesArgs& args) {
    int ok = 0;
    for (const auto& line : read_lines(args.pairs)) {
        json out;
        json rec;
        try {
            rec = json::parse(line);
            auto [ratio, clone] = apizer::eval::type3_containment(
                rec.at("snippet"), rec.at("method"), args.threshold);
            out = json{{"ratio", ratio}, {"clone", clone}};
            if (rec.contains("id")) out["id"] = rec["id"];
            ++ok;
        } catch (const std::exception& e) {
            out = json{{"error", e.what()}};
            if (rec.is_object() && rec.contains("id")) out["id"] = rec["id"];
        }
        std::cout << out.dump() << "\n";
    }
    return ok > 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turns dangling Java snippets into compilable method declarations"};
    app.require_subcommand(1);

    ApizeArgs apize_args;
    CLI::App* apize = app.add_subcommand("apize", "Process a single snippet");
    apize->add_option("--snippet", apize_args.snippet, "Snippet source file")->required();
    apize->add_option("--title", apize_args.title, "Q&A page title");
    apize->add_option("--url", apize_args.url, "Q&A page URL");
    apize->add_option("--answer-id", apize_args.answer_id, "Answer id");
    apize->add_option("--catalog", apize_args.catalog, "Type catalog (JSON lines)")->required();
    apize->add_option("--out", apize_args.out, "Output directory");
    apize->add_option("--time-budget", apize_args.time_budget, "Seconds per snippet");
    apize->add_option("--verb-lexicon", apize_args.verb_lexicon, "Verb list file");

    BatchArgs batch_args;
    CLI::App* batch = app.add_subcommand("batch", "Process a JSON-lines batch");
    batch->add_option("--input", batch_args.input, "JSON-lines job file")->required();
    batch->add_option("--catalog", batch_args.catalog, "Type catalog")->required();
    batch->add_option("--out", batch_args.out, "Output directory");
    batch->add_option("--time-budget", batch_args.time_budget, "Seconds per record");
    batch->add_option("--jobs", batch_args.jobs, "Worker threads");
    batch->add_option("--verb-lexicon", batch_args.verb_lexicon, "Verb list file");

    EvaluateArgs eval_args;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Compare method pairs");
    evaluate->add_option("--human", eval_args.human, "Reference method file");
    evaluate->add_option("--tool", eval_args.tool, "Generated method file");
    evaluate->add_option("--pairs", eval_args.pairs, "JSON-lines pair file");

    ClonesArgs clones_args;
    CLI::App* clones = app.add_subcommand("clones", "TYPE-3 clone containment");
    clones->add_option("--pairs", clones_args.pairs, "JSON-lines pair file")->required();
    clones->add_option("--threshold", clones_args.threshold, "Clone threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help exits 0; anything else is a usage error.
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (apize->parsed()) return cmd_apize(apize_args);
        if (batch->parsed()) return cmd_batch(batch_args);
        if (evaluate->parsed()) {
            if (eval_args.pairs.empty() &&
                (eval_args.human.empty() || eval_args.tool.empty())) {
                std::cerr << "evaluate needs --pairs or both --human and --tool\n";
                return 1;
            }
            return cmd_evaluate(eval_args);
        }
        if (clones->parsed()) return cmd_clones(clones_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
