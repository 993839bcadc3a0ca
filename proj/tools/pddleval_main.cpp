// pddleval CLI: solve and diff PDDL files, inspect corpus stats, print
// prompts, and run full evaluations.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pddleval/dataset.hpp"
#include "pddleval/equivalence.hpp"
#include "pddleval/harness.hpp"
#include "pddleval/llm.hpp"
#include "pddleval/parser.hpp"
#include "pddleval/printer.hpp"
#include "pddleval/prompts.hpp"
#include "pddleval/solver.hpp"
#include "pddleval/util.hpp"
#include "pddleval/validate.hpp"

namespace fs = std::filesystem;
using namespace pddleval;

namespace {

fs::path default_templates_dir() {
    if (const char* env = std::getenv("PDDLEVAL_TEMPLATES")) return env;
    return fs::path("assets") / "prompts";
}

int cmd_solve(const std::string& domain_path, const std::string& problem_path, double timeout_secs,
              const std::string& plan_out, std::uint64_t node_cap) {
    std::vector<Diagnostic> diags;
    DomainFile df;
    ProblemFile pf;
    try {
        df = parse_domain(util::read_file(domain_path), &diags);
        pf = parse_problem(util::read_file(problem_path), &diags);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 12;
    }
    for (const Diagnostic& d : diags) {
        if (d.severity != Severity::note) std::cerr << d.to_string() << "\n";
    }

    planner::SolveOptions opts;
    opts.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(timeout_secs * 1000.0));
    if (node_cap > 0) opts.node_cap = node_cap;

    planner::SolveOutcome outcome = planner::bfs_solve(df, pf, opts);
    std::cerr << planner::SolveOutcome::kind_name(outcome.kind) << " ("
              << outcome.nodes_expanded << " nodes, " << outcome.elapsed.count() << " ms)";
    if (!outcome.note.empty()) std::cerr << " - " << outcome.note;
    std::cerr << "\n";

    switch (outcome.kind) {
        case planner::SolveOutcome::Kind::solved: {
            std::string text = print_plan(outcome.plan);
            if (plan_out.empty()) {
                std::cout << text;
            } else {
                util::write_file_atomic(plan_out, text);
            }
            return 0;
        }
        case planner::SolveOutcome::Kind::no_plan: return 10;
        case planner::SolveOutcome::Kind::timeout: return 11;
        case planner::SolveOutcome::Kind::solver_error: return 12;
    }
    return 12;
}

int cmd_diff(const std::string& predicted_path, const std::string& gold_path,
             const std::string& report_path) {
    DomainFile predicted, gold;
    try {
        predicted = parse_domain(util::read_file(predicted_path));
        gold = parse_domain(util::read_file(gold_path));
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    equiv::IntrinsicReport report = equiv::intrinsic_report(predicted, gold, true);

    nlohmann::ordered_json doc;
    doc["predicted"] = predicted_path;
    doc["gold"] = gold_path;
    nlohmann::ordered_json actions = nlohmann::ordered_json::array();
    std::printf("%-28s %8s %8s %8s %8s\n", "action", "params", "precond", "effect", "total");
    for (const equiv::ActionScore& score : report.actions) {
        nlohmann::ordered_json ja;
        ja["name"] = score.name.text;
        ja["present"] = score.present;
        if (score.distance) {
            ja["params"] = score.distance->params.distance();
            ja["precondition"] = score.distance->precondition.distance();
            ja["effect"] = score.distance->effect.distance();
            ja["total"] = score.distance->total();
            ja["greedy_exact_disagree"] = score.greedy_exact_disagree;
            std::printf("%-28s %8d %8d %8d %8d%s\n", score.name.text.c_str(),
                        score.distance->params.distance(),
                        score.distance->precondition.distance(),
                        score.distance->effect.distance(), score.distance->total(),
                        score.greedy_exact_disagree ? "  (greedy/exact disagree)" : "");
        } else {
            std::printf("%-28s %8s %8s %8s %8s\n", score.name.text.c_str(), "-", "-", "-",
                        "missing");
        }
        actions.push_back(ja);
    }
    doc["actions"] = actions;
    doc["action_accuracy"] = report.action_accuracy();
    std::printf("action accuracy: %zu/%zu\n", report.exact_count(), report.gold_count());
    if (!report_path.empty()) util::write_file_atomic(report_path, doc.dump(2) + "\n");
    return 0;
}

int cmd_stats(const std::string& corpus_root, bool check, bool as_json) {
    dataset::Corpus corpus = dataset::load_corpus(corpus_root);
    for (const std::string& err : corpus.errors) std::cerr << "warning: " << err << "\n";

    if (as_json) {
        nlohmann::ordered_json doc;
        doc["examples"] = corpus.stats.examples;
        doc["problems"] = corpus.stats.problems;
        doc["mean_actions_per_domain"] = corpus.stats.mean_actions_per_domain();
        doc["mean_plan_length"] = corpus.stats.mean_plan_length();
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("%-26s %10s %10s %16s %14s\n", "corpus", "examples", "problems",
                    "actions/domain", "plan length");
        std::printf("%-26s %10zu %10zu %16.2f %14.2f\n", corpus_root.c_str(),
                    corpus.stats.examples, corpus.stats.problems,
                    corpus.stats.mean_actions_per_domain(), corpus.stats.mean_plan_length());
    }

    if (check) {
        bool all_ok = true;
        for (const dataset::ExampleRecord& ex : corpus.examples) {
            dataset::GoldCheck gc = dataset::check_gold(ex);
            for (const std::string& w : gc.warnings) std::cerr << "warning: " << w << "\n";
            for (const dataset::GoldCheckItem& item : gc.items) {
                std::printf("%-26s %-8s plan=%-5s solve=%s%s%s\n", ex.id.c_str(),
                            item.problem.c_str(), item.plan_valid ? "ok" : "BAD",
                            planner::SolveOutcome::kind_name(item.solve).c_str(),
                            item.detail.empty() ? "" : "  ", item.detail.c_str());
            }
            all_ok = all_ok && gc.all_ok();
        }
        return all_ok ? 0 : 1;
    }
    return 0;
}

int cmd_prompt(const std::string& corpus_root, const std::string& example_id,
               const std::string& style, int shots, const std::string& condition,
               const std::string& templates_dir) {
    dataset::Corpus corpus = dataset::load_corpus(corpus_root, {example_id});
    if (corpus.examples.empty()) {
        std::cerr << "error: example '" << example_id << "' not found in " << corpus_root << "\n";
        for (const std::string& err : corpus.errors) std::cerr << "  " << err << "\n";
        return 2;
    }
    const dataset::ExampleRecord& example = corpus.examples.front();

    prompts::PromptRequest request;
    request.example_id = example.id;
    request.style.kind = prompts::style_from(style);
    request.style.shots = shots;
    request.condition = prompts::text_condition_from(condition);
    request.header = example.domain.header;
    request.goal_phrase = example.title;

    prompts::PromptTemplates templates = prompts::PromptTemplates::load(templates_dir);
    std::cout << prompts::build_prompt(request, example, templates);
    return 0;
}

int cmd_eval(harness::RunConfig config, bool plot) {
    harness::EvalReport report = harness::run(config);
    harness::EmitOptions emit;
    emit.svg = plot;
    std::vector<fs::path> files = harness::emit_report(report, config.output_dir, emit);
    std::cout << harness::render_tables(report);
    std::cerr << "wrote:";
    for (const fs::path& f : files) std::cerr << " " << f.string();
    std::cerr << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evaluation toolkit for text-to-PDDL action modeling"};
    app.require_subcommand(1);

    // solve
    std::string domain_path, problem_path, plan_out;
    double timeout_secs = 30.0;
    std::uint64_t node_cap = 5'000'000;
    CLI::App* solve = app.add_subcommand("solve", "Run the BFS planner on a domain/problem pair");
    solve->add_option("domain", domain_path, "domain .pddl file")->required();
    solve->add_option("problem", problem_path, "problem .pddl file")->required();
    solve->add_option("--timeout-secs", timeout_secs, "wall-clock budget (default 30)");
    solve->add_option("--plan-out", plan_out, "write the plan here instead of stdout");
    solve->add_option("--node-cap", node_cap, "expansion cap (0 = unlimited)");

    // diff
    std::string predicted_path, gold_path, diff_report;
    CLI::App* diff = app.add_subcommand("diff", "Per-action distance between two domains");
    diff->add_option("predicted", predicted_path, "predicted domain")->required();
    diff->add_option("gold", gold_path, "gold domain")->required();
    diff->add_option("--report", diff_report, "write a JSON distance table here");

    // stats
    std::string stats_root;
    bool stats_check = false, stats_json = false;
    CLI::App* stats = app.add_subcommand("stats", "Corpus statistics");
    stats->add_option("--corpus", stats_root, "corpus root (with manifest)")->required();
    stats->add_flag("--check-gold", stats_check, "also validate plans and solve every problem");
    stats->add_flag("--json", stats_json, "machine-readable output");

    // prompt
    std::string prompt_root, prompt_example, prompt_style = "plain", prompt_condition = "none";
    std::string prompt_templates = default_templates_dir().string();
    int prompt_shots = 0;
    CLI::App* prompt = app.add_subcommand("prompt", "Print a built prompt for inspection");
    prompt->add_option("--corpus", prompt_root, "corpus root")->required();
    prompt->add_option("--example", prompt_example, "example id")->required();
    prompt->add_option("--style", prompt_style, "plain|cot|zpd");
    prompt->add_option("--shots", prompt_shots, "few-shot examples (0-3)");
    prompt->add_option("--text", prompt_condition, "none|sum|map|rel|all");
    prompt->add_option("--templates", prompt_templates, "prompt template directory");

    // eval
    harness::RunConfig config;
    config.templates_dir = default_templates_dir();
    std::string eval_root, eval_style = "plain", eval_condition = "none", eval_model;
    std::string eval_out = "eval_out", eval_cache = "cache";
    std::vector<std::string> eval_examples;
    double eval_timeout = 30.0;
    bool replay_only = false, oracle = false, plot = false, live = false;
    int jobs = 1, shots = 0;
    std::uint64_t eval_node_cap = 5'000'000;
    CLI::App* eval = app.add_subcommand("eval", "Run the full evaluation pipeline");
    eval->add_option("--corpus", eval_root, "corpus root")->required();
    eval->add_option("--example", eval_examples, "restrict to these example ids");
    eval->add_option("--style", eval_style, "plain|cot|zpd");
    eval->add_option("--shots", shots, "few-shot examples (0-3)");
    eval->add_option("--text", eval_condition, "none|sum|map|rel|all");
    eval->add_option("--model", eval_model, "model id for the provider");
    eval->add_option("--timeout-secs", eval_timeout, "per-problem solver budget");
    eval->add_option("--node-cap", eval_node_cap, "per-problem expansion cap (0 = unlimited)");
    eval->add_option("--jobs", jobs, "concurrent solver workers");
    eval->add_flag("--replay-only", replay_only, "serve completions from the cache only");
    eval->add_flag("--live", live, "allow live provider calls on cache misses");
    eval->add_flag("--oracle", oracle, "score gold actions instead of model output");
    eval->add_option("--out", eval_out, "output directory");
    eval->add_option("--cache-dir", eval_cache, "completion cache directory");
    eval->add_option("--templates", config.templates_dir, "prompt template directory");
    eval->add_flag("--plot", plot, "also emit solve_rates.svg");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            return cmd_solve(domain_path, problem_path, timeout_secs, plan_out, node_cap);
        }
        if (diff->parsed()) return cmd_diff(predicted_path, gold_path, diff_report);
        if (stats->parsed()) return cmd_stats(stats_root, stats_check, stats_json);
        if (prompt->parsed()) {
            return cmd_prompt(prompt_root, prompt_example, prompt_style, prompt_shots,
                              prompt_condition, prompt_templates);
        }
        if (eval->parsed()) {
            config.corpus_root = eval_root;
            config.example_filter = eval_examples;
            config.style.kind = prompts::style_from(eval_style);
            config.style.shots = shots;
            config.condition = prompts::text_condition_from(eval_condition);
            config.model.model_id = eval_model;
            config.solver_timeout =
                std::chrono::milliseconds(static_cast<std::int64_t>(eval_timeout * 1000.0));
            config.node_cap = eval_node_cap == 0 ? std::nullopt
                                                 : std::optional<std::uint64_t>(eval_node_cap);
            config.output_dir = eval_out;
            config.cache_dir = eval_cache;
            config.jobs = jobs;
            config.oracle = oracle;
            if (!oracle && eval_model.empty()) {
                std::cerr << "error: --model is required unless --oracle is set\n";
                return 2;
            }
            config.mode = (live && !replay_only) ? llm::CompletionMode::live
                                                 : llm::CompletionMode::replay_only;
            return cmd_eval(config, plot);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
