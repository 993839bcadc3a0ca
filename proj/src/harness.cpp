#include "pddleval/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <map>
#include <sstream>

#include "pddleval/printer.hpp"
#include "pddleval/util.hpp"

namespace pddleval::harness {

namespace fs = std::filesystem;

std::string config_digest(const RunConfig& config) {
    std::ostringstream os;
    os << "eval/v1\nstyle=" << prompts::to_string(config.style.kind)
       << "\nshots=" << config.style.shots
       << "\ncondition=" << prompts::to_string(config.condition)
       << "\nmodel=" << config.model.model_id << "\nparams=" << llm::canonical_params(config.model)
       << "\ntimeout_ms=" << config.solver_timeout.count()
       << "\nnode_cap=" << (config.node_cap ? std::to_string(*config.node_cap) : "none")
       << "\noracle=" << (config.oracle ? 1 : 0) << "\nfilter=";
    for (const std::string& id : config.example_filter) os << id << ",";
    return util::sha256_hex(os.str());
}

std::string to_string(TaxonomyLabel label) {
    switch (label) {
        case TaxonomyLabel::unsolved_syntactic_error: return "unsolved-syntactic-error";
        case TaxonomyLabel::unsolved_bad_action: return "unsolved-bad-action";
        case TaxonomyLabel::unsolved_good_action: return "unsolved-good-action";
        case TaxonomyLabel::solved_matches_gold: return "solved-matches-gold";
        case TaxonomyLabel::solved_needs_review: return "solved-needs-review";
    }
    return "?";
}

double Aggregates::action_accuracy() const {
    return action_total == 0 ? 0.0
                             : static_cast<double>(action_exact) / static_cast<double>(action_total);
}
double Aggregates::param_accuracy() const {
    return action_total == 0 ? 0.0
                             : static_cast<double>(param_exact) / static_cast<double>(action_total);
}
double Aggregates::precondition_accuracy() const {
    return action_total == 0
               ? 0.0
               : static_cast<double>(precondition_exact) / static_cast<double>(action_total);
}
double Aggregates::effect_accuracy() const {
    return action_total == 0 ? 0.0
                             : static_cast<double>(effect_exact) / static_cast<double>(action_total);
}
double Aggregates::solve_rate() const {
    return pf_total == 0 ? 0.0 : static_cast<double>(pf_solved) / static_cast<double>(pf_total);
}

Aggregates compute_aggregates(const std::vector<ExampleResult>& examples) {
    Aggregates agg;
    for (const ExampleResult& ex : examples) {
        agg.action_total += ex.intrinsic.gold_count();
        agg.action_exact += ex.intrinsic.exact_count();
        agg.param_exact += ex.intrinsic.component_count(0);
        agg.precondition_exact += ex.intrinsic.component_count(1);
        agg.effect_exact += ex.intrinsic.component_count(2);
        for (const ProblemResult& p : ex.problems) {
            agg.pf_total += 1;
            if (p.outcome.solved()) agg.pf_solved += 1;
            agg.label_counts[static_cast<int>(p.label)] += 1;
        }
    }
    return agg;
}

TaxonomyLabel classify(const prompts::AssembledPrediction& prediction,
                       const equiv::IntrinsicReport& intrinsic,
                       const planner::SolveOutcome& outcome, const Plan& gold_plan,
                       Ident* bad_action) {
    if (outcome.solved()) {
        return outcome.plan == gold_plan ? TaxonomyLabel::solved_matches_gold
                                         : TaxonomyLabel::solved_needs_review;
    }
    if (outcome.kind == planner::SolveOutcome::Kind::solver_error ||
        prediction.has_syntax_errors()) {
        return TaxonomyLabel::unsolved_syntactic_error;
    }
    // First problematic action in gold-plan order: the earliest plan step
    // whose action was missing or predicted at nonzero distance.
    std::map<Ident, const equiv::ActionScore*> by_name;
    for (const equiv::ActionScore& score : intrinsic.actions) by_name.emplace(score.name, &score);
    for (const PlanStep& step : gold_plan.steps) {
        auto it = by_name.find(step.action);
        if (it == by_name.end()) continue;  // plan step outside the header; nothing to blame
        if (!it->second->exact_match()) {
            if (bad_action != nullptr) *bad_action = step.action;
            return TaxonomyLabel::unsolved_bad_action;
        }
    }
    return TaxonomyLabel::unsolved_good_action;
}

std::vector<planner::SolveOutcome> run_solves(const std::vector<SolveTask>& tasks, int jobs) {
    std::vector<planner::SolveOutcome> out(tasks.size());
    auto solve_one = [&](std::size_t i) {
        out[i] = planner::bfs_solve(*tasks[i].domain, *tasks[i].problem, tasks[i].options);
    };
#ifdef _OPENMP
    if (jobs > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(tasks.size()); ++i) {
            solve_one(static_cast<std::size_t>(i));
        }
        return out;
    }
#else
    (void)jobs;
#endif
    for (std::size_t i = 0; i < tasks.size(); ++i) solve_one(i);
    return out;
}

EvalReport run(const RunConfig& config) {
    dataset::Corpus corpus = dataset::load_corpus(config.corpus_root, config.example_filter);
    if (!corpus.errors.empty()) {
        std::ostringstream os;
        os << "corpus failed to load:";
        for (const std::string& err : corpus.errors) os << "\n  " << err;
        throw std::runtime_error(os.str());
    }

    prompts::PromptTemplates templates;
    llm::CompletionCache cache(config.cache_dir.empty() ? fs::path("cache") : config.cache_dir);
    if (!config.oracle) {
        templates = prompts::PromptTemplates::load(config.templates_dir);
    }

    EvalReport report;
    report.digest = config_digest(config);
    report.model_label = config.oracle ? "gold-oracle" : config.model.model_id;
    report.style = prompts::to_string(config.style.kind);
    report.condition = prompts::to_string(config.condition);
    report.shots = config.style.shots;
    report.oracle = config.oracle;
    report.timeout_ms = config.solver_timeout.count();

    for (const dataset::ExampleRecord& example : corpus.examples) {
        ExampleResult result;
        result.id = example.id;

        if (config.oracle) {
            SpliceResult spliced = splice_actions(example.domain.header, example.domain.actions);
            result.prediction.domain = std::move(spliced.domain);
            result.prediction.missing = std::move(spliced.missing);
            result.prediction.extra = std::move(spliced.extra);
            for (Diagnostic& d : spliced.warnings) {
                result.prediction.diagnostics.push_back(std::move(d));
            }
        } else {
            prompts::PromptRequest request;
            request.example_id = example.id;
            request.style = config.style;
            request.condition = config.condition;
            request.header = example.domain.header;
            request.goal_phrase = example.title;
            std::string prompt = prompts::build_prompt(request, example, templates);
            llm::CachedCompletion completion =
                llm::complete(config.model, prompt, config.mode, cache);
            result.cache_key = completion.cache_key;
            result.prediction = prompts::assemble_prediction(example.domain.header,
                                                             completion.completion);
        }
        result.intrinsic = equiv::intrinsic_report(result.prediction.domain, example.domain,
                                                   /*run_exact_check=*/true);
        report.examples.push_back(std::move(result));
    }

    // Fan the solver out over every (example, problem) pair.
    std::vector<SolveTask> tasks;
    std::vector<std::pair<std::size_t, std::size_t>> task_owner;  // example idx, problem idx
    planner::SolveOptions solve_opts;
    solve_opts.timeout = config.solver_timeout;
    solve_opts.node_cap = config.node_cap;
    for (std::size_t e = 0; e < corpus.examples.size(); ++e) {
        const dataset::ExampleRecord& example = corpus.examples[e];
        for (std::size_t p = 0; p < example.problems.size(); ++p) {
            tasks.push_back(
                {&report.examples[e].prediction.domain, &example.problems[p].problem, solve_opts});
            task_owner.emplace_back(e, p);
        }
    }
    std::vector<planner::SolveOutcome> outcomes = run_solves(tasks, config.jobs);

    for (std::size_t t = 0; t < tasks.size(); ++t) {
        auto [e, p] = task_owner[t];
        const dataset::ExampleRecord& example = corpus.examples[e];
        ExampleResult& result = report.examples[e];
        ProblemResult pr;
        pr.problem = example.problems[p].stem;
        pr.outcome = std::move(outcomes[t]);
        pr.gold_plan = example.problems[p].plan;
        pr.label = classify(result.prediction, result.intrinsic, pr.outcome, pr.gold_plan,
                            &pr.bad_action);
        result.problems.push_back(std::move(pr));
    }

    report.aggregates = compute_aggregates(report.examples);
    return report;
}

std::vector<fs::path> emit_report(const EvalReport& report, const fs::path& out_dir,
                                  const EmitOptions& opts) {
    std::vector<fs::path> written;
    fs::create_directories(out_dir);
    if (opts.json) {
        fs::path p = out_dir / "report.json";
        util::write_file_atomic(p, report_to_json(report).dump(2) + "\n");
        written.push_back(p);
    }
    if (opts.tables) {
        fs::path p = out_dir / "tables.txt";
        util::write_file_atomic(p, render_tables(report));
        written.push_back(p);
    }
    if (opts.review_queue) {
        fs::path p = out_dir / "review_queue.txt";
        util::write_file_atomic(p, render_review_queue(report));
        written.push_back(p);
    }
    if (opts.timings) {
        fs::path p = out_dir / "timings.json";
        util::write_file_atomic(p, timings_to_json(report).dump(2) + "\n");
        written.push_back(p);
    }
    if (opts.svg) {
        fs::path p = out_dir / "solve_rates.svg";
        util::write_file_atomic(p, render_solve_svg(report));
        written.push_back(p);
    }
    return written;
}

}  // namespace pddleval::harness
