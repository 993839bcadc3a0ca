// End-to-end evaluation: prompt -> completion -> reassembled domain ->
// intrinsic distances + per-problem solving -> taxonomy labels -> report.
//
// Replay runs are fully deterministic: the canonical report carries no
// wall-clock data (timings land in a separate, uncompared file), so two runs
// over the same cache produce byte-identical output.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pddleval/ast.hpp"
#include "pddleval/dataset.hpp"
#include "pddleval/equivalence.hpp"
#include "pddleval/llm.hpp"
#include "pddleval/prompts.hpp"
#include "pddleval/solver.hpp"

namespace pddleval::harness {

struct RunConfig {
    std::filesystem::path corpus_root;
    std::vector<std::string> example_filter;  // empty = whole manifest
    prompts::InstructionStyle style;
    prompts::TextCondition condition = prompts::TextCondition::none;
    llm::ModelConfig model;
    std::chrono::milliseconds solver_timeout{30000};
    std::optional<std::uint64_t> node_cap = 5'000'000;
    std::filesystem::path output_dir;
    std::filesystem::path cache_dir;
    std::filesystem::path templates_dir;
    llm::CompletionMode mode = llm::CompletionMode::replay_only;
    int jobs = 1;
    // Score the gold actions as if the model had produced them; skips the
    // client entirely.
    bool oracle = false;
};

// Digest over the portable parts of the config (no local paths), used as run
// provenance.
std::string config_digest(const RunConfig& config);

enum class TaxonomyLabel {
    unsolved_syntactic_error,
    unsolved_bad_action,
    unsolved_good_action,
    solved_matches_gold,
    solved_needs_review,
};

std::string to_string(TaxonomyLabel label);

struct ProblemResult {
    std::string problem;
    planner::SolveOutcome outcome;
    TaxonomyLabel label = TaxonomyLabel::unsolved_syntactic_error;
    Ident bad_action;  // first problematic action in gold-plan order, when labeled bad_action
    Plan gold_plan;
};

struct ExampleResult {
    std::string id;
    std::string cache_key;  // empty for oracle runs
    prompts::AssembledPrediction prediction;
    equiv::IntrinsicReport intrinsic;
    std::vector<ProblemResult> problems;
};

struct Aggregates {
    std::size_t action_total = 0;
    std::size_t action_exact = 0;
    std::size_t param_exact = 0;
    std::size_t precondition_exact = 0;
    std::size_t effect_exact = 0;
    std::size_t pf_total = 0;
    std::size_t pf_solved = 0;
    std::size_t label_counts[5] = {0, 0, 0, 0, 0};  // indexed by TaxonomyLabel

    bool defined() const { return action_total > 0 || pf_total > 0; }
    double action_accuracy() const;
    double param_accuracy() const;
    double precondition_accuracy() const;
    double effect_accuracy() const;
    double solve_rate() const;
};

Aggregates compute_aggregates(const std::vector<ExampleResult>& examples);

struct EvalReport {
    std::string digest;  // config digest
    std::string model_label;
    std::string style;
    std::string condition;
    int shots = 0;
    bool oracle = false;
    std::int64_t timeout_ms = 0;
    std::vector<ExampleResult> examples;
    Aggregates aggregates;
};

// One (prediction, problem) pair gets exactly one label:
//   solver_error or any unparseable block + unsolved  -> syntactic error
//   unsolved, some gold-plan action imperfect         -> bad action (first,
//                                                        in gold-plan order)
//   unsolved, all gold-plan actions exact             -> good action
//   solved with exactly the gold step sequence        -> matches gold
//   solved otherwise                                  -> needs review
TaxonomyLabel classify(const prompts::AssembledPrediction& prediction,
                       const equiv::IntrinsicReport& intrinsic,
                       const planner::SolveOutcome& outcome, const Plan& gold_plan,
                       Ident* bad_action);

struct SolveTask {
    const DomainFile* domain = nullptr;
    const ProblemFile* problem = nullptr;
    planner::SolveOptions options;
};

// Independent solves fanned out over `jobs` OpenMP threads; jobs <= 1 runs
// the serial reference loop. Results are positional, so the two paths are
// interchangeable.
std::vector<planner::SolveOutcome> run_solves(const std::vector<SolveTask>& tasks, int jobs);

// Aborts (throws) only on configuration/corpus errors; per-item failures are
// recorded in the report.
EvalReport run(const RunConfig& config);

struct EmitOptions {
    bool json = true;
    bool tables = true;
    bool review_queue = true;
    bool timings = true;
    bool svg = false;
};

nlohmann::ordered_json report_to_json(const EvalReport& report);
std::string render_tables(const EvalReport& report);
std::string render_review_queue(const EvalReport& report);
std::string render_solve_svg(const EvalReport& report);
nlohmann::ordered_json timings_to_json(const EvalReport& report);

// Writes report.json, tables.txt, review_queue.txt, timings.json and
// optionally solve_rates.svg; returns the paths written. Everything except
// timings.json is deterministic for a given cache and config.
std::vector<std::filesystem::path> emit_report(const EvalReport& report,
                                               const std::filesystem::path& out_dir,
                                               const EmitOptions& opts = {});

}  // namespace pddleval::harness
