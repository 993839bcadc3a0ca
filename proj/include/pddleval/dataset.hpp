// Corpus loading. An example directory holds:
//
//   <id>/
//     text.txt          numbered step paragraphs, separated by blank lines
//     domain.pddl       gold domain
//     problems/p*.pddl  gold problems
//     plans/p*.plan     gold plan per problem (matched by stem)
//     summaries.tsv     optional: action <TAB> one-line summary
//     mapping.tsv       optional: action <TAB> comma-separated step numbers
//
// and the corpus root carries a `manifest` with one example id per line.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pddleval/ast.hpp"
#include "pddleval/diagnostics.hpp"
#include "pddleval/solver.hpp"

namespace pddleval::dataset {

class DatasetError : public std::runtime_error {
public:
    enum class Kind { missing_file, parse_failure, dangling_reference, bad_manifest };

    DatasetError(Kind kind, const std::filesystem::path& path, const std::string& detail);
    Kind kind() const { return kind_; }
    const std::filesystem::path& path() const { return path_; }

private:
    Kind kind_;
    std::filesystem::path path_;
};

struct ProblemEntry {
    std::string stem;  // "p1"
    ProblemFile problem;
    Plan plan;
};

struct ExampleRecord {
    std::string id;
    std::string title;  // id with underscores spaced; used as the goal phrase
    std::vector<std::string> steps;  // paragraph text without the leading "N."
    DomainFile domain;
    std::vector<ProblemEntry> problems;
    std::map<Ident, std::string> summaries;
    std::map<Ident, std::vector<int>> step_mapping;  // 1-based step numbers
    std::vector<Diagnostic> warnings;

    bool has_summaries() const;
    bool has_mapping() const;
};

ExampleRecord load_example(const std::filesystem::path& dir);

struct CorpusStats {
    std::size_t examples = 0;
    std::size_t problems = 0;
    std::size_t total_actions = 0;
    std::size_t total_plan_steps = 0;

    bool defined() const { return examples > 0; }
    double mean_actions_per_domain() const;
    double mean_plan_length() const;
};

struct Corpus {
    std::vector<ExampleRecord> examples;
    CorpusStats stats;
    std::vector<std::string> errors;  // per-example failures; loading is best-effort
};

// Loads every manifest id (or the `filter` subset). Per-example failures are
// collected in `errors`; only a missing/unreadable manifest throws.
Corpus load_corpus(const std::filesystem::path& root,
                   const std::vector<std::string>& filter = {});

struct GoldCheckItem {
    std::string problem;
    bool plan_valid = false;
    planner::SolveOutcome::Kind solve = planner::SolveOutcome::Kind::solver_error;
    std::string detail;
};

struct GoldCheck {
    std::vector<GoldCheckItem> items;
    std::vector<std::string> warnings;

    bool all_ok() const;
};

// Sanity gate: every gold plan validates and every problem is solved by the
// gold domain within the budget.
GoldCheck check_gold(const ExampleRecord& example, const planner::SolveOptions& opts = {});

}  // namespace pddleval::dataset
