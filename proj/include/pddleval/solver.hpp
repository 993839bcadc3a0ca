// Breadth-first planner and plan validator. One solve is single-threaded
// and deterministic; independent solves are safe to run concurrently.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pddleval/ast.hpp"
#include "pddleval/diagnostics.hpp"
#include "pddleval/ground.hpp"

namespace pddleval::planner {

struct SolveOptions {
    // Wall-clock budget covering grounding and search; nullopt disables it.
    std::optional<std::chrono::milliseconds> timeout = std::chrono::milliseconds(30000);
    // Expansion cap guarding memory; exceeding it reports a timeout with a
    // distinguishing note.
    std::optional<std::uint64_t> node_cap = 5'000'000;
    GroundOptions ground;
};

struct SolveOutcome {
    enum class Kind { solved, no_plan, timeout, solver_error };

    Kind kind = Kind::solver_error;
    Plan plan;                     // for solved
    std::uint64_t nodes_expanded = 0;
    std::chrono::milliseconds elapsed{0};
    std::string note;              // node-cap vs wall-clock, relaxation shortcut, error detail
    std::vector<Diagnostic> diagnostics;

    bool solved() const { return kind == Kind::solved; }
    static std::string kind_name(Kind kind);
};

// Shortest plan by step count when one exists within budget. Successors are
// generated in (action declaration, lexicographic binding) order with a FIFO
// queue, so the returned plan is deterministic. Grounding or validation
// failures of the domain surface as Kind::solver_error.
SolveOutcome bfs_solve(const DomainFile& df, const ProblemFile& pf, const SolveOptions& opts = {});

bool applicable(const State& state, const GroundActionInstance& inst);

class NotApplicable : public std::runtime_error {
public:
    NotApplicable(std::string what, std::vector<GroundAtom> missing_pos,
                  std::vector<GroundAtom> violated_neg);
    const std::vector<GroundAtom>& missing_pos() const { return missing_pos_; }
    const std::vector<GroundAtom>& violated_neg() const { return violated_neg_; }

private:
    std::vector<GroundAtom> missing_pos_;
    std::vector<GroundAtom> violated_neg_;
};

// (state \ deletes) ∪ adds; throws NotApplicable when preconditions fail.
State apply(const State& state, const GroundActionInstance& inst, const AtomTable& atoms);

struct StepResult {
    PlanStep step;
    bool applicable = false;
    std::string error;  // unknown action, arity mismatch, or unmet preconditions
    std::vector<GroundAtom> missing_pos;
    std::vector<GroundAtom> violated_neg;
};

struct PlanTrace {
    std::vector<StepResult> steps;
    bool goal_satisfied = false;
    std::vector<Literal> unmet_goal;
    std::vector<Diagnostic> diagnostics;

    bool valid() const;
};

// Simulates the plan from the initial state and checks the goal at the end.
// Simulation stops at the first inapplicable step.
PlanTrace validate_plan(const DomainFile& df, const ProblemFile& pf, const Plan& plan,
                        const GroundOptions& opts = {});

}  // namespace pddleval::planner
