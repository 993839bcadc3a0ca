#include "pddleval/solver.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace pddleval::planner {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    std::optional<Clock::time_point> at;
    Clock::time_point start = Clock::now();

    explicit Deadline(const std::optional<std::chrono::milliseconds>& budget) {
        if (budget) at = start + *budget;
    }
    bool expired() const { return at && Clock::now() >= *at; }
    std::chrono::milliseconds elapsed() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    }
};

struct StateHash {
    std::size_t operator()(const State& s) const noexcept {
        std::size_t h = s.size();
        for (std::uint32_t id : s) {
            h ^= id + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Delete-relaxation fixpoint: atoms reachable when deletes and negative
// preconditions are ignored. Instances never applicable in the relaxation
// cannot fire in real search either, so they are pruned up front.
struct Relaxation {
    std::vector<char> atom_reachable;
    std::vector<char> instance_usable;
};

Relaxation relax(const GroundTask& task, const Deadline& deadline) {
    Relaxation r;
    r.atom_reachable.assign(task.atoms.size(), 0);
    r.instance_usable.assign(task.instances.size(), 0);
    for (std::uint32_t id : task.init) r.atom_reachable[id] = 1;

    bool changed = true;
    while (changed && !deadline.expired()) {
        changed = false;
        for (std::size_t i = 0; i < task.instances.size(); ++i) {
            if (r.instance_usable[i]) continue;
            const GroundActionInstance& inst = task.instances[i];
            bool ok = std::all_of(inst.pre_pos.begin(), inst.pre_pos.end(),
                                  [&](std::uint32_t id) { return r.atom_reachable[id] != 0; });
            if (!ok) continue;
            r.instance_usable[i] = 1;
            for (std::uint32_t id : inst.add) {
                if (!r.atom_reachable[id]) {
                    r.atom_reachable[id] = 1;
                    changed = true;
                }
            }
        }
    }
    return r;
}

bool goal_satisfied(const State& state, const GroundTask& task) {
    return subset_of(task.goal_pos, state) && !intersects(task.goal_neg, state);
}

State successor(const State& state, const GroundActionInstance& inst) {
    State next;
    next.reserve(state.size() + inst.add.size());
    std::set_difference(state.begin(), state.end(), inst.del.begin(), inst.del.end(),
                        std::back_inserter(next));
    State merged;
    merged.reserve(next.size() + inst.add.size());
    std::set_union(next.begin(), next.end(), inst.add.begin(), inst.add.end(),
                   std::back_inserter(merged));
    return merged;
}

}  // namespace

std::string SolveOutcome::kind_name(Kind kind) {
    switch (kind) {
        case Kind::solved: return "solved";
        case Kind::no_plan: return "no_plan";
        case Kind::timeout: return "timeout";
        case Kind::solver_error: return "solver_error";
    }
    return "?";
}

bool applicable(const State& state, const GroundActionInstance& inst) {
    return subset_of(inst.pre_pos, state) && !intersects(inst.pre_neg, state);
}

NotApplicable::NotApplicable(std::string what, std::vector<GroundAtom> missing_pos,
                             std::vector<GroundAtom> violated_neg)
    : std::runtime_error(std::move(what)),
      missing_pos_(std::move(missing_pos)),
      violated_neg_(std::move(violated_neg)) {}

State apply(const State& state, const GroundActionInstance& inst, const AtomTable& atoms) {
    if (!applicable(state, inst)) {
        std::vector<GroundAtom> missing, violated;
        for (std::uint32_t id : inst.pre_pos) {
            if (!state_contains(state, id)) missing.push_back(atoms.lookup(id));
        }
        for (std::uint32_t id : inst.pre_neg) {
            if (state_contains(state, id)) violated.push_back(atoms.lookup(id));
        }
        std::ostringstream msg;
        msg << "action (" << inst.action.text;
        for (const Ident& b : inst.binding) msg << ' ' << b.text;
        msg << ") is not applicable";
        throw NotApplicable(msg.str(), std::move(missing), std::move(violated));
    }
    return successor(state, inst);
}

SolveOutcome bfs_solve(const DomainFile& df, const ProblemFile& pf, const SolveOptions& opts) {
    Deadline deadline(opts.timeout);
    SolveOutcome out;

    GroundTask task;
    try {
        task = ground(df, pf, opts.ground);
    } catch (const std::exception& err) {
        out.kind = SolveOutcome::Kind::solver_error;
        out.note = err.what();
        out.elapsed = deadline.elapsed();
        return out;
    }
    out.diagnostics = task.diagnostics;

    if (deadline.expired()) {
        out.kind = SolveOutcome::Kind::timeout;
        out.elapsed = deadline.elapsed();
        out.note = "wall clock exceeded during grounding";
        return out;
    }

    Relaxation relaxed = relax(task, deadline);
    if (deadline.expired()) {
        out.kind = SolveOutcome::Kind::timeout;
        out.elapsed = deadline.elapsed();
        out.note = "wall clock exceeded during reachability analysis";
        return out;
    }

    // A positive goal atom unreachable even in the relaxation makes the task
    // unsolvable; report no-plan without searching.
    for (std::uint32_t id : task.goal_pos) {
        if (!relaxed.atom_reachable[id]) {
            out.kind = SolveOutcome::Kind::no_plan;
            out.note = "goal atom " + task.atoms.lookup(id).to_string() +
                       " unreachable under delete relaxation";
            out.elapsed = deadline.elapsed();
            return out;
        }
    }

    std::vector<const GroundActionInstance*> usable;
    usable.reserve(task.instances.size());
    for (std::size_t i = 0; i < task.instances.size(); ++i) {
        if (relaxed.instance_usable[i]) usable.push_back(&task.instances[i]);
    }

    std::vector<State> arena;
    std::vector<std::int64_t> parent;
    std::vector<std::size_t> via;  // index into `usable`
    std::unordered_set<State, StateHash> visited;

    arena.push_back(task.init);
    parent.push_back(-1);
    via.push_back(0);
    visited.insert(task.init);

    auto extract_plan = [&](std::size_t idx) {
        Plan plan;
        while (parent[idx] >= 0) {
            plan.steps.push_back(usable[via[idx]]->to_step());
            idx = static_cast<std::size_t>(parent[idx]);
        }
        std::reverse(plan.steps.begin(), plan.steps.end());
        return plan;
    };

    if (goal_satisfied(task.init, task)) {
        out.kind = SolveOutcome::Kind::solved;
        out.plan = Plan{};
        out.elapsed = deadline.elapsed();
        return out;
    }

    std::deque<std::size_t> queue;
    queue.push_back(0);

    while (!queue.empty()) {
        if (deadline.expired()) {
            out.kind = SolveOutcome::Kind::timeout;
            out.note = "wall clock exceeded";
            out.elapsed = deadline.elapsed();
            return out;
        }
        if (opts.node_cap && out.nodes_expanded >= *opts.node_cap) {
            out.kind = SolveOutcome::Kind::timeout;
            out.note = "expansion cap of " + std::to_string(*opts.node_cap) + " nodes reached";
            out.elapsed = deadline.elapsed();
            return out;
        }
        std::size_t cur = queue.front();
        queue.pop_front();
        ++out.nodes_expanded;

        for (std::size_t a = 0; a < usable.size(); ++a) {
            const GroundActionInstance& inst = *usable[a];
            if (!applicable(arena[cur], inst)) continue;
            State next = successor(arena[cur], inst);
            if (!visited.insert(next).second) continue;
            arena.push_back(std::move(next));
            parent.push_back(static_cast<std::int64_t>(cur));
            via.push_back(a);
            std::size_t idx = arena.size() - 1;
            if (goal_satisfied(arena[idx], task)) {
                out.kind = SolveOutcome::Kind::solved;
                out.plan = extract_plan(idx);
                out.elapsed = deadline.elapsed();
                return out;
            }
            queue.push_back(idx);
        }
    }

    out.kind = SolveOutcome::Kind::no_plan;
    out.elapsed = deadline.elapsed();
    return out;
}

bool PlanTrace::valid() const {
    if (!goal_satisfied) return false;
    for (const StepResult& step : steps) {
        if (!step.applicable) return false;
    }
    return true;
}

PlanTrace validate_plan(const DomainFile& df, const ProblemFile& pf, const Plan& plan,
                        const GroundOptions& opts) {
    PlanTrace trace;

    GroundTask task;
    try {
        task = ground(df, pf, opts);
    } catch (const std::exception& err) {
        trace.diagnostics.push_back(make_diag(Severity::error, "grounding-failed", err.what()));
        return trace;
    }
    trace.diagnostics = task.diagnostics;

    // Index instances by (action, binding) for direct lookup.
    std::map<std::pair<Ident, std::vector<Ident>>, const GroundActionInstance*> by_step;
    for (const GroundActionInstance& inst : task.instances) {
        by_step.emplace(std::make_pair(inst.action, inst.binding), &inst);
    }

    State state = task.init;
    bool halted = false;
    for (const PlanStep& step : plan.steps) {
        StepResult result;
        result.step = step;
        if (halted) {
            result.error = "not evaluated: an earlier step failed";
            trace.steps.push_back(std::move(result));
            continue;
        }
        const ActionDef* action = df.find_action(step.action);
        if (action == nullptr) {
            result.error = "unknown action '" + step.action.text + "'";
            halted = true;
            trace.steps.push_back(std::move(result));
            continue;
        }
        if (action->params.size() != step.args.size()) {
            std::ostringstream msg;
            msg << "arity mismatch: '" << step.action.text << "' takes " << action->params.size()
                << " arguments, got " << step.args.size();
            result.error = msg.str();
            halted = true;
            trace.steps.push_back(std::move(result));
            continue;
        }
        auto it = by_step.find(std::make_pair(step.action, step.args));
        if (it == by_step.end()) {
            result.error = "no type-respecting grounding for this step";
            halted = true;
            trace.steps.push_back(std::move(result));
            continue;
        }
        try {
            state = apply(state, *it->second, task.atoms);
            result.applicable = true;
        } catch (const NotApplicable& err) {
            result.error = err.what();
            result.missing_pos = err.missing_pos();
            result.violated_neg = err.violated_neg();
            halted = true;
        }
        trace.steps.push_back(std::move(result));
    }

    if (!halted) {
        trace.goal_satisfied = subset_of(task.goal_pos, state) && !intersects(task.goal_neg, state);
        if (!trace.goal_satisfied) {
            for (const Literal& lit : pf.goal.literals) {
                GroundAtom atom;
                atom.predicate = lit.predicate;
                bool ground_lit = true;
                for (const Term& t : lit.args) {
                    if (t.is_variable()) {
                        ground_lit = false;
                        break;
                    }
                    atom.args.push_back(t.name);
                }
                if (!ground_lit) continue;
                // Re-intern to compare against the final state.
                std::uint32_t id = task.atoms.intern(atom);
                bool holds = state_contains(state, id);
                if (holds != lit.positive) trace.unmet_goal.push_back(lit);
            }
        }
    }
    return trace;
}

}  // namespace pddleval::planner
