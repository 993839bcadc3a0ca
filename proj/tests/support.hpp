// Shared test helpers: fixture paths, corpus shortcuts, and the independent
// brute-force planner used as an oracle for the BFS solver.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pddleval/ast.hpp"
#include "pddleval/parser.hpp"
#include "pddleval/util.hpp"

namespace testsupport {

inline std::filesystem::path source_dir() { return std::filesystem::path(PDDLEVAL_SOURCE_DIR); }
inline std::filesystem::path sample_corpus() { return source_dir() / "data" / "sample_corpus"; }
inline std::filesystem::path jungle_dir() { return sample_corpus() / "survive_in_the_jungle"; }
inline std::filesystem::path fixtures_dir() { return source_dir() / "tests" / "fixtures"; }
inline std::filesystem::path templates_dir() { return source_dir() / "assets" / "prompts"; }

inline std::string read_fixture(const std::string& name) {
    return pddleval::util::read_file(fixtures_dir() / name);
}

inline pddleval::DomainFile jungle_domain() {
    return pddleval::parse_domain(pddleval::util::read_file(jungle_dir() / "domain.pddl"));
}

inline pddleval::ProblemFile jungle_problem() {
    return pddleval::parse_problem(
        pddleval::util::read_file(jungle_dir() / "problems" / "p1.pddl"));
}

inline pddleval::Plan jungle_plan() {
    return pddleval::parse_plan(pddleval::util::read_file(jungle_dir() / "plans" / "p1.plan"));
}

// ---------------------------------------------------------------------------
// Brute-force planning oracle.
//
// Deliberately independent of the production planner: strings instead of
// interned atoms, naive applicability checks, no pruning, layer-by-layer
// search over an explicitly materialized state graph. Only usable on tiny
// tasks.

struct BruteResult {
    bool solved = false;
    std::size_t plan_length = 0;
    std::size_t states_seen = 0;
    bool exhausted_budget = false;
};

using BruteState = std::set<std::string>;

inline std::string brute_atom(const pddleval::Literal& lit,
                              const std::map<std::string, std::string>& binding) {
    std::string out = lit.predicate.text;
    for (const pddleval::Term& t : lit.args) {
        out += " ";
        out += t.is_variable() ? binding.at(t.name.text) : t.name.text;
    }
    return out;
}

inline BruteResult brute_force_solve(const pddleval::DomainFile& df,
                                     const pddleval::ProblemFile& pf,
                                     std::size_t max_states = 200000) {
    BruteResult result;

    // Object universe: declared objects plus any body/goal/init constants.
    std::map<std::string, std::string> object_types;
    for (const auto& obj : pf.objects) object_types[obj.name.text] = obj.type.text;
    auto note_constant = [&](const pddleval::Term& t) {
        if (t.is_variable() || object_types.count(t.name.text)) return;
        object_types[t.name.text] =
            df.header.types.contains(t.name) ? t.name.text : "object";
    };
    for (const auto& action : df.actions) {
        for (const auto& lit : action.precondition.literals) {
            for (const auto& t : lit.args) note_constant(t);
        }
        for (const auto& lit : action.effect.literals) {
            for (const auto& t : lit.args) note_constant(t);
        }
    }
    for (const auto& lit : pf.goal.literals) {
        for (const auto& t : lit.args) note_constant(t);
    }
    for (const auto& lit : pf.init) {
        for (const auto& t : lit.args) note_constant(t);
    }

    auto is_subtype = [&](const std::string& type, const std::string& ancestor) {
        if (ancestor == "object") return true;
        std::string cur = type;
        for (int guard = 0; guard < 1000; ++guard) {
            if (cur == ancestor) return true;
            const pddleval::Ident* p = df.header.types.parent_of(pddleval::Ident::make(cur));
            if (p == nullptr) return false;
            cur = p->text;
        }
        return false;
    };

    struct BruteAction {
        std::vector<std::string> pre_pos, pre_neg, add, del;
    };
    std::vector<BruteAction> ground_actions;
    for (const auto& action : df.actions) {
        std::vector<std::vector<std::string>> candidates;
        bool impossible = false;
        for (const auto& param : action.params) {
            std::vector<std::string> objs;
            for (const auto& [name, type] : object_types) {
                if (is_subtype(type, param.type.text)) objs.push_back(name);
            }
            if (objs.empty()) impossible = true;
            candidates.push_back(std::move(objs));
        }
        if (impossible) continue;

        std::vector<std::size_t> idx(action.params.size(), 0);
        while (true) {
            std::map<std::string, std::string> binding;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                binding[action.params[i].name.text] = candidates[i][idx[i]];
            }
            BruteAction ga;
            bool skip = false;
            for (const auto& lit : action.precondition.literals) {
                for (const auto& t : lit.args) {
                    if (t.is_variable() && !binding.count(t.name.text)) skip = true;
                }
                if (skip) break;
                (lit.positive ? ga.pre_pos : ga.pre_neg).push_back(brute_atom(lit, binding));
            }
            for (const auto& lit : action.effect.literals) {
                for (const auto& t : lit.args) {
                    if (t.is_variable() && !binding.count(t.name.text)) skip = true;
                }
                if (skip) break;
                (lit.positive ? ga.add : ga.del).push_back(brute_atom(lit, binding));
            }
            if (!skip) ground_actions.push_back(std::move(ga));

            std::size_t k = idx.size();
            bool done = idx.empty();
            while (k > 0) {
                --k;
                if (++idx[k] < candidates[k].size()) break;
                idx[k] = 0;
                if (k == 0) done = true;
            }
            if (done) break;
        }
    }

    BruteState init;
    for (const auto& lit : pf.init) init.insert(brute_atom(lit, {}));

    auto satisfies_goal = [&](const BruteState& s) {
        for (const auto& lit : pf.goal.literals) {
            bool holds = s.count(brute_atom(lit, {})) > 0;
            if (holds != lit.positive) return false;
        }
        return true;
    };
    auto applicable = [](const BruteState& s, const BruteAction& a) {
        for (const auto& atom : a.pre_pos) {
            if (!s.count(atom)) return false;
        }
        for (const auto& atom : a.pre_neg) {
            if (s.count(atom)) return false;
        }
        return true;
    };

    std::set<BruteState> visited{init};
    std::vector<BruteState> layer{init};
    std::size_t depth = 0;
    if (satisfies_goal(init)) {
        result.solved = true;
        result.states_seen = 1;
        return result;
    }
    while (!layer.empty()) {
        std::vector<BruteState> next_layer;
        for (const BruteState& s : layer) {
            for (const BruteAction& a : ground_actions) {
                if (!applicable(s, a)) continue;
                BruteState next = s;
                for (const auto& atom : a.del) next.erase(atom);
                for (const auto& atom : a.add) next.insert(atom);
                if (!visited.insert(next).second) continue;
                if (visited.size() > max_states) {
                    result.exhausted_budget = true;
                    result.states_seen = visited.size();
                    return result;
                }
                if (satisfies_goal(next)) {
                    result.solved = true;
                    result.plan_length = depth + 1;
                    result.states_seen = visited.size();
                    return result;
                }
                next_layer.push_back(std::move(next));
            }
        }
        layer = std::move(next_layer);
        ++depth;
    }
    result.states_seen = visited.size();
    return result;
}

// ---------------------------------------------------------------------------
// Random task generator for the planner oracle suite.

struct RandomTask {
    pddleval::DomainFile domain;
    pddleval::ProblemFile problem;
};

inline RandomTask random_task(std::mt19937& rng) {
    using namespace pddleval;
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    RandomTask task;
    task.domain.header.name = Ident::make("rand");
    task.domain.header.requirements = {Ident::make("strips")};

    const int num_objects = pick(1, 3);
    std::vector<Ident> objects;
    for (int i = 0; i < num_objects; ++i) objects.push_back(Ident::make("o" + std::to_string(i)));

    const int num_predicates = pick(1, 3);
    std::vector<PredicateDecl> preds;
    for (int i = 0; i < num_predicates; ++i) {
        PredicateDecl decl;
        decl.name = Ident::make("p" + std::to_string(i));
        const int arity = pick(0, 2);
        for (int a = 0; a < arity; ++a) {
            decl.params.push_back({Ident::make("v" + std::to_string(a)),
                                   TypeHierarchy::object_type()});
        }
        preds.push_back(decl);
        task.domain.header.predicates.push_back(std::move(decl));
    }

    const int num_params_pool = 2;
    auto random_literal = [&](const std::vector<TypedVar>& params, bool allow_negative) {
        const PredicateDecl& decl = preds[static_cast<std::size_t>(pick(0, num_predicates - 1))];
        Literal lit;
        lit.positive = allow_negative ? pick(0, 3) > 0 : true;
        lit.predicate = decl.name;
        for (std::size_t a = 0; a < decl.params.size(); ++a) {
            if (!params.empty() && pick(0, 1) == 0) {
                lit.args.push_back(Term::variable(
                    params[static_cast<std::size_t>(pick(0, static_cast<int>(params.size()) - 1))]
                        .name));
            } else {
                lit.args.push_back(Term::constant(
                    objects[static_cast<std::size_t>(pick(0, num_objects - 1))]));
            }
        }
        return lit;
    };

    const int num_actions = pick(1, 4);
    for (int i = 0; i < num_actions; ++i) {
        ActionDef action;
        action.name = Ident::make("a" + std::to_string(i));
        const int nparams = pick(0, num_params_pool);
        for (int p = 0; p < nparams; ++p) {
            action.params.push_back({Ident::make("x" + std::to_string(p)),
                                     TypeHierarchy::object_type()});
        }
        const int npre = pick(0, 2);
        for (int p = 0; p < npre; ++p) {
            action.precondition.literals.push_back(random_literal(action.params, true));
        }
        const int neff = pick(1, 2);
        for (int p = 0; p < neff; ++p) {
            action.effect.literals.push_back(random_literal(action.params, true));
        }
        task.domain.header.action_names.push_back(action.name);
        task.domain.actions.push_back(std::move(action));
    }

    task.problem.name = Ident::make("randp");
    task.problem.domain_name = task.domain.header.name;
    for (const Ident& obj : objects) {
        task.problem.objects.push_back({obj, TypeHierarchy::object_type()});
    }
    const int ninit = pick(0, 4);
    for (int i = 0; i < ninit; ++i) {
        Literal lit = random_literal({}, false);
        lit.positive = true;
        task.problem.init.push_back(std::move(lit));
    }
    const int ngoal = pick(1, 2);
    for (int i = 0; i < ngoal; ++i) {
        task.problem.goal.literals.push_back(random_literal({}, true));
    }
    return task;
}

}  // namespace testsupport
