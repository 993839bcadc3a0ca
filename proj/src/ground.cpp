#include "pddleval/ground.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pddleval::planner {

std::string GroundAtom::to_string() const {
    std::ostringstream os;
    os << '(' << predicate.text;
    for (const Ident& arg : args) os << ' ' << arg.text;
    os << ')';
    return os.str();
}

std::size_t GroundAtomHash::operator()(const GroundAtom& atom) const noexcept {
    std::size_t h = std::hash<std::string>{}(atom.predicate.text);
    for (const Ident& arg : atom.args) {
        h ^= std::hash<std::string>{}(arg.text) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

std::uint32_t AtomTable::intern(const GroundAtom& atom) {
    auto it = ids_.find(atom);
    if (it != ids_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(atoms_.size());
    ids_.emplace(atom, id);
    atoms_.push_back(atom);
    return id;
}

bool state_contains(const State& state, std::uint32_t atom) {
    return std::binary_search(state.begin(), state.end(), atom);
}

bool subset_of(const State& subset, const State& state) {
    return std::includes(state.begin(), state.end(), subset.begin(), subset.end());
}

bool intersects(const State& a, const State& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            return true;
        }
    }
    return false;
}

void sort_unique(State& state) {
    std::sort(state.begin(), state.end());
    state.erase(std::unique(state.begin(), state.end()), state.end());
}

namespace {

struct ObjectPool {
    std::vector<TypedVar> objects;
    std::map<Ident, Ident> type_of;  // object -> declared type

    bool contains(const Ident& name) const { return type_of.count(name) > 0; }

    void add(const Ident& name, const Ident& type) {
        if (type_of.emplace(name, type).second) objects.push_back({name, type});
    }
};

// Collects constants appearing in action bodies (and the goal), resolving
// each against the pool or auto-declaring it.
void resolve_constant(const Ident& name, const TypeHierarchy& types, ObjectPool& pool,
                      const GroundOptions& opts, std::vector<Diagnostic>& diags,
                      std::set<Ident>& reported) {
    if (pool.contains(name)) return;
    if (!opts.auto_declare_constants) throw UnresolvableConstant(name);
    Ident type = types.contains(name) ? name : TypeHierarchy::object_type();
    pool.add(name, type);
    if (reported.insert(name).second) {
        diags.push_back(make_diag(Severity::note, "auto-declared-constant",
                                  "constant '" + name.text + "' not in :objects; declared as type '" +
                                      type.text + "'"));
    }
}

GroundAtom instantiate(const Literal& lit, const std::map<Ident, Ident>& binding) {
    GroundAtom atom;
    atom.predicate = lit.predicate;
    atom.args.reserve(lit.args.size());
    for (const Term& term : lit.args) {
        if (term.is_variable()) {
            atom.args.push_back(binding.at(term.name));
        } else {
            atom.args.push_back(term.name);
        }
    }
    return atom;
}

}  // namespace

GroundTask ground(const DomainFile& df, const ProblemFile& pf, const GroundOptions& opts) {
    GroundTask task;
    ObjectPool pool;

    for (const TypedVar& obj : pf.objects) {
        pool.add(obj.name, obj.type);
        if (!df.header.types.contains(obj.type)) {
            task.diagnostics.push_back(make_diag(Severity::note, "unknown-object-type",
                                                 "object '" + obj.name.text + "' has type '" +
                                                     obj.type.text + "' not declared in the domain"));
        }
    }

    std::set<Ident> reported;
    auto resolve_in = [&](const Condition& cond) {
        for (const Literal& lit : cond.literals) {
            for (const Term& term : lit.args) {
                if (!term.is_variable()) {
                    resolve_constant(term.name, df.header.types, pool, opts, task.diagnostics,
                                     reported);
                }
            }
        }
    };
    for (const ActionDef& action : df.actions) {
        resolve_in(action.precondition);
        resolve_in(action.effect);
    }
    resolve_in(pf.goal);
    for (const Literal& lit : pf.init) {
        for (const Term& term : lit.args) {
            if (!term.is_variable()) {
                resolve_constant(term.name, df.header.types, pool, opts, task.diagnostics, reported);
            }
        }
    }
    task.objects = pool.objects;

    for (const Literal& lit : pf.init) {
        task.init.push_back(task.atoms.intern(instantiate(lit, {})));
    }
    sort_unique(task.init);

    for (const Literal& lit : pf.goal.literals) {
        for (const Term& term : lit.args) {
            if (term.is_variable()) {
                task.diagnostics.push_back(make_diag(Severity::warning, "nonground-goal",
                                                     "goal literal '" + lit.predicate.text +
                                                         "' contains a variable; ignored"));
            }
        }
        if (std::any_of(lit.args.begin(), lit.args.end(),
                        [](const Term& t) { return t.is_variable(); })) {
            continue;
        }
        std::uint32_t id = task.atoms.intern(instantiate(lit, {}));
        (lit.positive ? task.goal_pos : task.goal_neg).push_back(id);
    }
    sort_unique(task.goal_pos);
    sort_unique(task.goal_neg);

    for (const ActionDef& action : df.actions) {
        // Skip actions with unbound body variables; they cannot be grounded
        // meaningfully and validation has already flagged them.
        bool unbound = false;
        std::set<Ident> params;
        for (const TypedVar& p : action.params) params.insert(p.name);
        auto check_bound = [&](const Condition& cond) {
            for (const Literal& lit : cond.literals) {
                for (const Term& term : lit.args) {
                    if (term.is_variable() && !params.count(term.name)) unbound = true;
                }
            }
        };
        check_bound(action.precondition);
        check_bound(action.effect);
        if (unbound) {
            task.diagnostics.push_back(make_diag(Severity::warning, "unbound-variable",
                                                 "action '" + action.name.text +
                                                     "' uses variables outside :parameters; "
                                                     "no instances generated"));
            continue;
        }

        // Candidate objects per parameter, sorted by name so the odometer
        // emits bindings in lexicographic order.
        std::vector<std::vector<Ident>> candidates(action.params.size());
        bool empty_domain = false;
        for (std::size_t i = 0; i < action.params.size(); ++i) {
            for (const TypedVar& obj : pool.objects) {
                if (df.header.types.is_subtype(obj.type, action.params[i].type)) {
                    candidates[i].push_back(obj.name);
                }
            }
            std::sort(candidates[i].begin(), candidates[i].end());
            if (candidates[i].empty()) empty_domain = true;
        }
        if (empty_domain && !action.params.empty()) continue;

        std::vector<std::size_t> idx(action.params.size(), 0);
        while (true) {
            std::map<Ident, Ident> binding;
            GroundActionInstance inst;
            inst.action = action.name;
            for (std::size_t i = 0; i < action.params.size(); ++i) {
                binding.emplace(action.params[i].name, candidates[i][idx[i]]);
                inst.binding.push_back(candidates[i][idx[i]]);
            }
            for (const Literal& lit : action.precondition.literals) {
                std::uint32_t id = task.atoms.intern(instantiate(lit, binding));
                (lit.positive ? inst.pre_pos : inst.pre_neg).push_back(id);
            }
            for (const Literal& lit : action.effect.literals) {
                std::uint32_t id = task.atoms.intern(instantiate(lit, binding));
                (lit.positive ? inst.add : inst.del).push_back(id);
            }
            sort_unique(inst.pre_pos);
            sort_unique(inst.pre_neg);
            sort_unique(inst.add);
            sort_unique(inst.del);
            task.instances.push_back(std::move(inst));

            // Odometer: rightmost position advances fastest.
            std::size_t k = action.params.size();
            while (k > 0) {
                --k;
                if (++idx[k] < candidates[k].size()) break;
                idx[k] = 0;
                if (k == 0) goto next_action;
            }
            if (action.params.empty()) break;
        }
    next_action:;
    }
    return task;
}

}  // namespace pddleval::planner
