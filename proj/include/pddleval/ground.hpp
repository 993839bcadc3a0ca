// Grounding: instantiating action schemas over a problem's objects. Atoms
// are interned to dense ids so states are small sorted id vectors.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pddleval/ast.hpp"
#include "pddleval/diagnostics.hpp"

namespace pddleval::planner {

struct GroundAtom {
    Ident predicate;
    std::vector<Ident> args;

    bool operator==(const GroundAtom&) const = default;
    auto operator<=>(const GroundAtom&) const = default;
    std::string to_string() const;
};

struct GroundAtomHash {
    std::size_t operator()(const GroundAtom& atom) const noexcept;
};

class AtomTable {
public:
    std::uint32_t intern(const GroundAtom& atom);
    const GroundAtom& lookup(std::uint32_t id) const { return atoms_[id]; }
    std::size_t size() const { return atoms_.size(); }

private:
    std::unordered_map<GroundAtom, std::uint32_t, GroundAtomHash> ids_;
    std::vector<GroundAtom> atoms_;
};

// Sorted unique atom ids; closed world, absent means false.
using State = std::vector<std::uint32_t>;

bool state_contains(const State& state, std::uint32_t atom);
bool subset_of(const State& subset, const State& state);
bool intersects(const State& a, const State& b);
void sort_unique(State& state);

struct GroundActionInstance {
    Ident action;
    std::vector<Ident> binding;  // constants in parameter order
    State pre_pos;
    State pre_neg;
    State add;
    State del;

    PlanStep to_step() const { return PlanStep{action, binding}; }
};

class UnresolvableConstant : public std::runtime_error {
public:
    explicit UnresolvableConstant(const Ident& name)
        : std::runtime_error("constant '" + name.text + "' matches no object"), name_(name) {}
    const Ident& name() const { return name_; }

private:
    Ident name_;
};

struct GroundOptions {
    // Body constants absent from :objects are declared on the fly, typed by
    // the same-named type when one exists (the corpus relies on this for
    // constants like `water` and `fire`). Disabling makes such constants a
    // hard UnresolvableConstant error.
    bool auto_declare_constants = true;
};

struct GroundTask {
    AtomTable atoms;
    std::vector<TypedVar> objects;  // problem objects plus auto-declared constants
    std::vector<GroundActionInstance> instances;  // action declaration order, then
                                                  // lexicographic binding order
    State init;
    State goal_pos;
    State goal_neg;
    std::vector<Diagnostic> diagnostics;
};

// Enumerates every type-respecting binding of every action. Throws
// UnresolvableConstant only when auto-declaration is off; everything else is
// reported through task.diagnostics.
GroundTask ground(const DomainFile& df, const ProblemFile& pf, const GroundOptions& opts = {});

}  // namespace pddleval::planner
