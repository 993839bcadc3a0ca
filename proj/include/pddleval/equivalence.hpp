// Action-pair distance: greedy type-based parameter matching plus
// index-consistent condition matching, and the per-domain accuracy rollup
// built on top of it.
//
// Matching is deliberately greedy and order-sensitive (first fit wins); the
// exhaustive variant below exists to detect cases where that ordering costs
// a match, and is what the tests compare against.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pddleval/ast.hpp"

namespace pddleval::equiv {

struct ComponentDistance {
    int matched = 0;  // n
    int size1 = 0;
    int size2 = 0;

    int distance() const { return std::abs(size1 - matched) + std::abs(size2 - matched); }
    bool zero() const { return distance() == 0; }
    auto operator<=>(const ComponentDistance&) const = default;
};

// Evolving correspondence between the two actions' terms. p1/p2 hold the
// greedily type-matched parameters; index assignments are made lazily while
// matching conditions and persist across the precondition and effect of one
// action pair.
struct ParamCorrespondence {
    std::map<Ident, Ident> p1, p2;  // parameter name -> declared type
    std::vector<std::pair<Ident, Ident>> pairs;  // greedy (param1, param2) type pairs
    std::map<Ident, int> index1, index2;  // parameter name -> shared entity index
    int next_index = 0;
};

// For each parameter of `a1` in order, consumes the first remaining `a2`
// parameter of equal type. Distance is |#params1 - n| + |#params2 - n|.
std::pair<ComponentDistance, ParamCorrespondence> param_distance(const ActionDef& a1,
                                                                 const ActionDef& a2);

// Greedy first-fit literal matching under `corr`. A candidate pair matches
// only when predicate, polarity and arity agree and every argument pair is
// consistent with the correspondence; successful matches commit their index
// assignments into `corr`.
ComponentDistance condition_distance(const Condition& c1, const Condition& c2,
                                     ParamCorrespondence& corr);

struct ActionDistance {
    ComponentDistance params;
    ComponentDistance precondition;
    ComponentDistance effect;

    int total() const { return params.distance() + precondition.distance() + effect.distance(); }
    bool zero() const { return total() == 0; }
    auto operator<=>(const ActionDistance&) const = default;
};

// Parameters first, then preconditions, then effects, sharing one
// correspondence throughout.
ActionDistance action_distance(const ActionDef& predicted, const ActionDef& gold);

// Exhaustive variant: searches over candidate literal assignments instead of
// taking the first fit, maximizing matches (preconditions + effects) under a
// single consistent correspondence. Returns nullopt when a condition exceeds
// `max_literals`.
std::optional<ActionDistance> exact_action_distance(const ActionDef& predicted,
                                                    const ActionDef& gold, int max_literals = 10);

struct ActionScore {
    Ident name;
    bool present = false;  // a prediction with this name existed
    std::optional<ActionDistance> distance;
    bool greedy_exact_disagree = false;  // exhaustive matcher found a closer assignment

    bool exact_match() const { return present && distance && distance->zero(); }
    bool component_match(int which) const;  // 0 params, 1 precondition, 2 effect
};

struct IntrinsicReport {
    std::vector<ActionScore> actions;  // gold header order

    std::size_t gold_count() const { return actions.size(); }
    std::size_t exact_count() const;
    std::size_t component_count(int which) const;
    // Fractions over all gold actions; a missing prediction scores zero
    // everywhere.
    double action_accuracy() const;
    double param_accuracy() const { return component_accuracy(0); }
    double precondition_accuracy() const { return component_accuracy(1); }
    double effect_accuracy() const { return component_accuracy(2); }
    double component_accuracy(int which) const;
};

IntrinsicReport intrinsic_report(const DomainFile& predicted, const DomainFile& gold,
                                 bool run_exact_check = false);

}  // namespace pddleval::equiv
