// Typed AST for the STRIPS+typing PDDL subset: domains, problems and plans.
// All values are immutable after parsing; structural equality is defined so
// round-trip tests can compare parse(print(x)) against x directly.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pddleval {

// Case-insensitive symbol; normalized to lowercase on construction.
struct Ident {
    std::string text;

    Ident() = default;
    static Ident make(std::string_view raw);

    bool empty() const { return text.empty(); }
    auto operator<=>(const Ident&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Ident& id);

struct TypedVar {
    Ident name;
    Ident type;  // defaults to "object" when undeclared

    auto operator<=>(const TypedVar&) const = default;
};

// Type forest rooted at the implicit type `object`. Declaration order is
// preserved for printing.
class TypeHierarchy {
public:
    static const Ident& object_type();

    // Returns false when `type` was already declared (first declaration wins).
    bool declare(Ident type, Ident parent);

    bool contains(const Ident& type) const;
    const Ident* parent_of(const Ident& type) const;

    // Reflexive-transitive subtype test. Every known type (and `object`
    // itself) is a subtype of `object`; unknown types are subtypes only of
    // themselves and `object`.
    bool is_subtype(const Ident& type, const Ident& ancestor) const;

    const std::vector<std::pair<Ident, Ident>>& declarations() const { return declared_; }

    bool operator==(const TypeHierarchy& other) const { return declared_ == other.declared_; }

private:
    std::vector<std::pair<Ident, Ident>> declared_;  // (type, parent), declaration order
    std::map<Ident, Ident> parent_;
};

struct PredicateDecl {
    Ident name;
    std::vector<TypedVar> params;

    auto operator<=>(const PredicateDecl&) const = default;
};

struct Term {
    enum class Kind { variable, constant };

    Kind kind = Kind::constant;
    Ident name;  // variable names stored without the leading '?'
    // Inline type annotation inside a literal's argument list ("?x - t").
    // Legal PDDL keeps types in :parameters; predicted files sometimes
    // repeat them here, so the parser keeps them and validation flags them.
    std::optional<Ident> declared_type;

    static Term variable(Ident name, std::optional<Ident> type = std::nullopt) {
        return Term{Kind::variable, std::move(name), std::move(type)};
    }
    static Term constant(Ident name) { return Term{Kind::constant, std::move(name), std::nullopt}; }

    bool is_variable() const { return kind == Kind::variable; }
    auto operator<=>(const Term&) const = default;
};

struct Literal {
    bool positive = true;
    Ident predicate;
    std::vector<Term> args;

    auto operator<=>(const Literal&) const = default;
};

// Flat conjunction; nested (and ...) forms are collapsed by the parser.
struct Condition {
    std::vector<Literal> literals;

    bool empty() const { return literals.empty(); }
    std::size_t size() const { return literals.size(); }
    auto operator<=>(const Condition&) const = default;
};

struct ActionDef {
    Ident name;
    std::vector<TypedVar> params;
    Condition precondition;
    Condition effect;

    auto operator<=>(const ActionDef&) const = default;
};

// Domain minus action bodies: what the prediction task hands to a model.
struct DomainHeader {
    Ident name;
    std::vector<Ident> requirements;
    TypeHierarchy types;
    std::vector<PredicateDecl> predicates;
    std::vector<Ident> action_names;

    const PredicateDecl* find_predicate(const Ident& name) const;
    bool operator==(const DomainHeader&) const = default;
};

struct DomainFile {
    DomainHeader header;
    std::vector<ActionDef> actions;

    const ActionDef* find_action(const Ident& name) const;
    bool operator==(const DomainFile&) const = default;
};

struct ProblemFile {
    Ident name;
    Ident domain_name;
    std::vector<TypedVar> objects;
    std::vector<Literal> init;  // ground, all positive
    Condition goal;             // literals may be negative

    bool operator==(const ProblemFile&) const = default;
};

struct PlanStep {
    Ident action;
    std::vector<Ident> args;

    auto operator<=>(const PlanStep&) const = default;
};

struct Plan {
    std::vector<PlanStep> steps;

    bool empty() const { return steps.empty(); }
    std::size_t size() const { return steps.size(); }
    auto operator<=>(const Plan&) const = default;
};

}  // namespace pddleval

template <>
struct std::hash<pddleval::Ident> {
    std::size_t operator()(const pddleval::Ident& id) const noexcept {
        return std::hash<std::string>{}(id.text);
    }
};
