#include "pddleval/printer.hpp"

#include <sstream>

namespace pddleval {

namespace {

std::string indent_str(int n) { return std::string(static_cast<std::size_t>(n), ' '); }

// Shared by :types and :objects: consecutive runs with the same type print
// as one "a b c - t" group per line.
void print_typed_groups(std::ostringstream& os, const std::vector<TypedVar>& items, int indent) {
    std::size_t i = 0;
    while (i < items.size()) {
        std::size_t j = i;
        while (j < items.size() && items[j].type == items[i].type) ++j;
        os << indent_str(indent);
        for (std::size_t k = i; k < j; ++k) {
            if (k > i) os << ' ';
            os << items[k].name.text;
        }
        os << " - " << items[i].type.text << "\n";
        i = j;
    }
}

}  // namespace

std::string print_term(const Term& term) {
    std::string out;
    if (term.is_variable()) out.push_back('?');
    out += term.name.text;
    if (term.declared_type) out += " - " + term.declared_type->text;
    return out;
}

std::string print_literal(const Literal& literal) {
    std::ostringstream os;
    if (!literal.positive) os << "(not ";
    os << '(' << literal.predicate.text;
    for (const Term& arg : literal.args) os << ' ' << print_term(arg);
    os << ')';
    if (!literal.positive) os << ')';
    return os.str();
}

std::string print_condition(const Condition& condition) {
    std::ostringstream os;
    os << "(and";
    for (const Literal& lit : condition.literals) os << ' ' << print_literal(lit);
    os << ')';
    return os.str();
}

std::string print_action(const ActionDef& action, int indent) {
    std::ostringstream os;
    std::string pad = indent_str(indent);
    os << pad << "(:action " << action.name.text << "\n";
    os << pad << "  :parameters (";
    for (std::size_t i = 0; i < action.params.size(); ++i) {
        if (i > 0) os << ' ';
        os << '?' << action.params[i].name.text << " - " << action.params[i].type.text;
    }
    os << ")\n";
    os << pad << "  :precondition " << print_condition(action.precondition) << "\n";
    os << pad << "  :effect " << print_condition(action.effect) << ")\n";
    return os.str();
}

std::string print_domain(const DomainFile& df) {
    std::ostringstream os;
    os << "(define (domain " << df.header.name.text << ")\n";
    if (!df.header.requirements.empty()) {
        os << "  (:requirements";
        for (const Ident& req : df.header.requirements) os << " :" << req.text;
        os << ")\n";
    }
    const auto& types = df.header.types.declarations();
    if (!types.empty()) {
        os << "  (:types\n";
        std::vector<TypedVar> items;
        items.reserve(types.size());
        for (const auto& [type, parent] : types) items.push_back({type, parent});
        print_typed_groups(os, items, 4);
        os << "  )\n";
    }
    if (!df.header.predicates.empty()) {
        os << "  (:predicates\n";
        for (const PredicateDecl& p : df.header.predicates) {
            os << "    (" << p.name.text;
            for (const TypedVar& v : p.params) os << " ?" << v.name.text << " - " << v.type.text;
            os << ")\n";
        }
        os << "  )\n";
    }
    for (const ActionDef& action : df.actions) {
        os << "\n" << print_action(action, 2);
    }
    os << ")\n";
    return os.str();
}

std::string print_problem(const ProblemFile& pf) {
    std::ostringstream os;
    os << "(define (problem " << pf.name.text << ")\n";
    os << "  (:domain " << pf.domain_name.text << ")\n";
    if (!pf.objects.empty()) {
        os << "  (:objects\n";
        print_typed_groups(os, pf.objects, 4);
        os << "  )\n";
    }
    if (!pf.init.empty()) {
        os << "  (:init\n";
        for (const Literal& lit : pf.init) os << "    " << print_literal(lit) << "\n";
        os << "  )\n";
    }
    os << "  (:goal " << print_condition(pf.goal) << ")\n";
    os << ")\n";
    return os.str();
}

std::string print_plan(const Plan& plan) {
    std::ostringstream os;
    for (const PlanStep& step : plan.steps) {
        os << '(' << step.action.text;
        for (const Ident& arg : step.args) os << ' ' << arg.text;
        os << ")\n";
    }
    return os.str();
}

}  // namespace pddleval
