// Canonical pretty-printer. Printing is deterministic and parse(print(x))
// is structurally equal to x for every AST the parser can produce.

#pragma once

#include <string>

#include "pddleval/ast.hpp"

namespace pddleval {

std::string print_term(const Term& term);
std::string print_literal(const Literal& literal);
std::string print_condition(const Condition& condition);
std::string print_action(const ActionDef& action, int indent = 0);
std::string print_domain(const DomainFile& df);
std::string print_problem(const ProblemFile& pf);
std::string print_plan(const Plan& plan);

}  // namespace pddleval
