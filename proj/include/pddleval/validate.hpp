// Static checks over a parsed domain. A pure report: validation never
// mutates or throws, and a gold file yields no diagnostics above `note`.

#pragma once

#include <string_view>
#include <vector>

#include "pddleval/ast.hpp"
#include "pddleval/diagnostics.hpp"

namespace pddleval {

// Diagnostic codes produced by validate_domain:
//   hallucinated-predicate   literal's predicate has no declaration
//   arity-mismatch           literal argument count differs from declaration
//   type-mismatch            argument's type is not a subtype of the declared one
//   unknown-type             parameter/predicate type missing from the hierarchy
//   unbound-variable         body variable absent from :parameters
//   duplicate-literal        identical literal repeated inside one conjunction
//   inline-typed-argument    "?x - t" annotation inside a literal
//   empty-condition          missing or empty precondition/effect
std::vector<Diagnostic> validate_domain(const DomainFile& df);

// Buckets the codes above into the translation-failure families used when
// triaging predicted actions.
enum class PredicateErrorKind { none, mismatched, hallucinated, complicated };

PredicateErrorKind predicate_error_kind(std::string_view diagnostic_code);

}  // namespace pddleval
