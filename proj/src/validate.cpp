#include "pddleval/validate.hpp"

#include <map>
#include <set>
#include <sstream>

#include "pddleval/printer.hpp"

namespace pddleval {

namespace {

// Best-effort type of an argument term: a variable's declared parameter
// type, or the same-named type for a constant (the corpus convention for
// body constants like `water` and `fire`). Returns nullptr when unknown.
const Ident* term_type(const Term& term, const std::map<Ident, Ident>& param_types,
                       const TypeHierarchy& types) {
    if (term.is_variable()) {
        auto it = param_types.find(term.name);
        return it == param_types.end() ? nullptr : &it->second;
    }
    if (types.contains(term.name)) return &term.name;
    return nullptr;
}

void check_condition(const DomainFile& df, const ActionDef& action, const Condition& cond,
                     const char* which, const std::map<Ident, Ident>& param_types,
                     std::vector<Diagnostic>& out) {
    std::set<Literal> seen;
    for (const Literal& lit : cond.literals) {
        if (!seen.insert(lit).second) {
            out.push_back(make_diag(Severity::warning, "duplicate-literal",
                                    "action '" + action.name.text + "' repeats " +
                                        print_literal(lit) + " in its " + which));
        }
        const PredicateDecl* decl = df.header.find_predicate(lit.predicate);
        if (decl == nullptr) {
            out.push_back(make_diag(Severity::error, "hallucinated-predicate",
                                    "action '" + action.name.text + "' uses undeclared predicate '" +
                                        lit.predicate.text + "'"));
            continue;
        }
        if (decl->params.size() != lit.args.size()) {
            std::ostringstream msg;
            msg << "action '" << action.name.text << "': '" << lit.predicate.text << "' takes "
                << decl->params.size() << " arguments, got " << lit.args.size();
            out.push_back(make_diag(Severity::error, "arity-mismatch", msg.str()));
            continue;
        }
        for (std::size_t i = 0; i < lit.args.size(); ++i) {
            const Term& arg = lit.args[i];
            if (arg.declared_type) {
                out.push_back(make_diag(Severity::warning, "inline-typed-argument",
                                        "action '" + action.name.text +
                                            "' annotates a type inside " + print_literal(lit)));
            }
            if (arg.is_variable() && !param_types.count(arg.name)) {
                out.push_back(make_diag(Severity::warning, "unbound-variable",
                                        "action '" + action.name.text + "' uses '?" +
                                            arg.name.text + "' outside :parameters"));
                continue;
            }
            const Ident* at = term_type(arg, param_types, df.header.types);
            if (at == nullptr) {
                if (!arg.is_variable()) {
                    out.push_back(make_diag(Severity::note, "unresolved-constant",
                                            "constant '" + arg.name.text + "' in action '" +
                                                action.name.text +
                                                "' has no matching type; left to the grounder"));
                }
                continue;
            }
            if (!df.header.types.is_subtype(*at, decl->params[i].type)) {
                out.push_back(make_diag(
                    Severity::error, "type-mismatch",
                    "action '" + action.name.text + "': argument " + std::to_string(i + 1) +
                        " of " + print_literal(lit) + " has type '" + at->text +
                        "', declaration wants '" + decl->params[i].type.text + "'"));
            }
        }
    }
}

}  // namespace

std::vector<Diagnostic> validate_domain(const DomainFile& df) {
    std::vector<Diagnostic> out;

    for (const PredicateDecl& p : df.header.predicates) {
        for (const TypedVar& v : p.params) {
            if (!df.header.types.contains(v.type)) {
                out.push_back(make_diag(Severity::error, "unknown-type",
                                        "predicate '" + p.name.text + "' parameter '?" +
                                            v.name.text + "' has unknown type '" + v.type.text +
                                            "'"));
            }
        }
    }

    for (const ActionDef& action : df.actions) {
        std::map<Ident, Ident> param_types;
        for (const TypedVar& p : action.params) {
            param_types.emplace(p.name, p.type);
            if (!df.header.types.contains(p.type)) {
                out.push_back(make_diag(Severity::error, "unknown-type",
                                        "action '" + action.name.text + "' parameter '?" +
                                            p.name.text + "' has unknown type '" + p.type.text +
                                            "'"));
            }
        }
        if (action.precondition.empty()) {
            out.push_back(make_diag(Severity::warning, "empty-condition",
                                    "action '" + action.name.text +
                                        "' has an empty precondition (always applicable)"));
        }
        if (action.effect.empty()) {
            out.push_back(make_diag(Severity::warning, "empty-condition",
                                    "action '" + action.name.text + "' has an empty effect"));
        }
        check_condition(df, action, action.precondition, "precondition", param_types, out);
        check_condition(df, action, action.effect, "effect", param_types, out);
    }
    return out;
}

PredicateErrorKind predicate_error_kind(std::string_view code) {
    if (code == "hallucinated-predicate") return PredicateErrorKind::hallucinated;
    if (code == "arity-mismatch" || code == "type-mismatch") return PredicateErrorKind::mismatched;
    if (code == "inline-typed-argument" || code == "duplicate-literal") {
        return PredicateErrorKind::complicated;
    }
    return PredicateErrorKind::none;
}

}  // namespace pddleval
