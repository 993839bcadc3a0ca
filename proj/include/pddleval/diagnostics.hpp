// Positioned diagnostics shared by the parser, validator, grounder and
// dataset loader. Diagnostics are reports, not control flow: anything that
// must abort throws (see ParseError in lexer.hpp).

#pragma once

#include <string>
#include <vector>

namespace pddleval {

struct SourcePos {
    int line = 0;  // 1-based; 0 = unknown
    int column = 0;
    std::size_t offset = 0;

    bool known() const { return line > 0; }
    std::string to_string() const;
};

enum class Severity { note, warning, error };

struct Diagnostic {
    Severity severity = Severity::note;
    std::string code;     // stable machine-readable slug, e.g. "hallucinated-predicate"
    std::string message;  // human-readable detail
    SourcePos pos;        // optional

    std::string to_string() const;
};

inline Diagnostic make_diag(Severity sev, std::string code, std::string message,
                            SourcePos pos = {}) {
    return Diagnostic{sev, std::move(code), std::move(message), pos};
}

bool has_errors(const std::vector<Diagnostic>& diags);
std::size_t count_severity(const std::vector<Diagnostic>& diags, Severity sev);

}  // namespace pddleval
