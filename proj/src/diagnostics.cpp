#include "pddleval/diagnostics.hpp"

#include <sstream>

namespace pddleval {

std::string SourcePos::to_string() const {
    if (!known()) return "<unknown>";
    std::ostringstream os;
    os << line << ":" << column;
    return os.str();
}

std::string Diagnostic::to_string() const {
    std::ostringstream os;
    switch (severity) {
        case Severity::note: os << "note"; break;
        case Severity::warning: os << "warning"; break;
        case Severity::error: os << "error"; break;
    }
    if (pos.known()) os << " at " << pos.to_string();
    os << " [" << code << "]: " << message;
    return os.str();
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const Diagnostic& d : diags) {
        if (d.severity == Severity::error) return true;
    }
    return false;
}

std::size_t count_severity(const std::vector<Diagnostic>& diags, Severity sev) {
    std::size_t n = 0;
    for (const Diagnostic& d : diags) {
        if (d.severity == sev) ++n;
    }
    return n;
}

}  // namespace pddleval
