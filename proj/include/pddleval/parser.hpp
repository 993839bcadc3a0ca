// Recursive-descent parser for domains, problems, plans and lone action
// blocks, plus the splitter/splicer used by the prediction pipeline and the
// scanner that digs action blocks out of free-form model output.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pddleval/ast.hpp"
#include "pddleval/diagnostics.hpp"
#include "pddleval/lexer.hpp"

namespace pddleval {

// All parse entry points throw ParseError on malformed input and append
// non-fatal findings (missing :precondition, ignored requirement flags, ...)
// to `diags` when provided.
DomainFile parse_domain(std::string_view source, std::vector<Diagnostic>* diags = nullptr);
ProblemFile parse_problem(std::string_view source, std::vector<Diagnostic>* diags = nullptr);
Plan parse_plan(std::string_view source);
ActionDef parse_action(std::string_view source, std::vector<Diagnostic>* diags = nullptr);

// Header/body split: the header is what a model receives, the returned
// actions are what it must re-predict.
std::pair<DomainHeader, std::vector<ActionDef>> split_header(const DomainFile& df);

struct SpliceResult {
    DomainFile domain;
    std::vector<Ident> missing;     // header names with no supplied action
    std::vector<Ident> extra;       // supplied actions absent from the header
    std::vector<Ident> duplicates;  // repeated supplied names (first kept)
    std::vector<Diagnostic> warnings;
};

// Rebuilds a complete domain from a header plus (possibly predicted)
// actions. Never fails: mismatches become structured warnings and the
// resulting action list follows header order, dropping extras.
SpliceResult splice_actions(const DomainHeader& header, const std::vector<ActionDef>& actions);

struct ScanError {
    std::size_t offset = 0;  // byte offset of the block's '(' in the raw text
    std::string message;
    std::string snippet;  // leading fragment of the offending block
};

struct ScanResult {
    std::vector<ActionDef> actions;
    std::vector<ScanError> errors;
};

// Scans arbitrary text (prose, reasoning, code fences) for balanced
// parenthesis blocks starting with "(:action" and parses each one
// independently. Unparseable blocks are collected, never thrown.
ScanResult scan_action_blocks(std::string_view raw);

}  // namespace pddleval
