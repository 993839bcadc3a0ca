#include "pddleval/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "pddleval/util.hpp"

namespace pddleval {

namespace {

const Ident kObject = Ident::make("object");

class TokenCursor {
public:
    TokenCursor(std::vector<Token> tokens, std::vector<Diagnostic>* diags)
        : tokens_(std::move(tokens)), diags_(diags) {}

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (t.kind != TokenKind::eof) ++pos_;
        return t;
    }
    bool at(TokenKind kind) const { return peek().kind == kind; }

    bool accept(TokenKind kind) {
        if (!at(kind)) return false;
        next();
        return true;
    }

    const Token& expect(TokenKind kind, const std::string& context) {
        if (!at(kind)) {
            throw ParseError(peek().pos,
                             "expected " + token_kind_name(kind) + " in " + context +
                                 ", found " + describe(peek()),
                             token_kind_name(kind));
        }
        return next();
    }

    // Keyword with a specific spelling, e.g. ":action".
    void expect_keyword(const std::string& name, const std::string& context) {
        if (!at(TokenKind::keyword) || peek().text != name) {
            throw ParseError(peek().pos,
                             "expected ':" + name + "' in " + context + ", found " +
                                 describe(peek()),
                             ":" + name);
        }
        next();
    }

    [[noreturn]] void fail(const std::string& message, const std::string& expected = {}) const {
        throw ParseError(peek().pos, message, expected);
    }

    void diag(Severity sev, std::string code, std::string message) {
        if (diags_) diags_->push_back(make_diag(sev, std::move(code), std::move(message), peek().pos));
    }

    static std::string describe(const Token& t) {
        if (t.kind == TokenKind::eof) return "end of input";
        return "'" + (t.kind == TokenKind::variable ? "?" + t.text
                      : t.kind == TokenKind::keyword ? ":" + t.text
                                                     : t.text) +
               "'";
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic>* diags_;
};

// `name+ (- type)?` groups until the closing paren. Items may be variables
// or symbols depending on the caller (parameters vs. :types / :objects).
std::vector<TypedVar> parse_typed_list(TokenCursor& cur, TokenKind item_kind,
                                       const std::string& context) {
    std::vector<TypedVar> out;
    std::vector<Ident> pending;
    while (!cur.at(TokenKind::rparen)) {
        if (cur.at(item_kind)) {
            pending.push_back(Ident::make(cur.next().text));
        } else if (cur.at(TokenKind::dash)) {
            if (pending.empty()) cur.fail("typed list in " + context + ": '-' without names");
            cur.next();
            if (!cur.at(TokenKind::symbol)) {
                cur.fail("typed list in " + context + ": expected a type after '-'", "type name");
            }
            Ident type = Ident::make(cur.next().text);
            for (Ident& name : pending) out.push_back({std::move(name), type});
            pending.clear();
        } else {
            cur.fail("typed list in " + context + ": unexpected " +
                     TokenCursor::describe(cur.peek()));
        }
    }
    for (Ident& name : pending) out.push_back({std::move(name), kObject});
    return out;
}

// Arguments of an atom whose name has already been consumed, up to (but not
// including) the closing paren. Inline "?x - t" annotations are not legal in
// the subset but common in predicted output; they are kept on the term and
// flagged for validation.
void parse_atom_args(TokenCursor& cur, Literal& lit) {
    while (!cur.at(TokenKind::rparen)) {
        if (cur.at(TokenKind::variable)) {
            lit.args.push_back(Term::variable(Ident::make(cur.next().text)));
        } else if (cur.at(TokenKind::symbol)) {
            lit.args.push_back(Term::constant(Ident::make(cur.next().text)));
        } else if (cur.at(TokenKind::dash)) {
            if (lit.args.empty() || !lit.args.back().is_variable()) {
                cur.fail("'-' inside a predicate must follow a variable");
            }
            cur.next();
            if (!cur.at(TokenKind::symbol)) cur.fail("expected a type after '-'", "type name");
            cur.diag(Severity::warning, "inline-typed-argument",
                     "type annotation inside predicate '" + lit.predicate.text + "'");
            lit.args.back().declared_type = Ident::make(cur.next().text);
        } else if (cur.at(TokenKind::lparen)) {
            cur.fail("argument of predicate '" + lit.predicate.text +
                     "' must be atomic, not a nested expression");
        } else {
            cur.fail("unexpected " + TokenCursor::describe(cur.peek()) + " in predicate '" +
                     lit.predicate.text + "'");
        }
    }
}

void parse_condition_into(TokenCursor& cur, Condition& out) {
    cur.expect(TokenKind::lparen, "condition");
    if (cur.at(TokenKind::symbol) && cur.peek().text == "and") {
        cur.next();
        while (!cur.at(TokenKind::rparen)) {
            if (!cur.at(TokenKind::lparen)) {
                cur.fail("expected '(' inside (and ...), found " +
                         TokenCursor::describe(cur.peek()));
            }
            // Peek past '(' to flatten nested conjunctions.
            Condition sub;
            parse_condition_into(cur, sub);
            for (Literal& lit : sub.literals) out.literals.push_back(std::move(lit));
        }
        cur.expect(TokenKind::rparen, "condition");
        return;
    }
    if (cur.at(TokenKind::symbol) && cur.peek().text == "not") {
        cur.next();
        if (!cur.at(TokenKind::lparen)) cur.fail("expected '(' after 'not'");
        // STRIPS negation applies to atoms only.
        Condition sub;
        parse_condition_into(cur, sub);
        if (sub.literals.size() != 1 || !sub.literals[0].positive) {
            cur.fail("'not' must wrap a single predicate");
        }
        sub.literals[0].positive = false;
        out.literals.push_back(std::move(sub.literals[0]));
        cur.expect(TokenKind::rparen, "condition");
        return;
    }
    if (cur.at(TokenKind::symbol)) {
        Literal lit;
        lit.positive = true;
        lit.predicate = Ident::make(cur.next().text);
        parse_atom_args(cur, lit);
        cur.expect(TokenKind::rparen, "condition");
        out.literals.push_back(std::move(lit));
        return;
    }
    cur.fail("expected a condition", "predicate, (and ...) or (not ...)");
}

Condition parse_condition(TokenCursor& cur) {
    Condition cond;
    parse_condition_into(cur, cond);
    return cond;
}

ActionDef parse_action_body(TokenCursor& cur) {
    // Caller consumed "(:action".
    ActionDef action;
    if (!cur.at(TokenKind::symbol)) cur.fail("expected an action name", "action name");
    action.name = Ident::make(cur.next().text);

    bool saw_params = false, saw_pre = false, saw_eff = false;
    while (!cur.at(TokenKind::rparen)) {
        if (!cur.at(TokenKind::keyword)) {
            cur.fail("expected ':parameters', ':precondition' or ':effect' in action '" +
                     action.name.text + "', found " + TokenCursor::describe(cur.peek()));
        }
        const Token& key = cur.next();
        if (key.text == "parameters") {
            if (saw_params) throw ParseError(key.pos, "duplicate :parameters");
            saw_params = true;
            cur.expect(TokenKind::lparen, ":parameters");
            action.params = parse_typed_list(cur, TokenKind::variable, ":parameters");
            cur.expect(TokenKind::rparen, ":parameters");
        } else if (key.text == "precondition") {
            if (saw_pre) throw ParseError(key.pos, "duplicate :precondition");
            saw_pre = true;
            action.precondition = parse_condition(cur);
        } else if (key.text == "effect") {
            if (saw_eff) throw ParseError(key.pos, "duplicate :effect");
            saw_eff = true;
            action.effect = parse_condition(cur);
        } else {
            throw ParseError(key.pos, "unsupported action section ':" + key.text + "'");
        }
    }
    cur.expect(TokenKind::rparen, "action");
    if (!saw_params) {
        cur.diag(Severity::warning, "missing-parameters",
                 "action '" + action.name.text + "' has no :parameters");
    }
    if (!saw_pre) {
        cur.diag(Severity::warning, "empty-condition",
                 "action '" + action.name.text + "' has no :precondition");
    }
    if (!saw_eff) {
        cur.diag(Severity::warning, "empty-condition",
                 "action '" + action.name.text + "' has no :effect");
    }
    return action;
}

void check_type_acyclic(const TypeHierarchy& types, SourcePos pos) {
    for (const auto& [type, parent] : types.declarations()) {
        (void)parent;
        const Ident* cur = &type;
        std::size_t steps = types.declarations().size() + 1;
        while (const Ident* p = types.parent_of(*cur)) {
            if (*p == type) throw ParseError(pos, "type cycle through '" + type.text + "'");
            if (steps-- == 0) throw ParseError(pos, "type cycle detected");
            cur = p;
        }
    }
}

TypeHierarchy parse_types_section(TokenCursor& cur, std::vector<Diagnostic>* diags) {
    TypeHierarchy types;
    std::vector<TypedVar> decls = parse_typed_list(cur, TokenKind::symbol, ":types");
    SourcePos pos = cur.peek().pos;
    for (const TypedVar& d : decls) {
        if (!types.declare(d.name, d.type) && diags) {
            diags->push_back(make_diag(Severity::warning, "duplicate-type",
                                       "type '" + d.name.text + "' declared twice; first wins",
                                       pos));
        }
    }
    // Parents that were only mentioned, never declared, default to object.
    for (auto decl = types.declarations(); const auto& [type, parent] : decl) {
        (void)type;
        if (parent != kObject && !types.contains(parent)) types.declare(parent, kObject);
    }
    check_type_acyclic(types, pos);
    return types;
}

}  // namespace

DomainFile parse_domain(std::string_view source, std::vector<Diagnostic>* diags) {
    TokenCursor cur(tokenize(source), diags);
    DomainFile df;

    cur.expect(TokenKind::lparen, "domain");
    if (!cur.at(TokenKind::symbol) || cur.peek().text != "define") {
        cur.fail("expected 'define'", "define");
    }
    cur.next();
    cur.expect(TokenKind::lparen, "(domain ...)");
    if (!cur.at(TokenKind::symbol) || cur.peek().text != "domain") {
        cur.fail("expected 'domain'", "domain");
    }
    cur.next();
    df.header.name = Ident::make(cur.expect(TokenKind::symbol, "domain name").text);
    cur.expect(TokenKind::rparen, "(domain ...)");

    bool saw_requirements = false, saw_types = false, saw_predicates = false;
    while (!cur.at(TokenKind::rparen)) {
        cur.expect(TokenKind::lparen, "domain section");
        if (!cur.at(TokenKind::keyword)) {
            cur.fail("expected a section keyword such as ':action'");
        }
        const Token& key = cur.next();
        if (key.text == "requirements") {
            if (saw_requirements) throw ParseError(key.pos, "duplicate :requirements");
            saw_requirements = true;
            while (!cur.at(TokenKind::rparen)) {
                const Token& req = cur.expect(TokenKind::keyword, ":requirements");
                if (req.text == "strips" || req.text == "typing") {
                    df.header.requirements.push_back(Ident::make(req.text));
                } else if (diags) {
                    diags->push_back(make_diag(
                        Severity::warning, "unsupported-requirement",
                        "requirement ':" + req.text + "' is outside the supported subset; ignored",
                        req.pos));
                }
            }
            cur.expect(TokenKind::rparen, ":requirements");
        } else if (key.text == "types") {
            if (saw_types) throw ParseError(key.pos, "duplicate :types");
            saw_types = true;
            df.header.types = parse_types_section(cur, diags);
            cur.expect(TokenKind::rparen, ":types");
        } else if (key.text == "predicates") {
            if (saw_predicates) throw ParseError(key.pos, "duplicate :predicates");
            saw_predicates = true;
            while (!cur.at(TokenKind::rparen)) {
                cur.expect(TokenKind::lparen, "predicate declaration");
                PredicateDecl decl;
                decl.name = Ident::make(cur.expect(TokenKind::symbol, "predicate name").text);
                decl.params = parse_typed_list(cur, TokenKind::variable, "predicate declaration");
                cur.expect(TokenKind::rparen, "predicate declaration");
                std::set<Ident> seen;
                for (const TypedVar& p : decl.params) {
                    if (!seen.insert(p.name).second && diags) {
                        diags->push_back(make_diag(Severity::warning, "duplicate-parameter",
                                                   "predicate '" + decl.name.text +
                                                       "' repeats variable '?" + p.name.text + "'",
                                                   key.pos));
                    }
                }
                df.header.predicates.push_back(std::move(decl));
            }
            cur.expect(TokenKind::rparen, ":predicates");
        } else if (key.text == "action") {
            ActionDef action = parse_action_body(cur);
            if (std::find(df.header.action_names.begin(), df.header.action_names.end(),
                          action.name) != df.header.action_names.end()) {
                if (diags) {
                    diags->push_back(make_diag(Severity::warning, "duplicate-action",
                                               "action '" + action.name.text +
                                                   "' defined twice; first definition kept",
                                               key.pos));
                }
            } else {
                df.header.action_names.push_back(action.name);
                df.actions.push_back(std::move(action));
            }
        } else {
            throw ParseError(key.pos, "unsupported domain section ':" + key.text + "'");
        }
    }
    cur.expect(TokenKind::rparen, "domain");
    cur.expect(TokenKind::eof, "domain");
    return df;
}

ProblemFile parse_problem(std::string_view source, std::vector<Diagnostic>* diags) {
    TokenCursor cur(tokenize(source), diags);
    ProblemFile pf;

    cur.expect(TokenKind::lparen, "problem");
    if (!cur.at(TokenKind::symbol) || cur.peek().text != "define") cur.fail("expected 'define'");
    cur.next();
    cur.expect(TokenKind::lparen, "(problem ...)");
    if (!cur.at(TokenKind::symbol) || cur.peek().text != "problem") cur.fail("expected 'problem'");
    cur.next();
    pf.name = Ident::make(cur.expect(TokenKind::symbol, "problem name").text);
    cur.expect(TokenKind::rparen, "(problem ...)");

    bool saw_domain = false, saw_goal = false;
    while (!cur.at(TokenKind::rparen)) {
        cur.expect(TokenKind::lparen, "problem section");
        if (!cur.at(TokenKind::keyword)) cur.fail("expected a section keyword such as ':init'");
        const Token& key = cur.next();
        if (key.text == "domain") {
            saw_domain = true;
            pf.domain_name = Ident::make(cur.expect(TokenKind::symbol, ":domain").text);
            cur.expect(TokenKind::rparen, ":domain");
        } else if (key.text == "objects") {
            pf.objects = parse_typed_list(cur, TokenKind::symbol, ":objects");
            cur.expect(TokenKind::rparen, ":objects");
        } else if (key.text == "init") {
            while (!cur.at(TokenKind::rparen)) {
                Condition one;
                parse_condition_into(cur, one);
                for (Literal& lit : one.literals) {
                    if (!lit.positive) {
                        if (diags) {
                            diags->push_back(make_diag(
                                Severity::warning, "negative-init",
                                "negated literal in :init ignored (closed world)", key.pos));
                        }
                        continue;
                    }
                    bool ground = std::all_of(lit.args.begin(), lit.args.end(),
                                              [](const Term& t) { return !t.is_variable(); });
                    if (!ground) {
                        throw ParseError(key.pos, "init atom '" + lit.predicate.text +
                                                      "' contains a variable");
                    }
                    pf.init.push_back(std::move(lit));
                }
            }
            cur.expect(TokenKind::rparen, ":init");
        } else if (key.text == "goal") {
            saw_goal = true;
            pf.goal = parse_condition(cur);
            cur.expect(TokenKind::rparen, ":goal");
        } else {
            throw ParseError(key.pos, "unsupported problem section ':" + key.text + "'");
        }
    }
    cur.expect(TokenKind::rparen, "problem");
    cur.expect(TokenKind::eof, "problem");
    if (!saw_domain) cur.fail("problem has no (:domain ...) section");
    if (!saw_goal) cur.fail("problem has no (:goal ...) section");
    return pf;
}

Plan parse_plan(std::string_view source) {
    Plan plan;
    std::vector<std::string> lines = util::split_lines(source);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        std::string_view line = lines[n];
        if (auto semi = line.find(';'); semi != std::string_view::npos) {
            line = line.substr(0, semi);
        }
        std::string text = util::trim(line);
        if (text.empty()) continue;

        std::vector<Token> tokens = tokenize(text);
        // Re-home positions on the plan file's own line numbers.
        std::size_t i = 0;
        auto at = [&](TokenKind k) { return tokens[i].kind == k; };
        auto fail = [&](const std::string& msg) -> void {
            throw ParseError(SourcePos{static_cast<int>(n + 1), tokens[i].pos.column, 0}, msg);
        };
        if (!at(TokenKind::lparen)) fail("plan step must start with '('");
        ++i;
        if (!at(TokenKind::symbol)) fail("plan step must name an action");
        PlanStep step;
        step.action = Ident::make(tokens[i].text);
        ++i;
        while (at(TokenKind::symbol)) {
            step.args.push_back(Ident::make(tokens[i].text));
            ++i;
        }
        if (!at(TokenKind::rparen)) fail("plan step arguments must be constants");
        ++i;
        if (!at(TokenKind::eof)) fail("one plan step per line");
        plan.steps.push_back(std::move(step));
    }
    return plan;
}

ActionDef parse_action(std::string_view source, std::vector<Diagnostic>* diags) {
    TokenCursor cur(tokenize(source), diags);
    cur.expect(TokenKind::lparen, "action");
    cur.expect_keyword("action", "action");
    ActionDef action = parse_action_body(cur);
    cur.expect(TokenKind::eof, "action");
    return action;
}

std::pair<DomainHeader, std::vector<ActionDef>> split_header(const DomainFile& df) {
    return {df.header, df.actions};
}

SpliceResult splice_actions(const DomainHeader& header, const std::vector<ActionDef>& actions) {
    SpliceResult result;
    result.domain.header = header;

    std::vector<const ActionDef*> by_header(header.action_names.size(), nullptr);
    std::set<Ident> header_names(header.action_names.begin(), header.action_names.end());
    std::set<Ident> seen;

    for (const ActionDef& action : actions) {
        if (!seen.insert(action.name).second) {
            result.duplicates.push_back(action.name);
            result.warnings.push_back(make_diag(
                Severity::warning, "duplicate-action",
                "action '" + action.name.text + "' supplied more than once; first kept"));
            continue;
        }
        if (!header_names.count(action.name)) {
            result.extra.push_back(action.name);
            result.warnings.push_back(make_diag(
                Severity::warning, "extra-action",
                "action '" + action.name.text + "' is not in the header; dropped"));
            continue;
        }
        for (std::size_t i = 0; i < header.action_names.size(); ++i) {
            if (header.action_names[i] == action.name) {
                by_header[i] = &action;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < by_header.size(); ++i) {
        if (by_header[i] != nullptr) {
            result.domain.actions.push_back(*by_header[i]);
        } else {
            result.missing.push_back(header.action_names[i]);
            result.warnings.push_back(make_diag(
                Severity::warning, "missing-action",
                "header action '" + header.action_names[i].text + "' was not supplied"));
        }
    }
    return result;
}

namespace {

// Case-insensitive search for "(:action" followed by a non-identifier byte.
std::size_t find_action_open(std::string_view raw, std::size_t from) {
    static const std::string needle = "(:action";
    for (std::size_t i = from; i + needle.size() <= raw.size(); ++i) {
        bool hit = true;
        for (std::size_t k = 0; k < needle.size(); ++k) {
            if (std::tolower(static_cast<unsigned char>(raw[i + k])) != needle[k]) {
                hit = false;
                break;
            }
        }
        if (!hit) continue;
        std::size_t after = i + needle.size();
        if (after < raw.size()) {
            char c = raw[after];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') continue;
        }
        return i;
    }
    return std::string_view::npos;
}

// Balanced-paren span starting at raw[open] == '('; honors ';' comments.
// Returns npos when the block never closes.
std::size_t balanced_end(std::string_view raw, std::size_t open) {
    int depth = 0;
    for (std::size_t i = open; i < raw.size(); ++i) {
        char c = raw[i];
        if (c == ';') {
            while (i < raw.size() && raw[i] != '\n') ++i;
            if (i >= raw.size()) break;
            continue;
        }
        if (c == '(') ++depth;
        if (c == ')') {
            --depth;
            if (depth == 0) return i + 1;
        }
    }
    return std::string_view::npos;
}

}  // namespace

ScanResult scan_action_blocks(std::string_view raw) {
    ScanResult result;
    std::size_t from = 0;
    while (true) {
        std::size_t open = find_action_open(raw, from);
        if (open == std::string_view::npos) break;
        std::size_t end = balanced_end(raw, open);
        if (end == std::string_view::npos) {
            std::string_view fragment = raw.substr(open, std::min<std::size_t>(60, raw.size() - open));
            result.errors.push_back(
                {open, "unbalanced parentheses in action block", std::string(fragment)});
            from = open + 1;
            continue;
        }
        std::string_view block = raw.substr(open, end - open);
        try {
            result.actions.push_back(parse_action(block));
        } catch (const ParseError& err) {
            std::string_view fragment = block.substr(0, std::min<std::size_t>(60, block.size()));
            result.errors.push_back({open, err.what(), std::string(fragment)});
        }
        from = end;
    }
    return result;
}

}  // namespace pddleval
