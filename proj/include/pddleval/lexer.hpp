// Tokenizer for the PDDL subset. `;` starts a comment running to end of
// line. Identifiers are lowercased here so the rest of the pipeline never
// sees mixed case.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pddleval/diagnostics.hpp"

namespace pddleval {

// Thrown by the lexer and parser; callers that need totality catch it and
// turn it into a diagnostic.
class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, std::string message, std::string expected = {});

    const SourcePos& pos() const { return pos_; }
    const std::string& expected() const { return expected_; }

private:
    SourcePos pos_;
    std::string expected_;
};

enum class TokenKind {
    lparen,
    rparen,
    symbol,    // bare identifier
    variable,  // ?name (stored without '?')
    keyword,   // :name (stored without ':')
    dash,      // typed-list separator
    eof,
};

struct Token {
    TokenKind kind = TokenKind::eof;
    std::string text;  // payload for symbol/variable/keyword
    SourcePos pos;
};

std::string token_kind_name(TokenKind kind);

// Full-input tokenization; throws ParseError on bytes outside the token
// alphabet. The trailing token is always `eof`.
std::vector<Token> tokenize(std::string_view source);

}  // namespace pddleval
