#include "pddleval/lexer.hpp"

#include <cctype>

namespace pddleval {

ParseError::ParseError(SourcePos pos, std::string message, std::string expected)
    : std::runtime_error(pos.known() ? pos.to_string() + ": " + message : message),
      pos_(pos),
      expected_(std::move(expected)) {}

std::string token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::lparen: return "'('";
        case TokenKind::rparen: return "')'";
        case TokenKind::symbol: return "identifier";
        case TokenKind::variable: return "variable";
        case TokenKind::keyword: return "keyword";
        case TokenKind::dash: return "'-'";
        case TokenKind::eof: return "end of input";
    }
    return "?";
}

namespace {

bool is_ident_char(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-';
}

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    int line = 1;
    int col = 1;

    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count; ++k) {
            if (source[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    auto here = [&]() { return SourcePos{line, col, i}; };

    while (i < source.size()) {
        char c = source[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == ';') {
            while (i < source.size() && source[i] != '\n') advance(1);
            continue;
        }
        SourcePos pos = here();
        if (c == '(') {
            tokens.push_back({TokenKind::lparen, "(", pos});
            advance(1);
            continue;
        }
        if (c == ')') {
            tokens.push_back({TokenKind::rparen, ")", pos});
            advance(1);
            continue;
        }
        if (c == '?' || c == ':') {
            std::size_t start = i + 1;
            std::size_t end = start;
            while (end < source.size() && is_ident_char(source[end])) ++end;
            if (end == start) {
                throw ParseError(pos, std::string("dangling '") + c + "' without a name");
            }
            std::string text;
            text.reserve(end - start);
            for (std::size_t k = start; k < end; ++k) text.push_back(lower(source[k]));
            tokens.push_back({c == '?' ? TokenKind::variable : TokenKind::keyword,
                              std::move(text), pos});
            advance(end - i);
            continue;
        }
        if (is_ident_char(c)) {
            std::size_t end = i;
            while (end < source.size() && is_ident_char(source[end])) ++end;
            std::string text;
            text.reserve(end - i);
            for (std::size_t k = i; k < end; ++k) text.push_back(lower(source[k]));
            if (text == "-") {
                tokens.push_back({TokenKind::dash, "-", pos});
            } else {
                tokens.push_back({TokenKind::symbol, std::move(text), pos});
            }
            advance(end - i);
            continue;
        }
        throw ParseError(pos, std::string("illegal character '") + c + "'");
    }
    tokens.push_back({TokenKind::eof, "", here()});
    return tokens;
}

}  // namespace pddleval
