#pragma once

#include "hdcc/diagnostic.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hdcc::frontend {

enum class TokenKind {
    DirectiveName, // `.NAME`, always starts with '.'
    Ident,
    Int,
    Bool,
    String,
    LParen,
    RParen,
    Comma,
    Semicolon,
    Comment, // `// ...` up to but excluding the line break
};

inline std::string_view to_string(TokenKind kind)
{
    switch (kind) {
    case TokenKind::DirectiveName: return "directive";
    case TokenKind::Ident: return "identifier";
    case TokenKind::Int: return "integer";
    case TokenKind::Bool: return "boolean";
    case TokenKind::String: return "string";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Comment: return "comment";
    }
    return "token";
}

struct Token {
    TokenKind kind;
    std::string lexeme;
    SourceLoc loc;
    std::size_t offset = 0; // byte offset of the first lexeme byte

    /// Location of the last byte of the lexeme (lexemes never span lines).
    SourceLoc end_loc() const
    {
        return {loc.line, loc.col + static_cast<int>(lexeme.empty() ? 0 : lexeme.size() - 1)};
    }
};

namespace detail {

inline bool is_ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

inline bool is_ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

inline bool iequals(std::string_view a, std::string_view b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::toupper(static_cast<unsigned char>(a[i])) !=
            std::toupper(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

} // namespace detail

/// Splits a description into tokens. Whitespace is skipped; comments are kept
/// as Comment tokens so that the token stream plus the skipped whitespace
/// reproduces the input byte for byte. Every offending byte sequence yields
/// one diagnostic; lexing continues past it.
inline Outcome<std::vector<Token>> tokenize(std::string_view src)
{
    std::vector<Token> tokens;
    std::vector<Diagnostic> diags;

    std::size_t i = 0;
    int line = 1;
    int col = 1;

    auto push = [&](TokenKind kind, std::size_t len) {
        tokens.push_back(Token{kind, std::string(src.substr(i, len)), {line, col}, i});
        i += len;
        col += static_cast<int>(len);
    };

    while (i < src.size()) {
        const char c = src[i];
        if (c == '\n') {
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            std::size_t end = src.find('\n', i);
            if (end == std::string_view::npos)
                end = src.size();
            // a CRLF line ending is whitespace, not comment text
            if (end > i && src[end - 1] == '\r')
                --end;
            push(TokenKind::Comment, end - i);
            continue;
        }
        if (c == '.' && i + 1 < src.size() && detail::is_ident_start(src[i + 1])) {
            std::size_t len = 2;
            while (i + len < src.size() && detail::is_ident_char(src[i + len]))
                ++len;
            push(TokenKind::DirectiveName, len);
            continue;
        }
        if (detail::is_ident_start(c)) {
            std::size_t len = 1;
            while (i + len < src.size() && detail::is_ident_char(src[i + len]))
                ++len;
            const std::string_view word = src.substr(i, len);
            const bool is_bool = detail::iequals(word, "TRUE") || detail::iequals(word, "FALSE");
            push(is_bool ? TokenKind::Bool : TokenKind::Ident, len);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len])))
                ++len;
            if (i + len < src.size() && detail::is_ident_start(src[i + len])) {
                diags.push_back({DiagnosticKind::Lex, SourceLoc{line, col},
                                 "malformed integer literal"});
                while (i + len < src.size() && detail::is_ident_char(src[i + len]))
                    ++len;
                i += len;
                col += static_cast<int>(len);
                continue;
            }
            push(TokenKind::Int, len);
            continue;
        }
        if (c == '"') {
            std::size_t len = 1;
            while (i + len < src.size() && src[i + len] != '"' && src[i + len] != '\n')
                ++len;
            if (i + len >= src.size() || src[i + len] != '"') {
                diags.push_back({DiagnosticKind::Lex, SourceLoc{line, col},
                                 "unterminated string literal"});
                i += len;
                col += static_cast<int>(len);
                continue;
            }
            push(TokenKind::String, len + 1);
            continue;
        }
        switch (c) {
        case '(': push(TokenKind::LParen, 1); continue;
        case ')': push(TokenKind::RParen, 1); continue;
        case ',': push(TokenKind::Comma, 1); continue;
        case ';': push(TokenKind::Semicolon, 1); continue;
        default: break;
        }

        // Anything else is outside the alphabet. Swallow a whole UTF-8
        // sequence so one code point yields one diagnostic.
        std::size_t len = 1;
        const auto lead = static_cast<unsigned char>(c);
        if (lead >= 0xC0) {
            while (i + len < src.size() &&
                   (static_cast<unsigned char>(src[i + len]) & 0xC0) == 0x80)
                ++len;
        }
        std::string shown = lead >= 0x20 && lead < 0x7F ? "'" + std::string(1, c) + "'"
                                                        : "byte 0x" + [&] {
                                                              static const char *hex = "0123456789ABCDEF";
                                                              return std::string{hex[lead >> 4], hex[lead & 15]};
                                                          }();
        diags.push_back({DiagnosticKind::Lex, SourceLoc{line, col}, "unexpected character " + shown});
        i += len;
        col += static_cast<int>(len);
    }

    if (!diags.empty())
        return diags;
    return tokens;
}

} // namespace hdcc::frontend
