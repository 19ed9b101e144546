#pragma once

#include "hdcc/frontend/ast.hpp"
#include "hdcc/frontend/lexer.hpp"

#include <array>
#include <charconv>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hdcc::frontend {

namespace detail {

struct DirectiveName {
    std::string_view keyword;
    DirectiveKind kind;
};

inline constexpr std::array<DirectiveName, 15> kDirectiveNames{{
    {"NAME", DirectiveKind::Name},
    {"WEIGHT_EMBED", DirectiveKind::WeightEmbed},
    {"EMBEDDING", DirectiveKind::Embedding},
    {"EMBEDDINGS", DirectiveKind::Embedding},
    {"INPUT_DIM", DirectiveKind::InputDim},
    {"ENCODING", DirectiveKind::Encoding},
    {"CLASSES", DirectiveKind::Classes},
    {"TYPE", DirectiveKind::Type},
    {"DIMENSIONS", DirectiveKind::Dimensions},
    {"TRAIN_SIZE", DirectiveKind::TrainSize},
    {"TEST_SIZE", DirectiveKind::TestSize},
    {"NUM_THREADS", DirectiveKind::NumThreads},
    {"VECTOR_SIZE", DirectiveKind::VectorSize},
    {"DEBUG", DirectiveKind::Debug},
    {"SEED", DirectiveKind::Seed},
}};

struct CombinatorName {
    std::string_view keyword;
    ExprKind kind;
};

inline constexpr std::array<CombinatorName, 8> kCombinators{{
    {"MULTIBUNDLE", ExprKind::MultiBundle},
    {"MULTISET", ExprKind::MultiBundle},
    {"BATCHBIND", ExprKind::BatchBind},
    {"BIND", ExprKind::Bind},
    {"BUNDLE", ExprKind::Bundle},
    {"HASHTABLE", ExprKind::HashTable},
    {"NGRAM", ExprKind::Ngram},
    {"PERMUTE", ExprKind::Permute},
}};

inline std::optional<DirectiveKind> lookup_directive(std::string_view lexeme)
{
    const std::string_view word = lexeme.substr(1);
    for (const auto &d : kDirectiveNames)
        if (iequals(word, d.keyword))
            return d.kind;
    return std::nullopt;
}

inline std::optional<ExprKind> lookup_combinator(std::string_view word)
{
    for (const auto &c : kCombinators)
        if (iequals(word, c.keyword))
            return c.kind;
    return std::nullopt;
}

/// Thrown inside the parser to unwind one directive; never escapes parse().
struct SyntaxError {
    Diagnostic diag;
};

class Parser {
public:
    explicit Parser(std::span<const Token> all)
    {
        for (const auto &t : all)
            if (t.kind != TokenKind::Comment)
                toks_.push_back(&t);
    }

    Outcome<std::vector<Directive>> run()
    {
        std::vector<Directive> out;
        while (!at_end()) {
            const std::size_t start = pos_;
            try {
                out.push_back(directive());
            } catch (const SyntaxError &e) {
                diags_.push_back(e.diag);
                recover(start);
            }
        }
        if (!diags_.empty())
            return diags_;
        return out;
    }

private:
    std::vector<const Token *> toks_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic> diags_;

    bool at_end() const { return pos_ >= toks_.size(); }
    const Token *peek(std::size_t ahead = 0) const
    {
        return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : nullptr;
    }
    const Token *last_consumed() const { return pos_ > 0 ? toks_[pos_ - 1] : nullptr; }

    [[noreturn]] void fail_at(const Token *tok, std::string msg) const
    {
        // Running off the end is reported at the final token.
        const Token *where = tok ? tok : (toks_.empty() ? nullptr : toks_.back());
        Diagnostic d{DiagnosticKind::Parse, std::nullopt, std::move(msg)};
        if (where)
            d.loc = where->loc;
        throw SyntaxError{std::move(d)};
    }

    static std::string describe(const Token *tok)
    {
        if (!tok)
            return "end of file";
        return std::string(to_string(tok->kind)) + " '" + tok->lexeme + "'";
    }

    [[noreturn]] void expected(std::initializer_list<TokenKind> kinds) const
    {
        std::string set;
        for (auto k : kinds) {
            if (!set.empty())
                set += " or ";
            set += to_string(k);
        }
        fail_at(peek(), "expected " + set + ", found " + describe(peek()));
    }

    const Token &expect(TokenKind kind)
    {
        const Token *t = peek();
        if (!t || t->kind != kind)
            expected({kind});
        ++pos_;
        return *t;
    }

    void recover(std::size_t start)
    {
        if (pos_ == start)
            ++pos_;
        while (!at_end()) {
            const Token *t = peek();
            if (t->kind == TokenKind::Semicolon) {
                ++pos_;
                return;
            }
            if (t->kind == TokenKind::DirectiveName)
                return;
            ++pos_;
        }
    }

    IntArg integer()
    {
        const Token &t = expect(TokenKind::Int);
        std::uint64_t v = 0;
        const auto *first = t.lexeme.data();
        const auto *last = first + t.lexeme.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last)
            fail_at(&t, "integer literal out of range: " + t.lexeme);
        return IntArg{v, t.loc};
    }

    WordArg word(bool allow_string)
    {
        const Token *t = peek();
        if (t && t->kind == TokenKind::Ident) {
            ++pos_;
            return WordArg{t->lexeme, t->loc};
        }
        if (allow_string && t && t->kind == TokenKind::String) {
            ++pos_;
            return WordArg{t->lexeme.substr(1, t->lexeme.size() - 2), t->loc};
        }
        if (allow_string)
            expected({TokenKind::Ident, TokenKind::String});
        expected({TokenKind::Ident});
    }

    EmbeddingArg embedding_group()
    {
        expect(TokenKind::LParen);
        EmbeddingArg g;
        g.name = word(false);
        g.kind = word(false);
        g.items = integer();
        expect(TokenKind::RParen);
        return g;
    }

    EncodingExpr expr()
    {
        const Token *t = peek();
        if (!t || t->kind != TokenKind::Ident)
            expected({TokenKind::Ident});
        const Token *next = peek(1);
        if (!next || next->kind != TokenKind::LParen) {
            ++pos_;
            return EncodingExpr::make_ref(t->lexeme, t->loc);
        }
        const auto kind = lookup_combinator(t->lexeme);
        if (!kind)
            fail_at(t, "unknown combinator '" + t->lexeme + "'");
        pos_ += 2;
        EncodingExpr e;
        e.kind = *kind;
        e.loc = t->loc;
        switch (*kind) {
        case ExprKind::MultiBundle:
            e.operands.push_back(expr());
            break;
        case ExprKind::Ngram:
        case ExprKind::HashTable: {
            const Token *a = peek();
            if (!a || a->kind != TokenKind::Ident)
                expected({TokenKind::Ident});
            ++pos_;
            e.operands.push_back(EncodingExpr::make_ref(a->lexeme, a->loc));
            expect(TokenKind::Comma);
            if (*kind == ExprKind::Ngram) {
                e.param = integer().value;
            } else {
                const Token *b = peek();
                if (!b || b->kind != TokenKind::Ident)
                    expected({TokenKind::Ident});
                ++pos_;
                e.operands.push_back(EncodingExpr::make_ref(b->lexeme, b->loc));
            }
            break;
        }
        case ExprKind::Permute:
            e.operands.push_back(expr());
            expect(TokenKind::Comma);
            e.param = integer().value;
            break;
        default:
            e.operands.push_back(expr());
            expect(TokenKind::Comma);
            e.operands.push_back(expr());
            break;
        }
        expect(TokenKind::RParen);
        return e;
    }

    Directive directive()
    {
        const Token *head = peek();
        if (head->kind != TokenKind::DirectiveName)
            fail_at(head, "expected directive, found " + describe(head));
        const auto kind = lookup_directive(head->lexeme);
        if (!kind)
            fail_at(head, "unknown directive '" + head->lexeme + "'");
        ++pos_;

        Directive d{*kind, {}, head->loc};
        switch (*kind) {
        case DirectiveKind::Name:
            d.args.emplace_back(word(true));
            break;
        case DirectiveKind::Type:
            d.args.emplace_back(word(false));
            break;
        case DirectiveKind::WeightEmbed:
            d.args.emplace_back(embedding_group());
            break;
        case DirectiveKind::Embedding:
            d.args.emplace_back(embedding_group());
            for (;;) {
                const Token *t = peek();
                if (t && t->kind == TokenKind::Comma) {
                    ++pos_;
                    d.args.emplace_back(embedding_group());
                } else if (t && t->kind == TokenKind::LParen) {
                    d.args.emplace_back(embedding_group());
                } else {
                    break;
                }
            }
            break;
        case DirectiveKind::Encoding:
            d.args.emplace_back(expr());
            break;
        case DirectiveKind::Debug: {
            const Token &t = expect(TokenKind::Bool);
            d.args.emplace_back(BoolArg{iequals(t.lexeme, "TRUE"), t.loc});
            break;
        }
        default:
            d.args.emplace_back(integer());
            break;
        }

        const Token *t = peek();
        if (!t || t->kind == TokenKind::DirectiveName)
            fail_at(last_consumed(), "expected ';' after ." + std::string(directive_keyword(*kind)));
        if (t->kind != TokenKind::Semicolon)
            expected({TokenKind::Semicolon});
        ++pos_;
        return d;
    }
};

} // namespace detail

/// Parses the token stream (comments are ignored) into directives. On a
/// syntax error the parser skips to the next ';' or directive and keeps
/// going, so one call reports every malformed directive.
inline Outcome<std::vector<Directive>> parse(std::span<const Token> tokens)
{
    return detail::Parser(tokens).run();
}

} // namespace hdcc::frontend
