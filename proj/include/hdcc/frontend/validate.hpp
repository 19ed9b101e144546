#pragma once

#include "hdcc/frontend/ast.hpp"
#include "hdcc/frontend/lexer.hpp"
#include "hdcc/frontend/parser.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace hdcc::frontend {

/// Directives that must be present.
inline constexpr std::array<DirectiveKind, 8> kRequiredDirectives{
    DirectiveKind::Name,       DirectiveKind::WeightEmbed, DirectiveKind::InputDim,
    DirectiveKind::Encoding,   DirectiveKind::Classes,     DirectiveKind::Dimensions,
    DirectiveKind::TrainSize,  DirectiveKind::TestSize,
};

// Sizes end up as C `int` loop bounds in generated code.
inline constexpr std::uint64_t kMaxCount = std::numeric_limits<std::int32_t>::max();

namespace detail {

class Validator {
public:
    Outcome<ProgramDescription> run(std::span<const Directive> directives)
    {
        std::map<DirectiveKind, const Directive *> seen;
        for (const auto &d : directives) {
            auto [it, inserted] = seen.emplace(d.kind, &d);
            if (!inserted) {
                error(d.name_loc, "duplicate directive ." + std::string(directive_keyword(d.kind)) +
                                      " (first given at line " +
                                      std::to_string(it->second->name_loc.line) + ")");
                continue;
            }
            apply(d);
        }
        for (auto req : kRequiredDirectives)
            if (!seen.contains(req))
                diags_.push_back({DiagnosticKind::Semantic, std::nullopt,
                                  "required directive absent: " + std::string(directive_keyword(req))});

        check_embeddings();
        if (seen.contains(DirectiveKind::Encoding))
            check_refs(desc_.encoding);

        if (!diags_.empty())
            return diags_;
        return desc_;
    }

private:
    ProgramDescription desc_;
    std::vector<Diagnostic> diags_;
    std::vector<SourceLoc> embedding_locs_; // parallel to all_embeddings()

    void error(SourceLoc loc, std::string msg)
    {
        diags_.push_back({DiagnosticKind::Semantic, loc, std::move(msg)});
    }

    std::uint32_t count(const IntArg &a, std::string_view what, std::uint64_t min)
    {
        if (a.value < min) {
            error(a.loc, std::string(what) + " must be at least " + std::to_string(min));
            return static_cast<std::uint32_t>(min);
        }
        if (a.value > kMaxCount) {
            error(a.loc, std::string(what) + " is too large (limit " + std::to_string(kMaxCount) + ")");
            return static_cast<std::uint32_t>(min);
        }
        return static_cast<std::uint32_t>(a.value);
    }

    std::optional<EmbeddingSpec> embedding(const EmbeddingArg &g)
    {
        EmbeddingSpec spec;
        spec.name = g.name.text;
        bool ok = true;
        if (iequals(g.kind.text, "RANDOM")) {
            spec.kind = EmbeddingKind::Random;
        } else if (iequals(g.kind.text, "LEVEL")) {
            spec.kind = EmbeddingKind::Level;
        } else {
            error(g.kind.loc, "unknown embedding kind '" + g.kind.text + "' (expected RANDOM or LEVEL)");
            ok = false;
        }
        spec.items = count(g.items, "embedding item count", 1);
        if (ok && spec.kind == EmbeddingKind::Level && g.items.value < 2) {
            error(g.items.loc, "LEVEL embedding " + spec.name + " needs at least 2 items");
            ok = false;
        }
        if (!ok)
            return std::nullopt;
        return spec;
    }

    static bool is_identifier(std::string_view s)
    {
        if (s.empty() || !is_ident_start(s[0]))
            return false;
        for (char c : s)
            if (!is_ident_char(c))
                return false;
        return true;
    }

    void apply(const Directive &d)
    {
        const auto &arg0 = d.args.front();
        switch (d.kind) {
        case DirectiveKind::Name: {
            const auto &w = std::get<WordArg>(arg0);
            if (!is_identifier(w.text))
                error(w.loc, "program name '" + w.text + "' is not a valid identifier");
            desc_.name = w.text;
            break;
        }
        case DirectiveKind::WeightEmbed: {
            const auto &g = std::get<EmbeddingArg>(arg0);
            if (auto spec = embedding(g))
                desc_.weight_embed = *spec;
            else
                desc_.weight_embed.name = g.name.text;
            weight_loc_ = g.name.loc;
            break;
        }
        case DirectiveKind::Embedding:
            for (const auto &a : d.args) {
                const auto &g = std::get<EmbeddingArg>(a);
                if (auto spec = embedding(g)) {
                    desc_.embeddings.push_back(*spec);
                    extra_locs_.push_back(g.name.loc);
                } else {
                    broken_.insert(g.name.text);
                }
            }
            break;
        case DirectiveKind::InputDim:
            desc_.input_dim = count(std::get<IntArg>(arg0), "INPUT_DIM", 1);
            break;
        case DirectiveKind::Encoding:
            desc_.encoding = std::get<EncodingExpr>(arg0);
            break;
        case DirectiveKind::Classes:
            desc_.classes = count(std::get<IntArg>(arg0), "CLASSES", 2);
            break;
        case DirectiveKind::Type: {
            const auto &w = std::get<WordArg>(arg0);
            if (iequals(w.text, "SEQUENTIAL"))
                desc_.exec_type = ExecType::Sequential;
            else if (iequals(w.text, "PARALLEL"))
                desc_.exec_type = ExecType::Parallel;
            else
                error(w.loc, "unknown execution type '" + w.text + "' (expected SEQUENTIAL or PARALLEL)");
            break;
        }
        case DirectiveKind::Dimensions:
            desc_.dimensions = count(std::get<IntArg>(arg0), "DIMENSIONS", 1);
            break;
        case DirectiveKind::TrainSize:
            desc_.train_size = count(std::get<IntArg>(arg0), "TRAIN_SIZE", 1);
            break;
        case DirectiveKind::TestSize:
            desc_.test_size = count(std::get<IntArg>(arg0), "TEST_SIZE", 1);
            break;
        case DirectiveKind::NumThreads:
            desc_.num_threads = count(std::get<IntArg>(arg0), "NUM_THREADS", 1);
            break;
        case DirectiveKind::VectorSize: {
            const auto &a = std::get<IntArg>(arg0);
            // GCC/Clang vector extensions need a power-of-two byte width.
            if (a.value < 4 || a.value > 4096 || (a.value & (a.value - 1)) != 0) {
                error(a.loc, "VECTOR_SIZE must be a power of two between 4 and 4096 bytes");
            } else {
                desc_.vector_size_bytes = static_cast<std::uint32_t>(a.value);
            }
            break;
        }
        case DirectiveKind::Debug:
            desc_.debug = std::get<BoolArg>(arg0).value;
            break;
        case DirectiveKind::Seed:
            desc_.seed = std::get<IntArg>(arg0).value;
            break;
        }
    }

    std::optional<SourceLoc> weight_loc_;
    std::vector<SourceLoc> extra_locs_;
    std::set<std::string> broken_; // declared but malformed; suppress "unresolved"

    void check_embeddings()
    {
        std::set<std::string> names;
        if (weight_loc_)
            names.insert(desc_.weight_embed.name);
        for (std::size_t i = 0; i < desc_.embeddings.size(); ++i) {
            const auto &e = desc_.embeddings[i];
            if (!names.insert(e.name).second)
                error(extra_locs_[i], "embedding name " + e.name + " declared more than once");
        }
    }

    void check_refs(const EncodingExpr &e)
    {
        if (e.kind == ExprKind::Ref) {
            const EmbeddingSpec *spec = desc_.find_embedding(e.ref);
            if (!spec) {
                if (!broken_.contains(e.ref))
                    error(e.loc, "unresolved embedding " + e.ref);
                return;
            }
            // Non-weight embeddings are indexed by feature position.
            if (spec != &desc_.weight_embed && spec->items < desc_.input_dim)
                error(e.loc, "embedding " + e.ref + " has " + std::to_string(spec->items) +
                                 " items but is indexed by position over INPUT_DIM " +
                                 std::to_string(desc_.input_dim) + " features");
            return;
        }
        for (const auto &op : e.operands)
            check_refs(op);
    }
};

} // namespace detail

/// Builds a ProgramDescription, collecting every violation before failing.
inline Outcome<ProgramDescription> validate(std::span<const Directive> directives)
{
    return detail::Validator{}.run(directives);
}

/// tokenize + parse + validate. Stops at the first stage that reports
/// diagnostics.
inline Outcome<ProgramDescription> load_description(std::string_view source)
{
    auto tokens = tokenize(source);
    if (!tokens)
        return tokens.diagnostics();
    auto directives = parse(*tokens);
    if (!directives)
        return directives.diagnostics();
    return validate(*directives);
}

} // namespace hdcc::frontend
