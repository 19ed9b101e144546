#pragma once

#include "hdcc/diagnostic.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hdcc::frontend {

enum class ExprKind { Ref, Bind, Bundle, BatchBind, MultiBundle, Ngram, Permute, HashTable };

/// Encoding combinator tree as written in `.ENCODING`.
///
/// Operand layout per kind:
///   Ref        -- `ref` holds the embedding name, no operands
///   Bind, Bundle, BatchBind, HashTable -- two operands (HashTable: two Refs)
///   MultiBundle -- one operand
///   Ngram      -- one Ref operand, `param` = window length
///   Permute    -- one operand, `param` = shift
/// Equality is structural and ignores source locations.
struct EncodingExpr {
    ExprKind kind = ExprKind::Ref;
    std::string ref;
    std::uint64_t param = 0;
    std::vector<EncodingExpr> operands;
    SourceLoc loc;

    static EncodingExpr make_ref(std::string name, SourceLoc loc = {})
    {
        EncodingExpr e;
        e.kind = ExprKind::Ref;
        e.ref = std::move(name);
        e.loc = loc;
        return e;
    }

    static EncodingExpr make(ExprKind kind, std::vector<EncodingExpr> operands,
                             std::uint64_t param = 0, SourceLoc loc = {})
    {
        EncodingExpr e;
        e.kind = kind;
        e.operands = std::move(operands);
        e.param = param;
        e.loc = loc;
        return e;
    }

    friend bool operator==(const EncodingExpr &a, const EncodingExpr &b)
    {
        return a.kind == b.kind && a.ref == b.ref && a.param == b.param && a.operands == b.operands;
    }
};

inline std::string_view combinator_keyword(ExprKind kind)
{
    switch (kind) {
    case ExprKind::Ref: return "";
    case ExprKind::Bind: return "BIND";
    case ExprKind::Bundle: return "BUNDLE";
    case ExprKind::BatchBind: return "BATCHBIND";
    case ExprKind::MultiBundle: return "MULTIBUNDLE";
    case ExprKind::Ngram: return "NGRAM";
    case ExprKind::Permute: return "PERMUTE";
    case ExprKind::HashTable: return "HASHTABLE";
    }
    return "";
}

/// Canonical source form, e.g. `MULTIBUNDLE(BATCHBIND(ID,VALUE))`.
inline std::string to_source(const EncodingExpr &e)
{
    switch (e.kind) {
    case ExprKind::Ref: return e.ref;
    case ExprKind::Ngram:
    case ExprKind::Permute:
        return std::string(combinator_keyword(e.kind)) + "(" + to_source(e.operands.at(0)) + "," +
               std::to_string(e.param) + ")";
    case ExprKind::MultiBundle:
        return std::string(combinator_keyword(e.kind)) + "(" + to_source(e.operands.at(0)) + ")";
    default:
        return std::string(combinator_keyword(e.kind)) + "(" + to_source(e.operands.at(0)) + "," +
               to_source(e.operands.at(1)) + ")";
    }
}

enum class DirectiveKind {
    Name,
    WeightEmbed,
    Embedding,
    InputDim,
    Encoding,
    Classes,
    Type,
    Dimensions,
    TrainSize,
    TestSize,
    NumThreads,
    VectorSize,
    Debug,
    Seed,
};

inline std::string_view directive_keyword(DirectiveKind kind)
{
    switch (kind) {
    case DirectiveKind::Name: return "NAME";
    case DirectiveKind::WeightEmbed: return "WEIGHT_EMBED";
    case DirectiveKind::Embedding: return "EMBEDDING";
    case DirectiveKind::InputDim: return "INPUT_DIM";
    case DirectiveKind::Encoding: return "ENCODING";
    case DirectiveKind::Classes: return "CLASSES";
    case DirectiveKind::Type: return "TYPE";
    case DirectiveKind::Dimensions: return "DIMENSIONS";
    case DirectiveKind::TrainSize: return "TRAIN_SIZE";
    case DirectiveKind::TestSize: return "TEST_SIZE";
    case DirectiveKind::NumThreads: return "NUM_THREADS";
    case DirectiveKind::VectorSize: return "VECTOR_SIZE";
    case DirectiveKind::Debug: return "DEBUG";
    case DirectiveKind::Seed: return "SEED";
    }
    return "";
}

struct IntArg {
    std::uint64_t value = 0;
    SourceLoc loc;
};

struct BoolArg {
    bool value = false;
    SourceLoc loc;
};

/// An identifier or a quoted string (quotes stripped).
struct WordArg {
    std::string text;
    SourceLoc loc;
};

/// `(NAME KIND ITEMS)` group from `.WEIGHT_EMBED` / `.EMBEDDING`.
struct EmbeddingArg {
    WordArg name;
    WordArg kind;
    IntArg items;
};

using DirectiveArg = std::variant<IntArg, BoolArg, WordArg, EmbeddingArg, EncodingExpr>;

struct Directive {
    DirectiveKind kind;
    std::vector<DirectiveArg> args;
    SourceLoc name_loc; // position of the `.NAME` token
};

enum class EmbeddingKind { Random, Level };
enum class ExecType { Sequential, Parallel };

inline std::string_view to_string(EmbeddingKind k) { return k == EmbeddingKind::Random ? "RANDOM" : "LEVEL"; }
inline std::string_view to_string(ExecType t) { return t == ExecType::Sequential ? "SEQUENTIAL" : "PARALLEL"; }

struct EmbeddingSpec {
    std::string name;
    EmbeddingKind kind = EmbeddingKind::Random;
    std::uint32_t items = 1;

    friend bool operator==(const EmbeddingSpec &, const EmbeddingSpec &) = default;
};

/// A validated description with defaults applied.
struct ProgramDescription {
    std::string name;
    EmbeddingSpec weight_embed;
    std::vector<EmbeddingSpec> embeddings;
    std::uint32_t input_dim = 1;
    EncodingExpr encoding;
    std::uint32_t classes = 2;
    ExecType exec_type = ExecType::Sequential;
    std::uint32_t dimensions = 1;
    std::uint32_t train_size = 1;
    std::uint32_t test_size = 1;
    std::uint32_t num_threads = 1;
    std::uint32_t vector_size_bytes = 128;
    bool debug = false;
    std::uint64_t seed = 42;

    friend bool operator==(const ProgramDescription &, const ProgramDescription &) = default;

    /// Weight embedding first, then `.EMBEDDING` entries in declaration
    /// order. The position in this list is the table's PRNG stream id.
    std::vector<EmbeddingSpec> all_embeddings() const
    {
        std::vector<EmbeddingSpec> out;
        out.reserve(embeddings.size() + 1);
        out.push_back(weight_embed);
        out.insert(out.end(), embeddings.begin(), embeddings.end());
        return out;
    }

    const EmbeddingSpec *find_embedding(std::string_view n) const
    {
        if (weight_embed.name == n)
            return &weight_embed;
        for (const auto &e : embeddings)
            if (e.name == n)
                return &e;
        return nullptr;
    }

    /// Effective worker count; sequential programs always run one.
    std::uint32_t effective_threads() const
    {
        return exec_type == ExecType::Parallel ? num_threads : 1;
    }
};

inline std::string embedding_group(const EmbeddingSpec &e)
{
    return "(" + e.name + " " + std::string(to_string(e.kind)) + " " + std::to_string(e.items) + ")";
}

/// Canonical text that parses back to an equal description.
inline std::string to_source(const ProgramDescription &d)
{
    std::string out;
    auto line = [&](std::string_view key, const std::string &value) {
        out += '.';
        out += key;
        out += ' ';
        out += value;
        out += ";\n";
    };
    line("NAME", d.name);
    line("WEIGHT_EMBED", embedding_group(d.weight_embed));
    if (!d.embeddings.empty()) {
        std::string groups;
        for (std::size_t i = 0; i < d.embeddings.size(); ++i) {
            if (i)
                groups += ", ";
            groups += embedding_group(d.embeddings[i]);
        }
        line("EMBEDDING", groups);
    }
    line("INPUT_DIM", std::to_string(d.input_dim));
    line("ENCODING", to_source(d.encoding));
    line("CLASSES", std::to_string(d.classes));
    line("TYPE", std::string(to_string(d.exec_type)));
    line("DIMENSIONS", std::to_string(d.dimensions));
    line("TRAIN_SIZE", std::to_string(d.train_size));
    line("TEST_SIZE", std::to_string(d.test_size));
    line("NUM_THREADS", std::to_string(d.num_threads));
    line("VECTOR_SIZE", std::to_string(d.vector_size_bytes));
    line("DEBUG", d.debug ? "TRUE" : "FALSE");
    line("SEED", std::to_string(d.seed));
    return out;
}

} // namespace hdcc::frontend
