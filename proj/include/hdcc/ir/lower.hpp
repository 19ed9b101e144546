#pragma once

#include "hdcc/diagnostic.hpp"
#include "hdcc/frontend/ast.hpp"
#include "hdcc/ir/ir.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hdcc::ir {

namespace detail {

class Lowering {
public:
    explicit Lowering(const frontend::ProgramDescription &desc) : desc_(desc) {}

    Outcome<EncodingIR> run()
    {
        const auto out = lower(desc_.encoding);
        if (out && ir_.nodes[*out].shape != ShapeType::SingleHV)
            error(desc_.encoding.loc, "encoding output must be SingleHV, got FeatureStream "
                                      "(wrap the expression in MULTIBUNDLE or NGRAM)");
        if (!diags_.empty())
            return diags_;
        ir_.output = *out;
        return compact(ir_);
    }

private:
    const frontend::ProgramDescription &desc_;
    EncodingIR ir_;
    std::map<std::string, NodeId> loads_;
    std::vector<Diagnostic> diags_;

    void error(SourceLoc loc, std::string msg)
    {
        diags_.push_back({DiagnosticKind::Type, loc, std::move(msg)});
    }

    NodeId add(Node n)
    {
        ir_.nodes.push_back(std::move(n));
        return ir_.nodes.size() - 1;
    }

    bool require(NodeId id, ShapeType want, const frontend::EncodingExpr &e, int operand)
    {
        const ShapeType got = ir_.nodes[id].shape;
        if (got == want)
            return true;
        error(e.operands[static_cast<std::size_t>(operand)].loc,
              std::string(frontend::combinator_keyword(e.kind)) + " operand " +
                  std::to_string(operand + 1) + " must be " + std::string(to_string(want)) +
                  ", got " + std::string(to_string(got)));
        return false;
    }

    std::optional<NodeId> load(const frontend::EncodingExpr &e)
    {
        if (auto it = loads_.find(e.ref); it != loads_.end())
            return it->second;
        if (!desc_.find_embedding(e.ref)) {
            error(e.loc, "unresolved embedding " + e.ref);
            return std::nullopt;
        }
        Node n;
        n.op = Op::LoadEmbedding;
        n.embedding = e.ref;
        n.indexing = e.ref == desc_.weight_embed.name ? Indexing::ByValue : Indexing::ByPosition;
        n.shape = ShapeType::FeatureStream;
        const NodeId id = add(std::move(n));
        loads_.emplace(e.ref, id);
        return id;
    }

    std::optional<NodeId> lower(const frontend::EncodingExpr &e)
    {
        using frontend::ExprKind;
        switch (e.kind) {
        case ExprKind::Ref:
            return load(e);

        case ExprKind::HashTable: {
            // HASHTABLE(k, v) == MULTIBUNDLE(BATCHBIND(k, v))
            auto k = load(e.operands.at(0));
            auto v = load(e.operands.at(1));
            if (!k || !v)
                return std::nullopt;
            const NodeId bb = add(Node{Op::BatchBind, {*k, *v}, {}, {}, 0, ShapeType::FeatureStream});
            return add(Node{Op::MultiBundle, {bb}, {}, {}, 0, ShapeType::SingleHV});
        }

        case ExprKind::BatchBind:
        case ExprKind::Bind:
        case ExprKind::Bundle: {
            auto a = lower(e.operands.at(0));
            auto b = lower(e.operands.at(1));
            if (!a || !b)
                return std::nullopt;
            const ShapeType want =
                e.kind == ExprKind::BatchBind ? ShapeType::FeatureStream : ShapeType::SingleHV;
            const bool ok_a = require(*a, want, e, 0);
            const bool ok_b = require(*b, want, e, 1);
            if (!ok_a || !ok_b)
                return std::nullopt;
            const Op op = e.kind == ExprKind::BatchBind ? Op::BatchBind
                          : e.kind == ExprKind::Bind    ? Op::BindEW
                                                        : Op::BundleEW;
            return add(Node{op, {*a, *b}, {}, {}, 0, want});
        }

        case ExprKind::MultiBundle: {
            auto x = lower(e.operands.at(0));
            if (!x || !require(*x, ShapeType::FeatureStream, e, 0))
                return std::nullopt;
            return add(Node{Op::MultiBundle, {*x}, {}, {}, 0, ShapeType::SingleHV});
        }

        case ExprKind::Ngram: {
            auto x = load(e.operands.at(0));
            if (!x)
                return std::nullopt;
            if (e.param < 1 || e.param > desc_.input_dim) {
                error(e.loc, "NGRAM window " + std::to_string(e.param) + " outside [1, INPUT_DIM=" +
                                 std::to_string(desc_.input_dim) + "]");
                return std::nullopt;
            }
            return add(Node{Op::Ngram, {*x}, {}, {}, e.param, ShapeType::SingleHV});
        }

        case ExprKind::Permute: {
            auto x = lower(e.operands.at(0));
            if (!x)
                return std::nullopt;
            const ShapeType shape = ir_.nodes[*x].shape;
            return add(Node{Op::Permute, {*x}, {}, {}, e.param, shape});
        }
        }
        return std::nullopt;
    }
};

} // namespace detail

/// Lowers the validated encoding expression to a shape-checked IR.
/// HASHTABLE is expanded here; fusion is a separate pass.
inline Outcome<EncodingIR> lower(const frontend::ProgramDescription &desc)
{
    return detail::Lowering(desc).run();
}

} // namespace hdcc::ir
