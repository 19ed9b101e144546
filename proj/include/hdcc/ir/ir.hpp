#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hdcc::ir {

using NodeId = std::size_t;

enum class Op {
    LoadEmbedding,
    BindEW,
    BundleEW,
    BatchBind,
    MultiBundle,
    Ngram,
    Permute,
    FusedBindBundle,
    FusedNgram,
};

/// FeatureStream: one hypervector per input feature (INPUT_DIM of them).
/// SingleHV: one hypervector.
enum class ShapeType { FeatureStream, SingleHV };

/// How a LoadEmbedding picks its row for feature i: the weight embedding is
/// indexed by the feature's value, every other embedding by i itself.
enum class Indexing { ByValue, ByPosition };

inline std::string_view to_string(Op op)
{
    switch (op) {
    case Op::LoadEmbedding: return "LoadEmbedding";
    case Op::BindEW: return "BindEW";
    case Op::BundleEW: return "BundleEW";
    case Op::BatchBind: return "BatchBind";
    case Op::MultiBundle: return "MultiBundle";
    case Op::Ngram: return "Ngram";
    case Op::Permute: return "Permute";
    case Op::FusedBindBundle: return "FusedBindBundle";
    case Op::FusedNgram: return "FusedNgram";
    }
    return "?";
}

inline std::string_view to_string(ShapeType s)
{
    return s == ShapeType::FeatureStream ? "FeatureStream" : "SingleHV";
}

struct Node {
    Op op = Op::LoadEmbedding;
    std::vector<NodeId> inputs;
    std::string embedding;             // LoadEmbedding only
    Indexing indexing = Indexing::ByPosition; // LoadEmbedding only
    std::uint64_t param = 0;           // Ngram window / Permute shift
    ShapeType shape = ShapeType::SingleHV;

    friend bool operator==(const Node &, const Node &) = default;
};

/// Shape-typed DAG in topological order: every input id is smaller than the
/// id of the node using it. LoadEmbedding nodes are shared.
struct EncodingIR {
    std::vector<Node> nodes;
    NodeId output = 0;

    const Node &operator[](NodeId id) const { return nodes.at(id); }
    const Node &output_node() const { return nodes.at(output); }

    friend bool operator==(const EncodingIR &, const EncodingIR &) = default;
};

inline bool is_fused(Op op) { return op == Op::FusedBindBundle || op == Op::FusedNgram; }

/// `ir-dump` text: one `%id = OP(args) : ShapeType` line per node.
inline std::string dump(const EncodingIR &ir)
{
    std::string out;
    for (NodeId id = 0; id < ir.nodes.size(); ++id) {
        const Node &n = ir.nodes[id];
        out += '%' + std::to_string(id) + " = " + std::string(to_string(n.op)) + "(";
        if (n.op == Op::LoadEmbedding) {
            out += n.embedding;
            out += n.indexing == Indexing::ByValue ? ", by-value" : ", by-position";
        } else {
            for (std::size_t i = 0; i < n.inputs.size(); ++i) {
                if (i)
                    out += ", ";
                out += '%' + std::to_string(n.inputs[i]);
            }
            if (n.op == Op::Ngram || n.op == Op::FusedNgram || n.op == Op::Permute)
                out += ", " + std::to_string(n.param);
        }
        out += ") : ";
        out += to_string(n.shape);
        out += '\n';
    }
    return out;
}

/// Renumbers the nodes reachable from the output in depth-first post-order
/// (operands left to right, shared nodes at first visit) and drops the rest.
inline EncodingIR compact(const EncodingIR &ir)
{
    EncodingIR out;
    std::vector<std::ptrdiff_t> remap(ir.nodes.size(), -1);
    auto visit = [&](auto &self, NodeId id) -> NodeId {
        if (remap[id] >= 0)
            return static_cast<NodeId>(remap[id]);
        Node n = ir.nodes[id];
        for (auto &in : n.inputs)
            in = self(self, in);
        out.nodes.push_back(std::move(n));
        remap[id] = static_cast<std::ptrdiff_t>(out.nodes.size() - 1);
        return out.nodes.size() - 1;
    };
    out.output = visit(visit, ir.output);
    return out;
}

} // namespace hdcc::ir
