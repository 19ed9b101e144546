#pragma once

#include "hdcc/frontend/ast.hpp"
#include "hdcc/ir/ir.hpp"

#include <cstdint>
#include <vector>

namespace hdcc::ir {

enum class BufferClass {
    Accumulator,   // one hypervector summed into in place
    StreamingTemp, // one hypervector, rewritten per feature or per use
    Materialized,  // the whole feature stream, INPUT_DIM hypervectors
};

struct NodeBuffer {
    BufferClass cls = BufferClass::StreamingTemp;
    std::uint64_t elements = 0;
};

struct MemoryPlan {
    std::vector<NodeBuffer> buffers; // indexed by NodeId
    std::uint64_t peak_elements = 0; // all buffers live at once

    BufferClass class_of(NodeId id) const { return buffers.at(id).cls; }
};

/// Marks every FeatureStream node consumed, through FeatureStream edges
/// only, by a fused node. Those nodes are evaluated one feature at a time.
inline std::vector<bool> fused_region(const EncodingIR &ir)
{
    std::vector<bool> in_region(ir.nodes.size(), false);
    for (NodeId id = ir.nodes.size(); id-- > 0;) {
        const Node &n = ir.nodes[id];
        const bool streams_inputs = is_fused(n.op) || (n.shape == ShapeType::FeatureStream && in_region[id]);
        if (!streams_inputs)
            continue;
        for (NodeId in : n.inputs)
            if (ir.nodes[in].shape == ShapeType::FeatureStream)
                in_region[in] = true;
    }
    return in_region;
}

/// Buffer requirement of each node when encoding one sample.
/// Embedding tables are not counted; they are shared by every sample.
inline MemoryPlan plan_memory(const EncodingIR &ir, const frontend::ProgramDescription &desc)
{
    const std::uint64_t d = desc.dimensions;
    const std::uint64_t whole_stream = static_cast<std::uint64_t>(desc.input_dim) * d;
    const auto in_region = fused_region(ir);

    MemoryPlan plan;
    plan.buffers.resize(ir.nodes.size());
    for (NodeId id = 0; id < ir.nodes.size(); ++id) {
        const Node &n = ir.nodes[id];
        NodeBuffer &b = plan.buffers[id];
        switch (n.op) {
        case Op::LoadEmbedding:
        case Op::BindEW:
        case Op::BundleEW:
            b = {BufferClass::StreamingTemp, d};
            break;
        case Op::BatchBind:
            b = in_region[id] ? NodeBuffer{BufferClass::StreamingTemp, d}
                              : NodeBuffer{BufferClass::Materialized, whole_stream};
            break;
        case Op::Permute:
            if (n.shape == ShapeType::SingleHV || in_region[id])
                b = {BufferClass::StreamingTemp, d};
            else
                b = {BufferClass::Materialized, whole_stream};
            break;
        case Op::MultiBundle:
        case Op::FusedBindBundle:
            b = {BufferClass::Accumulator, d};
            break;
        case Op::Ngram:
            // every rotated copy of every item, plus the result
            b = {BufferClass::Materialized, whole_stream * n.param + d};
            break;
        case Op::FusedNgram:
            // accumulator plus one window product
            b = {BufferClass::Accumulator, 2 * d};
            break;
        }
        plan.peak_elements += b.elements;
    }
    return plan;
}

} // namespace hdcc::ir
