#pragma once

#include "hdcc/frontend/ast.hpp"
#include "hdcc/ir/ir.hpp"
#include "hdcc/ir/memory_plan.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdcc::backend {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Loop template chosen for one IR node. Feature-stream nodes other than
/// loads also get a wrapper: "kernels/stream_node.c" recomputes the feature
/// on demand, "kernels/materialized_node.c" fills the whole stream once per
/// sample.
struct NodeSchedule {
    ir::NodeId node = 0;
    std::string kernel;
    std::string wrapper;

    friend bool operator==(const NodeSchedule &, const NodeSchedule &) = default;
};

struct CodegenPlan {
    std::uint32_t dimensions = 0;
    std::uint32_t vector_size_bytes = 0;
    std::uint32_t lanes = 0;        // int32 elements per vector
    std::uint32_t padded_dims = 0;  // dimensions rounded up to a multiple of lanes
    std::uint32_t num_batches = 0;  // padded_dims / lanes
    frontend::ExecType exec_type = frontend::ExecType::Sequential;
    std::uint32_t num_threads = 1;
    ir::EncodingIR ir;
    ir::MemoryPlan memory;
    std::vector<NodeSchedule> schedule; // one entry per node, in node order
};

inline std::string kernel_for(const ir::Node &n)
{
    switch (n.op) {
    case ir::Op::LoadEmbedding:
        return n.indexing == ir::Indexing::ByValue ? "kernels/load_by_value.c" : "kernels/load_by_position.c";
    case ir::Op::BatchBind: return "kernels/batchbind.c";
    case ir::Op::Permute:
        return n.shape == ir::ShapeType::FeatureStream ? "kernels/permute_stream.c" : "kernels/permute_single.c";
    case ir::Op::MultiBundle: return "kernels/multibundle.c";
    case ir::Op::FusedBindBundle: return "kernels/fused_bind_bundle.c";
    case ir::Op::Ngram: return "kernels/ngram.c";
    case ir::Op::FusedNgram: return "kernels/fused_ngram.c";
    case ir::Op::BindEW:
    case ir::Op::BundleEW: return "kernels/elementwise.c";
    }
    return {};
}

inline CodegenPlan plan(const ir::EncodingIR &ir, const frontend::ProgramDescription &desc)
{
    const std::uint32_t bytes = desc.vector_size_bytes;
    if (bytes == 0 || bytes % 4 != 0)
        throw ConfigError("vector size " + std::to_string(bytes) + " bytes is not a positive multiple of 4");
    if (desc.dimensions == 0)
        throw ConfigError("dimensions must be positive");
    if (ir.nodes.empty() || ir.output_node().shape != ir::ShapeType::SingleHV)
        throw ConfigError("encoding must produce a single hypervector");

    CodegenPlan p;
    p.dimensions = desc.dimensions;
    p.vector_size_bytes = bytes;
    p.lanes = bytes / 4;
    p.num_batches = (desc.dimensions + p.lanes - 1) / p.lanes;
    p.padded_dims = p.num_batches * p.lanes;
    p.exec_type = desc.exec_type;
    p.num_threads = desc.effective_threads();
    p.ir = ir;
    p.memory = ir::plan_memory(ir, desc);
    for (ir::NodeId id = 0; id < ir.nodes.size(); ++id) {
        const ir::Node &n = ir.nodes[id];
        NodeSchedule s{id, kernel_for(n), {}};
        if (n.shape == ir::ShapeType::FeatureStream && n.op != ir::Op::LoadEmbedding)
            s.wrapper = p.memory.class_of(id) == ir::BufferClass::Materialized ? "kernels/materialized_node.c"
                                                                               : "kernels/stream_node.c";
        p.schedule.push_back(std::move(s));
    }
    return p;
}

} // namespace hdcc::backend
