#pragma once

#include "hdcc/core/embedding.hpp"
#include "hdcc/core/features.hpp"
#include "hdcc/core/hypervector.hpp"
#include "hdcc/frontend/ast.hpp"
#include "hdcc/ir/ir.hpp"
#include "hdcc/ir/memory_plan.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hdcc::core {

/// Evaluates an EncodingIR on one sample at a time.
///
/// The memory plan decides how each feature-stream node is computed: nodes
/// inside a fused region are produced one feature at a time into a single
/// scratch hypervector, materialized nodes are computed for every feature
/// up front. Fused and unfused IRs of the same encoding give identical
/// integer results. Not thread-safe; use one Encoder per worker.
class Encoder {
public:
    Encoder(const ir::EncodingIR &ir, const TableSet &tables, const frontend::ProgramDescription &desc)
        : ir_(ir), plan_(ir::plan_memory(ir, desc)), dims_(desc.dimensions), input_dim_(desc.input_dim),
          scratch_(ir.nodes.size()), window_(ir.nodes.size()), cache_(ir.nodes.size()),
          present_(ir.nodes.size()), cached_(ir.nodes.size(), false), tables_(ir.nodes.size(), nullptr)
    {
        for (ir::NodeId id = 0; id < ir.nodes.size(); ++id) {
            const auto &n = ir.nodes[id];
            scratch_[id].assign(dims_, 0);
            if (n.op == ir::Op::FusedNgram)
                window_[id].assign(dims_, 0);
            if (n.op == ir::Op::LoadEmbedding) {
                auto it = tables.find(n.embedding);
                if (it == tables.end())
                    throw std::invalid_argument("no table for embedding " + n.embedding);
                tables_[id] = &it->second;
            }
        }
    }

    const ir::MemoryPlan &plan() const { return plan_; }

    /// `rows[i]` is the weight-table row of feature i, or kSkipRow.
    /// Returns the unquantized encoding.
    Hypervector encode(std::span<const std::int32_t> rows)
    {
        if (rows.size() != input_dim_)
            throw std::invalid_argument("sample has " + std::to_string(rows.size()) + " features, expected " +
                                        std::to_string(input_dim_));
        rows_ = rows;
        std::fill(cached_.begin(), cached_.end(), false);
        const std::int32_t *out = single(ir_.output);
        return Hypervector(out, out + dims_);
    }

private:
    const ir::EncodingIR &ir_;
    ir::MemoryPlan plan_;
    std::uint32_t dims_;
    std::uint32_t input_dim_;
    std::vector<Hypervector> scratch_;
    std::vector<Hypervector> window_;
    std::vector<std::vector<std::int32_t>> cache_; // materialized streams
    std::vector<std::vector<bool>> present_;
    std::vector<bool> cached_;
    std::vector<const EmbeddingTable *> tables_;
    std::span<const std::int32_t> rows_;

    void rotate(const std::int32_t *in, std::int32_t *out, std::uint64_t k) const
    {
        const std::size_t shift = static_cast<std::size_t>(k % dims_);
        std::copy(in, in + (dims_ - shift), out + shift);
        std::copy(in + (dims_ - shift), in + dims_, out);
    }

    /// Feature i of a FeatureStream node, or nullptr when the feature is
    /// skipped.
    const std::int32_t *feature(ir::NodeId id, std::size_t i)
    {
        if (plan_.class_of(id) == ir::BufferClass::Materialized) {
            materialize(id);
            return present_[id][i] ? cache_[id].data() + i * dims_ : nullptr;
        }
        return compute_feature(id, i, scratch_[id].data());
    }

    const std::int32_t *compute_feature(ir::NodeId id, std::size_t i, std::int32_t *out)
    {
        const ir::Node &n = ir_.nodes[id];
        switch (n.op) {
        case ir::Op::LoadEmbedding: {
            if (n.indexing == ir::Indexing::ByPosition)
                return tables_[id]->row(i).data();
            const std::int32_t r = rows_[i];
            return r == kSkipRow ? nullptr : tables_[id]->row(static_cast<std::size_t>(r)).data();
        }
        case ir::Op::BatchBind: {
            const std::int32_t *a = feature(n.inputs[0], i);
            if (!a)
                return nullptr;
            const std::int32_t *b = feature(n.inputs[1], i);
            if (!b)
                return nullptr;
            for (std::size_t j = 0; j < dims_; ++j)
                out[j] = wrap_mul(a[j], b[j]);
            return out;
        }
        case ir::Op::Permute: {
            const std::int32_t *a = feature(n.inputs[0], i);
            if (!a)
                return nullptr;
            rotate(a, out, n.param);
            return out;
        }
        default:
            throw std::logic_error("node is not a feature stream");
        }
    }

    void materialize(ir::NodeId id)
    {
        if (cached_[id])
            return;
        cache_[id].assign(static_cast<std::size_t>(input_dim_) * dims_, 0);
        present_[id].assign(input_dim_, false);
        for (std::size_t i = 0; i < input_dim_; ++i) {
            std::int32_t *slot = cache_[id].data() + i * dims_;
            const std::int32_t *p = compute_feature(id, i, slot);
            if (p) {
                if (p != slot)
                    std::copy(p, p + dims_, slot);
                present_[id][i] = true;
            }
        }
        cached_[id] = true;
    }

    /// Present items of a stream, in feature order.
    std::vector<const std::int32_t *> items(ir::NodeId id)
    {
        std::vector<const std::int32_t *> out;
        for (std::size_t i = 0; i < input_dim_; ++i)
            if (const std::int32_t *p = feature(id, i))
                out.push_back(p);
        return out;
    }

    const std::int32_t *single(ir::NodeId id)
    {
        const ir::Node &n = ir_.nodes[id];
        std::int32_t *out = scratch_[id].data();
        switch (n.op) {
        case ir::Op::MultiBundle: {
            std::fill(out, out + dims_, 0);
            for (std::size_t i = 0; i < input_dim_; ++i)
                if (const std::int32_t *p = feature(n.inputs[0], i))
                    for (std::size_t j = 0; j < dims_; ++j)
                        out[j] = wrap_add(out[j], p[j]);
            return out;
        }
        case ir::Op::FusedBindBundle: {
            std::fill(out, out + dims_, 0);
            for (std::size_t i = 0; i < input_dim_; ++i) {
                const std::int32_t *a = feature(n.inputs[0], i);
                if (!a)
                    continue;
                const std::int32_t *b = feature(n.inputs[1], i);
                if (!b)
                    continue;
                for (std::size_t j = 0; j < dims_; ++j)
                    out[j] = wrap_add(out[j], wrap_mul(a[j], b[j]));
            }
            return out;
        }
        case ir::Op::Ngram: {
            // Every item rotated by every shift the windows need, then
            // combined.
            std::fill(out, out + dims_, 0);
            const auto seq = items(n.inputs[0]);
            const std::size_t w = n.param;
            if (seq.size() < w)
                return out;
            std::vector<std::vector<Hypervector>> rotated(w);
            for (std::size_t s = 0; s < w; ++s)
                for (const auto *p : seq)
                    rotated[s].push_back(permute(HvView(p, dims_), s));
            for (std::size_t i = 0; i + w <= seq.size(); ++i) {
                Hypervector term = rotated[w - 1][i];
                for (std::size_t j = 1; j < w; ++j)
                    term = core::bind(term, rotated[w - j - 1][i + j]);
                for (std::size_t e = 0; e < dims_; ++e)
                    out[e] = wrap_add(out[e], term[e]);
            }
            return out;
        }
        case ir::Op::FusedNgram: {
            // Sliding window over the last `w` present items; rotations are
            // index arithmetic, nothing rotated is stored.
            std::fill(out, out + dims_, 0);
            const std::size_t w = n.param;
            std::vector<const std::int32_t *> ring(w, nullptr);
            std::size_t seen = 0;
            std::int32_t *term = window_[id].data();
            for (std::size_t i = 0; i < input_dim_; ++i) {
                const std::int32_t *p = feature(n.inputs[0], i);
                if (!p)
                    continue;
                ring[seen % w] = p;
                ++seen;
                if (seen < w)
                    continue;
                const std::size_t first = seen - w; // sequence index of window start
                for (std::size_t e = 0; e < dims_; ++e) {
                    std::int32_t prod = 1;
                    for (std::size_t j = 0; j < w; ++j) {
                        const std::size_t shift = (w - j - 1) % dims_;
                        const std::size_t src = e >= shift ? e - shift : e + dims_ - shift;
                        prod = wrap_mul(prod, ring[(first + j) % w][src]);
                    }
                    term[e] = prod;
                }
                for (std::size_t e = 0; e < dims_; ++e)
                    out[e] = wrap_add(out[e], term[e]);
            }
            return out;
        }
        case ir::Op::BindEW:
        case ir::Op::BundleEW: {
            const std::int32_t *a = single(n.inputs[0]);
            const std::int32_t *b = single(n.inputs[1]);
            for (std::size_t j = 0; j < dims_; ++j)
                out[j] = n.op == ir::Op::BindEW ? wrap_mul(a[j], b[j]) : wrap_add(a[j], b[j]);
            return out;
        }
        case ir::Op::Permute: {
            rotate(single(n.inputs[0]), out, n.param);
            return out;
        }
        default:
            throw std::logic_error("node is not a single hypervector");
        }
    }
};

/// encode_sample: evaluates the IR on one sample's resolved rows.
inline Hypervector encode_sample(const ir::EncodingIR &ir, const TableSet &tables,
                                 const frontend::ProgramDescription &desc, std::span<const std::int32_t> rows)
{
    Encoder enc(ir, tables, desc);
    return enc.encode(rows);
}

} // namespace hdcc::core
