#pragma once

#include "hdcc/ir/ir.hpp"

namespace hdcc::ir {

/// Single bottom-up rewrite pass:
///   MultiBundle(BatchBind(a, b)) -> FusedBindBundle(a, b)
///   Ngram(x, n)                  -> FusedNgram(x, n)
/// Orphaned BatchBind nodes are dropped and ids renumbered.
inline EncodingIR fuse(const EncodingIR &ir)
{
    EncodingIR out = ir;
    for (auto &n : out.nodes) {
        if (n.op == Op::MultiBundle && ir.nodes[n.inputs[0]].op == Op::BatchBind) {
            n.op = Op::FusedBindBundle;
            n.inputs = ir.nodes[n.inputs[0]].inputs;
        } else if (n.op == Op::Ngram) {
            n.op = Op::FusedNgram;
        }
    }
    return compact(out);
}

} // namespace hdcc::ir
