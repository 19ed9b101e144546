#pragma once

#include "hdcc/backend/plan.hpp"
#include "hdcc/backend/template.hpp"
#include "hdcc/frontend/ast.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdcc::backend {

struct EmittedArtifact {
    std::map<std::string, std::string> files; // relative path -> content
    std::string binary;                        // entry binary name

    friend bool operator==(const EmittedArtifact &, const EmittedArtifact &) = default;
};

inline std::string binary_name(const frontend::ProgramDescription &desc)
{
    std::string s = desc.name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

inline std::string emit_makefile(const frontend::ProgramDescription &desc)
{
    const bool parallel = desc.exec_type == frontend::ExecType::Parallel;
    return instantiate(fragment("Makefile"), {
                                                 {"NAME", desc.name},
                                                 {"BINARY", binary_name(desc)},
                                                 {"THREAD_CFLAGS", parallel ? " -pthread" : ""},
                                                 {"THREAD_LIBS", parallel ? " -lpthread" : ""},
                                             });
}

namespace detail {

inline std::string id(ir::NodeId n) { return std::to_string(n); }

inline std::size_t table_index(const frontend::ProgramDescription &desc, const std::string &name)
{
    const auto specs = desc.all_embeddings();
    for (std::size_t i = 0; i < specs.size(); ++i)
        if (specs[i].name == name)
            return i;
    throw std::invalid_argument("encoding refers to undeclared embedding " + name);
}

struct WorkspaceCode {
    std::string fields;
    std::string alloc;

    void add(const std::string &field, const std::string &type, const std::string &init)
    {
        fields += "    " + type + " *" + field + ";\n";
        alloc += "    ws->" + field + " = " + init + ";\n";
    }
};

inline WorkspaceCode workspace(const CodegenPlan &p)
{
    WorkspaceCode ws;
    for (ir::NodeId n = 0; n < p.ir.nodes.size(); ++n) {
        const ir::Node &node = p.ir.nodes[n];
        if (node.op == ir::Op::LoadEmbedding)
            continue;
        if (p.schedule[n].wrapper == "kernels/materialized_node.c") {
            ws.add("m" + id(n), "vhv", "hv_alloc((size_t)INPUT_DIM * NUM_BATCH)");
            ws.add("p" + id(n), "unsigned char", "(unsigned char *)hdcc_alloc(INPUT_DIM)");
            continue;
        }
        ws.add("s" + id(n), "vhv", "hv_alloc(NUM_BATCH)");
        if (node.op == ir::Op::FusedNgram || node.op == ir::Op::Ngram)
            ws.add("w" + id(n), "vhv", "hv_alloc(NUM_BATCH)");
        if (node.op == ir::Op::Ngram)
            ws.add("r" + id(n), "vhv",
                   "hv_alloc((size_t)INPUT_DIM * " + std::to_string(node.param) + " * NUM_BATCH)");
    }
    return ws;
}

inline std::string kernels(const CodegenPlan &p, const frontend::ProgramDescription &desc)
{
    std::string out;
    for (const NodeSchedule &s : p.schedule) {
        const ir::Node &n = p.ir.nodes[s.node];
        Bindings b{{"ID", id(s.node)}};
        if (!n.inputs.empty())
            b["A"] = id(n.inputs[0]);
        if (n.inputs.size() > 1)
            b["B"] = id(n.inputs[1]);
        switch (n.op) {
        case ir::Op::LoadEmbedding:
            b["EMBEDDING"] = n.embedding;
            b["TABLE"] = std::to_string(table_index(desc, n.embedding));
            break;
        case ir::Op::Permute: b["SHIFT"] = std::to_string(n.param); break;
        case ir::Op::Ngram:
        case ir::Op::FusedNgram: b["N"] = std::to_string(n.param); break;
        case ir::Op::BindEW: b["OPERATOR"] = "*"; break;
        case ir::Op::BundleEW: b["OPERATOR"] = "+"; break;
        default: break;
        }
        out += instantiate(fragment(s.kernel), b);
        if (!s.wrapper.empty())
            out += instantiate(fragment(s.wrapper), b);
    }
    return out;
}

inline std::string embedding_list(const frontend::ProgramDescription &desc)
{
    std::string out;
    for (const auto &e : desc.all_embeddings())
        out += "    {\"" + e.name + "\", " + (e.kind == frontend::EmbeddingKind::Level ? "1" : "0") + ", " +
               std::to_string(e.items) + "},\n";
    return out;
}

} // namespace detail

/// Main source, runtime header and Makefile for `desc`. The tables are not
/// written out: the program regenerates them from the seed at startup.
inline EmittedArtifact emit_program(const CodegenPlan &p, const frontend::ProgramDescription &desc)
{
    const bool parallel = p.exec_type == frontend::ExecType::Parallel;
    const auto ws = detail::workspace(p);
    const Bindings b{
        {"NAME", desc.name},
        {"DIMENSIONS", std::to_string(p.dimensions)},
        {"VECTOR_SIZE", std::to_string(p.vector_size_bytes)},
        {"LANES", std::to_string(p.lanes)},
        {"PADDED_DIMS", std::to_string(p.padded_dims)},
        {"NUM_BATCH", std::to_string(p.num_batches)},
        {"INPUT_DIM", std::to_string(desc.input_dim)},
        {"CLASSES", std::to_string(desc.classes)},
        {"TRAIN_SIZE", std::to_string(desc.train_size)},
        {"TEST_SIZE", std::to_string(desc.test_size)},
        {"THREADS", std::to_string(parallel ? p.num_threads : 1)},
        {"SEED", std::to_string(desc.seed)},
        {"DEBUG", desc.debug ? "1" : "0"},
        {"WEIGHT_LEVEL", desc.weight_embed.kind == frontend::EmbeddingKind::Level ? "1" : "0"},
        {"WEIGHT_ITEMS", std::to_string(desc.weight_embed.items)},
        {"NODE_COUNT", std::to_string(p.ir.nodes.size())},
        {"EMBEDDING_COUNT", std::to_string(desc.all_embeddings().size())},
        {"EMBEDDINGS", detail::embedding_list(desc)},
        {"WORKSPACE_FIELDS", ws.fields},
        {"WORKSPACE_ALLOC", ws.alloc},
        {"KERNELS", detail::kernels(p, desc)},
        {"OUTPUT", detail::id(p.ir.output)},
        {"DRIVER", fragment(parallel ? "driver_parallel.c" : "driver_sequential.c").content},
    };

    EmittedArtifact a;
    a.binary = binary_name(desc);
    a.files[a.binary + ".c"] = instantiate(fragment("program.c"), b);
    a.files["hdcc_runtime.h"] = fragment("runtime.h").content;
    a.files["Makefile"] = emit_makefile(desc);
    return a;
}

/// Writes every file under `dir` (created if needed). Returns the paths.
inline std::vector<std::filesystem::path> write_artifact(const EmittedArtifact &a, const std::filesystem::path &dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto &[rel, content] : a.files) {
        const auto path = dir / rel;
        std::ofstream out(path, std::ios::binary);
        out << content;
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        written.push_back(path);
    }
    return written;
}

} // namespace hdcc::backend
