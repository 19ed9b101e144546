#pragma once

#include "hdcc/backend/emit.hpp"
#include "hdcc/backend/plan.hpp"
#include "hdcc/cli/toolchain.hpp"
#include "hdcc/core/classifier.hpp"
#include "hdcc/diagnostic.hpp"
#include "hdcc/errors.hpp"
#include "hdcc/frontend/validate.hpp"
#include "hdcc/ir/fuse.hpp"
#include "hdcc/ir/lower.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hdcc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1; // bad arguments or diagnostics
inline constexpr int kExitData = 2;
inline constexpr int kExitSkipped = 77;

struct Options {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> threads;
    std::optional<dataio::ValueRange> range;
    bool auto_range = false;
    std::string out_dir = ".";
    std::optional<std::string> report; // run: digest + predictions file
    bool unfused = false;               // ir-dump: skip fusion
    std::optional<std::uint64_t> perturb_seed; // conformance: seed baked into the binary instead
};

struct Compiled {
    frontend::ProgramDescription desc;
    ir::EncodingIR ir;
};

/// Parse, validate and lower `text`, then apply the command-line overrides
/// (flags win over directives).
inline Outcome<Compiled> compile_text(std::string_view text, const Options &opt, bool fuse = true)
{
    auto desc = frontend::load_description(text);
    if (!desc)
        return desc.diagnostics();
    if (opt.seed)
        desc->seed = *opt.seed;
    if (opt.threads)
        desc->num_threads = *opt.threads;
    auto lowered = ir::lower(*desc);
    if (!lowered)
        return lowered.diagnostics();
    return Compiled{*desc, fuse ? ir::fuse(*lowered) : *lowered};
}

namespace detail {

inline std::optional<std::string> slurp(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Loads and compiles a description file; diagnostics go to `err`.
inline std::optional<Compiled> load(const std::string &path, const Options &opt, std::ostream &err,
                                    bool fuse = true)
{
    const auto text = slurp(path);
    if (!text) {
        err << path << ": cannot open file\n";
        return std::nullopt;
    }
    auto c = compile_text(*text, opt, fuse);
    if (!c) {
        for (const auto &d : c.diagnostics())
            err << render(d, path) << '\n';
        return std::nullopt;
    }
    return *c;
}

inline std::string format_summary(const core::RunReport &r)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, "acc=%.6f\ntrain_s=%.6f\ntest_s=%.6f\n", r.accuracy, r.train_seconds,
                  r.test_seconds);
    return buf;
}

/// The `key=value` line of a program's output, or empty.
inline std::string summary_line(const std::string &text, const std::string &key)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + "=", 0) == 0)
            return line;
    return {};
}

inline dataio::ValueRange resolve_range(const Compiled &c, const core::DataPaths &paths, const Options &opt)
{
    if (opt.range)
        return *opt.range;
    if (opt.auto_range && c.desc.weight_embed.kind == frontend::EmbeddingKind::Level)
        return dataio::prescan_range(paths.train_data, c.desc.input_dim);
    return {};
}

inline std::optional<dataio::ValueRange> binary_range(const Compiled &c, const core::DataPaths &paths,
                                                      const Options &opt)
{
    if (!opt.range && !opt.auto_range)
        return std::nullopt;
    return resolve_range(c, paths, opt);
}

} // namespace detail

/// `check`: parse, validate and type-check only.
inline int cmd_check(const std::string &path, const Options &opt, std::ostream &out, std::ostream &err)
{
    if (!detail::load(path, opt, err))
        return kExitUsage;
    out << "ok\n";
    return kExitOk;
}

inline int cmd_ir_dump(const std::string &path, const Options &opt, std::ostream &out, std::ostream &err)
{
    const auto c = detail::load(path, opt, err, !opt.unfused);
    if (!c)
        return kExitUsage;
    out << ir::dump(c->ir);
    return kExitOk;
}

inline backend::EmittedArtifact emit(const Compiled &c)
{
    return backend::emit_program(backend::plan(c.ir, c.desc), c.desc);
}

inline int cmd_compile(const std::string &path, const Options &opt, std::ostream &out, std::ostream &err)
{
    const auto c = detail::load(path, opt, err);
    if (!c)
        return kExitUsage;
    try {
        for (const auto &p : backend::write_artifact(emit(*c), opt.out_dir))
            out << p.string() << '\n';
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

/// Interpreter run of an already compiled description.
inline core::RunReport run_interpreter(const Compiled &c, const core::DataPaths &paths, const Options &opt,
                                       std::ostream &out)
{
    const auto t0 = std::chrono::steady_clock::now();
    core::Classifier clf(c.desc, c.ir, detail::resolve_range(c, paths, opt));
    const double tables_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto report = clf.run(paths, c.desc.effective_threads());
    if (c.desc.debug) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "dbg: tables_s=%.6f\n", tables_s);
        out << buf << "dbg: train_samples=" << c.desc.train_size << "\ndbg: test_samples=" << c.desc.test_size
            << '\n';
    }
    return report;
}

inline int cmd_run(const std::string &path, const core::DataPaths &paths, const Options &opt, std::ostream &out,
                   std::ostream &err)
{
    const auto c = detail::load(path, opt, err);
    if (!c)
        return kExitUsage;
    try {
        const auto report = run_interpreter(*c, paths, opt, out);
        out << detail::format_summary(report);
        if (opt.report) {
            std::ofstream f(*opt.report);
            if (!f)
                throw IoError(*opt.report, "cannot open report file");
            f << "digest=" << report.memory_digest << '\n';
            for (auto p : report.predictions)
                f << p << '\n';
        }
    } catch (const DataError &e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}

/// Builds the emitted program, runs it and the interpreter on the same data
/// and seed, and compares memory digests and predictions exactly.
inline int cmd_conformance(const std::string &path, const core::DataPaths &paths, const Options &opt,
                           std::ostream &out, std::ostream &err)
{
    const auto c = detail::load(path, opt, err);
    if (!c)
        return kExitUsage;
    const std::string cc = find_toolchain();
    if (cc.empty()) {
        out << "skipped: no target toolchain\n";
        return kExitSkipped;
    }

    Compiled target = *c;
    if (opt.perturb_seed)
        target.desc.seed = *opt.perturb_seed;

    std::ostringstream quiet;
    core::RunReport expected;
    std::optional<dataio::ValueRange> range;
    try {
        range = detail::binary_range(*c, paths, opt);
        expected = run_interpreter(*c, paths, opt, quiet);
    } catch (const DataError &e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }

    const auto dir = std::filesystem::path(opt.out_dir) / ("conformance-" + backend::binary_name(c->desc));
    std::filesystem::remove_all(dir);
    const auto built = build_artifact(emit(target), dir, cc);
    if (!built.ok) {
        err << built.log;
        out << "FAIL: emitted program does not build\n";
        return kExitUsage;
    }
    const auto got = run_binary(built.binary, paths, range);
    if (got.exit_code != 0) {
        err << got.stderr_text;
        out << "FAIL: emitted program exited with status " << got.exit_code << '\n';
        return kExitUsage;
    }

    out << "interpreter digest=" << expected.memory_digest << '\n';
    out << "binary      digest=" << got.digest << '\n';
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < expected.predictions.size(); ++i)
        if (i >= got.predictions.size() || got.predictions[i] != expected.predictions[i])
            ++mismatches;
    if (got.predictions.size() != expected.predictions.size())
        mismatches += got.predictions.size() > expected.predictions.size()
                          ? got.predictions.size() - expected.predictions.size()
                          : 0;
    const bool summary_matches = detail::summary_line(got.stdout_text, "acc") ==
                                 detail::summary_line(detail::format_summary(expected), "acc");
    if (got.digest != expected.memory_digest || mismatches != 0 || !summary_matches) {
        out << "FAIL: " << (got.digest != expected.memory_digest ? "digests differ, " : "") << mismatches << " of "
            << expected.predictions.size() << " predictions differ" << (summary_matches ? "" : ", accuracy differs")
            << '\n';
        return kExitUsage;
    }
    out << "PASS: " << expected.predictions.size() << " predictions identical\n";
    return kExitOk;
}

} // namespace hdcc::cli
