#pragma once

#include "hdcc/backend/emit.hpp"
#include "hdcc/core/classifier.hpp"
#include "hdcc/dataio/stream.hpp"

#include <sys/wait.h>

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hdcc::cli {

/// Single-quoted for /bin/sh.
inline std::string shell_quote(const std::string &s)
{
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    return out + "'";
}

/// Exit status of a shell command, or -1 when it did not exit normally.
inline int run_shell(const std::string &command)
{
    const int status = std::system(command.c_str());
    if (status == -1 || !WIFEXITED(status))
        return -1;
    return WEXITSTATUS(status);
}

inline std::string read_file(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Shortest decimal text that reads back to the same double.
inline std::string exact_decimal(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

/// The C compiler named by $CC, default "cc". Empty when it or `make` is
/// not on PATH.
inline std::string find_toolchain()
{
    const char *env = std::getenv("CC");
    const std::string cc = env && *env ? env : "cc";
    if (run_shell("command -v " + shell_quote(cc) + " >/dev/null 2>&1") != 0)
        return {};
    if (run_shell("command -v make >/dev/null 2>&1") != 0)
        return {};
    return cc;
}

struct BuildResult {
    bool ok = false;
    std::string log;
    std::filesystem::path binary;
};

/// Writes the artifact into `dir` and runs its Makefile.
inline BuildResult build_artifact(const backend::EmittedArtifact &a, const std::filesystem::path &dir,
                                  const std::string &cc, const std::string &cflags = {})
{
    backend::write_artifact(a, dir);
    const auto log = dir / "build.log";
    std::string cmd = "make -s -C " + shell_quote(dir.string()) + " CC=" + shell_quote(cc);
    if (!cflags.empty())
        cmd += " CFLAGS=" + shell_quote(cflags);
    cmd += " >" + shell_quote(log.string()) + " 2>&1";
    BuildResult r;
    r.ok = run_shell(cmd) == 0;
    r.log = read_file(log);
    r.binary = dir / a.binary;
    return r;
}

struct BinaryRun {
    int exit_code = -1;
    std::string stdout_text;
    std::string stderr_text;
    std::string digest;
    std::vector<std::uint32_t> predictions;
};

/// Runs a built program on the four data files, collecting the report it
/// writes through HDCC_REPORT.
inline BinaryRun run_binary(const std::filesystem::path &binary, const core::DataPaths &paths,
                            const std::optional<dataio::ValueRange> &range = std::nullopt)
{
    const auto dir = binary.parent_path();
    const auto report = dir / "report.txt";
    const auto out = dir / "stdout.txt";
    const auto err = dir / "stderr.txt";
    std::filesystem::remove(report);
    std::string cmd = "HDCC_REPORT=" + shell_quote(report.string()) + " " + shell_quote(binary.string());
    for (const auto *p : {&paths.train_data, &paths.train_labels, &paths.test_data, &paths.test_labels})
        cmd += " " + shell_quote(*p);
    if (range)
        cmd += " " + shell_quote(exact_decimal(range->min)) + " " + shell_quote(exact_decimal(range->max));
    cmd += " >" + shell_quote(out.string()) + " 2>" + shell_quote(err.string());

    BinaryRun r;
    r.exit_code = run_shell(cmd);
    r.stdout_text = read_file(out);
    r.stderr_text = read_file(err);
    std::ifstream in(report);
    std::string line;
    if (std::getline(in, line) && line.rfind("digest=", 0) == 0)
        r.digest = line.substr(7);
    while (std::getline(in, line))
        r.predictions.push_back(static_cast<std::uint32_t>(std::stoul(line)));
    return r;
}

} // namespace hdcc::cli
