#include "hdcc/cli/commands.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

using namespace hdcc;
using namespace hdcc::cli;

namespace {

const std::string kApps = std::string(HDCC_SOURCE_DIR) + "/apps/";

struct Result {
    int code;
    std::string out;
    std::string err;
};

template <class F>
Result capture(F &&f)
{
    std::ostringstream out, err;
    const int code = f(out, err);
    return {code, out.str(), err.str()};
}

const char *kClusterDescription = ".NAME CLUSTERS; .WEIGHT_EMBED (V LEVEL 16); .EMBEDDING (ID RANDOM 8);"
                                  ".INPUT_DIM 8; .ENCODING MULTIBUNDLE(BATCHBIND(ID,V)); .CLASSES 3;"
                                  ".DIMENSIONS 256; .VECTOR_SIZE 32; .TYPE PARALLEL; .NUM_THREADS 2;"
                                  ".TRAIN_SIZE 90; .TEST_SIZE 10;";

class CliTest : public ::testing::Test {
protected:
    fixtures::TempDir dir{"hdcc-cli"};
    core::DataPaths paths;
    std::string desc;

    void SetUp() override
    {
        paths = fixtures::write_clusters(dir, 8, 3, 90, 10, 0.2, 17);
        desc = dir.file("clusters.hdcc");
        fixtures::write_text(desc, kClusterDescription);
    }

    Result run(const Options &opt = {}) const
    {
        return capture([&](auto &o, auto &e) { return cmd_run(desc, paths, opt, o, e); });
    }
};

} // namespace

TEST(Check, BundledApplications)
{
    for (const char *app : {"voicehd", "emg", "languages", "mnist"}) {
        const auto r = capture([&](auto &o, auto &e) { return cmd_check(kApps + app + ".hdcc", {}, o, e); });
        EXPECT_EQ(r.code, kExitOk) << app << r.err;
        EXPECT_EQ(r.out, "ok\n");
    }
}

TEST(Check, DiagnosticsAreRendered)
{
    fixtures::TempDir dir("hdcc-cli");
    const auto path = dir.file("bad.hdcc");
    fixtures::write_text(path, ".NAME X;\n.CLASSES 0;\n");
    const auto r = capture([&](auto &o, auto &e) { return cmd_check(path, {}, o, e); });
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find(path + ":2:"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("semantic error:"), std::string::npos);
    EXPECT_NE(r.err.find("required directive absent: ENCODING"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(Check, MissingFile)
{
    const auto r = capture([](auto &o, auto &e) { return cmd_check("/nonexistent.hdcc", {}, o, e); });
    EXPECT_EQ(r.code, kExitUsage);
}

TEST(IrDump, FusedAndUnfused)
{
    const auto path = kApps + "voicehd.hdcc";
    const auto fused = capture([&](auto &o, auto &e) { return cmd_ir_dump(path, {}, o, e); });
    EXPECT_EQ(fused.code, kExitOk);
    EXPECT_NE(fused.out.find("FusedBindBundle(%0, %1) : SingleHV"), std::string::npos);
    Options opt;
    opt.unfused = true;
    const auto raw = capture([&](auto &o, auto &e) { return cmd_ir_dump(path, opt, o, e); });
    EXPECT_NE(raw.out.find("BatchBind(%0, %1) : FeatureStream"), std::string::npos);
    EXPECT_EQ(raw.out.find("Fused"), std::string::npos);
}

TEST(Compile, WritesArtifact)
{
    fixtures::TempDir dir("hdcc-cli");
    Options opt;
    opt.out_dir = dir.file("out");
    const auto r = capture([&](auto &o, auto &e) { return cmd_compile(kApps + "voicehd.hdcc", opt, o, e); });
    ASSERT_EQ(r.code, kExitOk) << r.err;
    for (const char *f : {"voicehd.c", "hdcc_runtime.h", "Makefile"})
        EXPECT_TRUE(std::filesystem::exists(dir.path() / "out" / f)) << f;
}

TEST(Compile, SeedOverrideIsBakedIn)
{
    fixtures::TempDir dir("hdcc-cli");
    Options opt;
    opt.out_dir = dir.path().string();
    opt.seed = 777;
    ASSERT_EQ(capture([&](auto &o, auto &e) { return cmd_compile(kApps + "voicehd.hdcc", opt, o, e); }).code,
              kExitOk);
    EXPECT_NE(read_file(dir.path() / "voicehd.c").find("UINT64_C(777)"), std::string::npos);
}

TEST_F(CliTest, RunPrintsSummary)
{
    const auto r = run();
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("acc=", 0), 0u);
    EXPECT_NE(r.out.find("\ntrain_s="), std::string::npos);
    EXPECT_NE(r.out.find("\ntest_s="), std::string::npos);
}

TEST_F(CliTest, RunIsDeterministic)
{
    Options opt;
    opt.report = dir.file("r1.txt");
    ASSERT_EQ(run(opt).code, kExitOk);
    opt.report = dir.file("r2.txt");
    ASSERT_EQ(run(opt).code, kExitOk);
    const auto a = read_file(dir.file("r1.txt"));
    EXPECT_EQ(a, read_file(dir.file("r2.txt")));
    EXPECT_EQ(a.rfind("digest=", 0), 0u);
    EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 11);
}

TEST_F(CliTest, SeedAndThreadOverrides)
{
    Options opt;
    opt.report = dir.file("base.txt");
    run(opt);
    opt.threads = 5;
    opt.report = dir.file("threads.txt");
    run(opt);
    opt.seed = 12345;
    opt.report = dir.file("seed.txt");
    run(opt);
    const auto base = read_file(dir.file("base.txt"));
    EXPECT_EQ(base, read_file(dir.file("threads.txt")));
    EXPECT_NE(base.substr(0, 24), read_file(dir.file("seed.txt")).substr(0, 24));
}

TEST_F(CliTest, MissingLabelIsDataError)
{
    std::string labels = read_file(paths.test_labels);
    labels.erase(labels.rfind('\n', labels.size() - 2) + 1);
    fixtures::write_text(paths.test_labels, labels);
    const auto r = run();
    EXPECT_EQ(r.code, kExitData);
    EXPECT_NE(r.err.find("expected 10 lines, found 9"), std::string::npos) << r.err;
}

TEST_F(CliTest, ExtraSampleIsDataError)
{
    fixtures::write_text(paths.train_data, read_file(paths.train_data) + "0,0,0,0,0,0,0,0\n");
    EXPECT_EQ(run().code, kExitData);
}

TEST_F(CliTest, MalformedDataIsDataError)
{
    fixtures::write_text(paths.test_data, "0.1,0.2\n");
    const auto r = run();
    EXPECT_EQ(r.code, kExitData);
    EXPECT_NE(r.err.find(paths.test_data + ":1:"), std::string::npos) << r.err;
}

TEST_F(CliTest, AutoRange)
{
    Options opt;
    opt.auto_range = true;
    EXPECT_EQ(run(opt).code, kExitOk);
    std::string flat;
    for (int i = 0; i < 90; ++i)
        flat += "0.5,0.5,0.5,0.5,0.5,0.5,0.5,0.5\n";
    fixtures::write_text(paths.train_data, flat);
    EXPECT_EQ(run(opt).code, kExitData);
}

TEST_F(CliTest, ConformanceSkipsWithoutToolchain)
{
    const char *old = std::getenv("CC");
    const std::string saved = old ? old : "";
    ::setenv("CC", "/nonexistent/hdcc-cc", 1);
    Options opt;
    opt.out_dir = dir.path().string();
    const auto r = capture([&](auto &o, auto &e) { return cmd_conformance(desc, paths, opt, o, e); });
    if (old)
        ::setenv("CC", saved.c_str(), 1);
    else
        ::unsetenv("CC");
    EXPECT_EQ(r.code, kExitSkipped);
    EXPECT_EQ(r.out, "skipped: no target toolchain\n");
}

TEST_F(CliTest, ConformancePassesAndDetectsPerturbation)
{
    if (find_toolchain().empty())
        GTEST_SKIP() << "no C toolchain";
    Options opt;
    opt.out_dir = dir.path().string();
    const auto ok = capture([&](auto &o, auto &e) { return cmd_conformance(desc, paths, opt, o, e); });
    EXPECT_EQ(ok.code, kExitOk) << ok.out << ok.err;
    EXPECT_NE(ok.out.find("PASS: 10 predictions identical"), std::string::npos) << ok.out;

    opt.perturb_seed = 99;
    const auto bad = capture([&](auto &o, auto &e) { return cmd_conformance(desc, paths, opt, o, e); });
    EXPECT_EQ(bad.code, kExitUsage);
    EXPECT_NE(bad.out.find("FAIL: digests differ"), std::string::npos) << bad.out;
}

TEST(Binary, ArgumentHandling)
{
    const std::string hdcc = shell_quote(HDCC_CLI_PATH);
    const std::string app = shell_quote(kApps + "voicehd.hdcc");
    EXPECT_EQ(run_shell(hdcc + " >/dev/null 2>&1"), 1);
    EXPECT_EQ(run_shell(hdcc + " check " + app + " >/dev/null 2>&1"), 0);
    EXPECT_EQ(run_shell(hdcc + " --range 1 0 check " + app + " >/dev/null 2>&1"), 1);
    EXPECT_EQ(run_shell(hdcc + " --threads 0 check " + app + " >/dev/null 2>&1"), 1);
    EXPECT_EQ(run_shell(hdcc + " frobnicate >/dev/null 2>&1"), 1);
    EXPECT_EQ(run_shell(hdcc + " --help >/dev/null 2>&1"), 0);
}
