#include "hdcc/core/classifier.hpp"
#include "hdcc/core/encoder.hpp"
#include "hdcc/frontend/validate.hpp"
#include "hdcc/ir/fuse.hpp"
#include "hdcc/ir/lower.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace hdcc;
using namespace hdcc::core;
using frontend::EncodingExpr;
using frontend::ExprKind;
using oracles::TreeOracle;

namespace {

ir::EncodingIR lowered(const frontend::ProgramDescription &d)
{
    auto ir = ir::lower(d);
    EXPECT_TRUE(ir.ok()) << frontend::to_source(d.encoding);
    return *ir;
}

} // namespace

TEST(Encoder, VoiceHdAllMinimumSample)
{
    auto d = *frontend::load_description(fixtures::kVoiceHd);
    d.dimensions = 64;
    const auto tables = build_tables(d);
    const auto ir = ir::fuse(lowered(d));
    const std::vector<double> sample(d.input_dim, -1.0);
    const auto rows = resolve_rows(tables.at("VALUE"), sample);

    Hypervector expected(64, 0);
    for (std::size_t i = 0; i < d.input_dim; ++i)
        expected = bundle(expected, core::bind(tables.at("ID").row(i), tables.at("VALUE").row(0)));
    EXPECT_EQ(encode_sample(ir, tables, d, rows), expected);
}

TEST(Encoder, NgramOnSymbols)
{
    auto d = *frontend::load_description(".NAME L; .WEIGHT_EMBED (SYMBOLS RANDOM 28); .INPUT_DIM 3;"
                                         ".ENCODING NGRAM(SYMBOLS,3); .CLASSES 2; .DIMENSIONS 64;"
                                         ".TRAIN_SIZE 1; .TEST_SIZE 1;");
    const auto tables = build_tables(d);
    const std::vector<double> sample{4, 27, 4};
    const auto rows = resolve_rows(tables.at("SYMBOLS"), sample);
    const auto expected = ngram(forward(tables.at("SYMBOLS"), sample), 3);
    EXPECT_EQ(encode_sample(ir::fuse(lowered(d)), tables, d, rows), expected);
    EXPECT_EQ(encode_sample(lowered(d), tables, d, rows), expected);
}

TEST(Encoder, PermuteZeroIsIdentity)
{
    fixtures::DescriptionGenerator gen(21);
    for (int i = 0; i < 100; ++i) {
        auto d = gen.next(32);
        auto wrapped = d;
        wrapped.encoding = EncodingExpr::make(ExprKind::Permute, {d.encoding}, 0);
        const auto tables = build_tables(d);
        const auto sample = gen.sample(d);
        const auto rows = resolve_rows(tables.at(d.weight_embed.name), sample);
        EXPECT_EQ(encode_sample(ir::fuse(lowered(wrapped)), tables, d, rows),
                  encode_sample(ir::fuse(lowered(d)), tables, d, rows));
    }
}

TEST(Encoder, SkippedFeaturesAreIgnored)
{
    auto d = *frontend::load_description(".NAME L; .WEIGHT_EMBED (S RANDOM 5); .INPUT_DIM 4;"
                                         ".ENCODING NGRAM(S,2); .CLASSES 2; .DIMENSIONS 16;"
                                         ".TRAIN_SIZE 1; .TEST_SIZE 1;");
    const auto tables = build_tables(d);
    const std::vector<double> with_skips{1, -1, 3, -1}, compact{1, 3};
    const auto rows = resolve_rows(tables.at("S"), with_skips);
    EXPECT_EQ(encode_sample(ir::fuse(lowered(d)), tables, d, rows), ngram(forward(tables.at("S"), compact), 2));
    const std::vector<double> one_left{-1, -1, 2, -1};
    EXPECT_EQ(encode_sample(ir::fuse(lowered(d)), tables, d, resolve_rows(tables.at("S"), one_left)),
              Hypervector(16, 0));
}

TEST(Properties, FusionSoundness)
{
    fixtures::DescriptionGenerator gen(22);
    for (int i = 0; i < 1000; ++i) {
        const auto d = gen.next(static_cast<std::uint32_t>(gen.pick(1, 64)));
        const auto tables = build_tables(d);
        const auto unfused = lowered(d);
        const auto fused = ir::fuse(unfused);
        Encoder a(unfused, tables, d), b(fused, tables, d);
        for (int s = 0; s < 3; ++s) {
            const auto sample = gen.sample(d);
            const auto rows = resolve_rows(tables.at(d.weight_embed.name), sample);
            const auto x = a.encode(rows);
            ASSERT_EQ(x, b.encode(rows)) << frontend::to_source(d);
            ASSERT_EQ(x, TreeOracle(d, tables, rows).single(d.encoding)) << frontend::to_source(d);
        }
    }
}

TEST(Properties, EncoderIsReusable)
{
    fixtures::DescriptionGenerator gen(23);
    for (int i = 0; i < 50; ++i) {
        const auto d = gen.next(48);
        const auto tables = build_tables(d);
        const auto ir = ir::fuse(lowered(d));
        Encoder enc(ir, tables, d);
        const auto s1 = gen.sample(d), s2 = gen.sample(d);
        const auto r1 = resolve_rows(tables.at(d.weight_embed.name), s1);
        const auto r2 = resolve_rows(tables.at(d.weight_embed.name), s2);
        const auto first = enc.encode(r1);
        enc.encode(r2);
        EXPECT_EQ(enc.encode(r1), first);
    }
}

TEST(Classifier, WorkerCountDoesNotChangeResults)
{
    fixtures::TempDir dir("hdcc-clf");
    const auto paths = fixtures::write_clusters(dir, 12, 3, 200, 80, 0.2, 4);
    auto d = *frontend::load_description(".NAME C; .WEIGHT_EMBED (V LEVEL 21); .EMBEDDING (ID RANDOM 12);"
                                         ".INPUT_DIM 12; .ENCODING MULTIBUNDLE(BATCHBIND(ID,V)); .CLASSES 3;"
                                         ".DIMENSIONS 256; .TRAIN_SIZE 200; .TEST_SIZE 80;");
    const auto ir = ir::fuse(lowered(d));
    Classifier one(d, ir);
    const auto base = one.run(paths, 1);
    for (std::uint32_t w : {2u, 3u, 8u}) {
        Classifier many(d, ir);
        const auto r = many.run(paths, w);
        EXPECT_EQ(r.memory_digest, base.memory_digest);
        EXPECT_EQ(r.predictions, base.predictions);
    }
    EXPECT_GT(base.accuracy, 0.9);
    EXPECT_EQ(base.predictions.size(), 80u);
}

TEST(Classifier, MemoryHoldsQuantizedTrainingSums)
{
    fixtures::TempDir dir("hdcc-clf");
    const auto paths = fixtures::write_clusters(dir, 5, 2, 30, 10, 0.3, 9);
    auto d = *frontend::load_description(".NAME C; .WEIGHT_EMBED (V LEVEL 8); .EMBEDDING (ID RANDOM 5);"
                                         ".INPUT_DIM 5; .ENCODING MULTIBUNDLE(BATCHBIND(ID,V)); .CLASSES 2;"
                                         ".DIMENSIONS 32; .TRAIN_SIZE 30; .TEST_SIZE 10;");
    const auto ir = ir::fuse(lowered(d));
    Classifier clf(d, ir);
    clf.run(paths, 2);

    AssociativeMemory expected(2, 32);
    auto samples = dataio::open_samples(paths.train_data, d, 30);
    dataio::LabelStream labels(paths.train_labels, 2);
    std::vector<double> x;
    for (int i = 0; i < 30; ++i) {
        samples.next(x);
        update_memory(expected, clf.encode(x), *labels.next());
    }
    EXPECT_EQ(clf.memory().counts, expected.counts);
}
