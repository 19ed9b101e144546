#pragma once

#include "hdcc/cli/commands.hpp"
#include "hdcc/core/classifier.hpp"
#include "hdcc/frontend/ast.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace hdcc::fixtures {

inline constexpr const char *kVoiceHd = R"(.NAME VOICEHD;
.WEIGHT_EMBED (VALUE LEVEL 100);
.EMBEDDING (ID RANDOM 617);
.INPUT_DIM 617;
.DEBUG TRUE;
.ENCODING MULTIBUNDLE(BATCHBIND(ID,VALUE));
.CLASSES 27;
.TYPE PARALLEL;
.DIMENSIONS 10240;
.TRAIN_SIZE 6238;
.TEST_SIZE 1559;
.VECTOR_SIZE 128;
.NUM_THREADS 4;
)";

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string &tag = "hdcc")
    {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir &) = delete;
    TempDir &operator=(const TempDir &) = delete;

    const std::filesystem::path &path() const { return path_; }
    std::string file(const std::string &name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::string &path, const std::string &text)
{
    std::ofstream(path, std::ios::binary) << text;
}

/// Random but always valid description: input_dim <= 8, items <= 8, every
/// encoding form reachable.
class DescriptionGenerator {
public:
    explicit DescriptionGenerator(std::uint64_t seed) : rng_(seed) {}

    frontend::ProgramDescription next(std::uint32_t dims)
    {
        using frontend::EmbeddingKind;
        frontend::ProgramDescription d;
        d.name = "RND";
        d.input_dim = pick(1, 8);
        d.dimensions = dims;
        d.classes = pick(2, 4);
        d.train_size = 40;
        d.test_size = 20;
        d.seed = rng_();
        d.vector_size_bytes = 1u << pick(2, 7);
        const bool level = coin();
        d.weight_embed = {"W", level ? EmbeddingKind::Level : EmbeddingKind::Random, pick(2, 8)};
        const std::uint32_t extra = pick(0, 2);
        for (std::uint32_t i = 0; i < extra; ++i)
            d.embeddings.push_back({"E" + std::to_string(i), coin() ? EmbeddingKind::Level : EmbeddingKind::Random,
                                    std::max<std::uint32_t>(2, d.input_dim + pick(0, 3))});
        desc_ = &d;
        d.encoding = single(3);
        return d;
    }

    /// Samples for `d`: reals in [-1.2, 1.2] for LEVEL weights (exercising
    /// the clamp), indices in [-1, items) for RANDOM weights.
    std::vector<double> sample(const frontend::ProgramDescription &d)
    {
        std::vector<double> x(d.input_dim);
        for (auto &v : x) {
            if (d.weight_embed.kind == frontend::EmbeddingKind::Level)
                v = std::uniform_real_distribution<double>(-1.2, 1.2)(rng_);
            else
                v = static_cast<double>(pick(0, d.weight_embed.items)) - 1.0;
        }
        return x;
    }

    std::uint32_t pick(std::uint32_t lo, std::uint32_t hi)
    {
        return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng_);
    }
    bool coin() { return pick(0, 1) == 1; }
    std::mt19937_64 &engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    const frontend::ProgramDescription *desc_ = nullptr;

    std::string any_ref()
    {
        const auto &e = desc_->embeddings;
        const std::uint32_t i = pick(0, static_cast<std::uint32_t>(e.size()));
        return i == 0 ? desc_->weight_embed.name : e[i - 1].name;
    }

    frontend::EncodingExpr stream(int depth)
    {
        using frontend::EncodingExpr;
        using frontend::ExprKind;
        const std::uint32_t choice = depth <= 0 ? 0 : pick(0, 3);
        switch (choice) {
        case 1: return EncodingExpr::make(ExprKind::BatchBind, {stream(depth - 1), stream(depth - 1)});
        case 2: return EncodingExpr::make(ExprKind::Permute, {stream(depth - 1)}, pick(0, desc_->dimensions + 2));
        default: return EncodingExpr::make_ref(any_ref());
        }
    }

    frontend::EncodingExpr single(int depth)
    {
        using frontend::EncodingExpr;
        using frontend::ExprKind;
        const std::uint32_t choice = depth <= 0 ? pick(0, 3) : pick(0, 6);
        switch (choice) {
        case 0: return EncodingExpr::make(ExprKind::MultiBundle, {stream(depth - 1)});
        case 1:
            return EncodingExpr::make(ExprKind::MultiBundle, {EncodingExpr::make(
                                                                 ExprKind::BatchBind, {stream(depth - 1), stream(depth - 1)})});
        case 2:
            return EncodingExpr::make(ExprKind::Ngram, {EncodingExpr::make_ref(any_ref())}, pick(1, desc_->input_dim));
        case 3:
            return EncodingExpr::make(ExprKind::HashTable,
                                      {EncodingExpr::make_ref(any_ref()), EncodingExpr::make_ref(any_ref())});
        case 4: return EncodingExpr::make(ExprKind::Bind, {single(depth - 1), single(depth - 1)});
        case 5: return EncodingExpr::make(ExprKind::Bundle, {single(depth - 1), single(depth - 1)});
        default: return EncodingExpr::make(ExprKind::Permute, {single(depth - 1)}, pick(0, desc_->dimensions + 2));
        }
    }
};

inline std::string format_row(const std::vector<double> &x, bool integers)
{
    std::string line;
    char buf[64];
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i)
            line += ',';
        if (integers)
            std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(x[i]));
        else
            std::snprintf(buf, sizeof buf, "%.6f", x[i]);
        line += buf;
    }
    return line;
}

/// Writes `n` samples and labels drawn by `draw(index, label&)`.
template <class Draw>
void write_dataset(const std::string &data_path, const std::string &label_path, std::size_t n, bool integers,
                   Draw &&draw)
{
    std::ofstream data(data_path, std::ios::binary), labels(label_path, std::ios::binary);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t label = 0;
        const std::vector<double> x = draw(i, label);
        data << format_row(x, integers) << '\n';
        labels << label << '\n';
    }
}

/// Random data for a generated description, written to `dir`.
inline core::DataPaths write_random_data(DescriptionGenerator &gen, const frontend::ProgramDescription &d,
                                         const TempDir &dir)
{
    core::DataPaths p{dir.file("train.txt"), dir.file("train_labels.txt"), dir.file("test.txt"),
                      dir.file("test_labels.txt")};
    const bool integers = d.weight_embed.kind == frontend::EmbeddingKind::Random;
    auto draw = [&](std::size_t, std::uint32_t &label) {
        label = gen.pick(0, d.classes - 1);
        return gen.sample(d);
    };
    write_dataset(p.train_data, p.train_labels, d.train_size, integers, draw);
    write_dataset(p.test_data, p.test_labels, d.test_size, integers, draw);
    return p;
}

/// Gaussian clusters around per-class centres in [-0.6, 0.6]^input_dim.
inline core::DataPaths write_clusters(const TempDir &dir, std::uint32_t input_dim, std::uint32_t classes,
                                      std::size_t train, std::size_t test, double sigma, std::uint64_t seed,
                                      const std::string &prefix = "")
{
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> centres(classes, std::vector<double>(input_dim));
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (auto &c : centres)
        for (auto &v : c)
            v = u(rng);
    std::normal_distribution<double> noise(0.0, sigma);
    auto draw = [&](std::size_t, std::uint32_t &label) {
        label = static_cast<std::uint32_t>(rng() % classes);
        std::vector<double> x = centres[label];
        for (auto &v : x)
            v = std::clamp(v + noise(rng), -1.0, 1.0);
        return x;
    };
    core::DataPaths p{dir.file(prefix + "train.txt"), dir.file(prefix + "train_labels.txt"),
                      dir.file(prefix + "test.txt"), dir.file(prefix + "test_labels.txt")};
    write_dataset(p.train_data, p.train_labels, train, false, draw);
    write_dataset(p.test_data, p.test_labels, test, false, draw);
    return p;
}

} // namespace hdcc::fixtures
