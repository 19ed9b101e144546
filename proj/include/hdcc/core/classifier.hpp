#pragma once

#include "hdcc/core/embedding.hpp"
#include "hdcc/core/encoder.hpp"
#include "hdcc/core/features.hpp"
#include "hdcc/core/memory.hpp"
#include "hdcc/dataio/stream.hpp"
#include "hdcc/errors.hpp"
#include "hdcc/frontend/ast.hpp"
#include "hdcc/ir/ir.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

namespace hdcc::core {

struct DataPaths {
    std::string train_data;
    std::string train_labels;
    std::string test_data;
    std::string test_labels;
};

struct RunReport {
    double accuracy = 0.0;
    double train_seconds = 0.0;
    double test_seconds = 0.0;
    std::uint64_t correct = 0;
    std::vector<std::uint32_t> predictions;
    std::string memory_digest;
};

/// Reference implementation of the compiled program: one-shot training,
/// normalization, inference. With more than one worker, samples are
/// dispatched round-robin in file order; each worker trains a private
/// partial memory and the partials are summed once, after the last training
/// sample. Results do not depend on the worker count.
class Classifier {
public:
    Classifier(frontend::ProgramDescription desc, ir::EncodingIR ir, dataio::ValueRange range = {})
        : desc_(std::move(desc)), ir_(std::move(ir)), range_(range), tables_(build_tables(desc_)),
          memory_(desc_.classes, desc_.dimensions)
    {
    }

    const frontend::ProgramDescription &description() const { return desc_; }
    const TableSet &tables() const { return tables_; }
    const AssociativeMemory &memory() const { return memory_; }
    const ir::EncodingIR &ir() const { return ir_; }

    std::vector<std::int32_t> rows_for(std::span<const double> sample) const
    {
        return resolve_rows(tables_.at(desc_.weight_embed.name), sample, range_);
    }

    /// Quantized encoding of one raw sample.
    Hypervector encode(std::span<const double> sample) const
    {
        Encoder enc(ir_, tables_, desc_);
        return hard_quantize(enc.encode(rows_for(sample)));
    }

    RunReport run(const DataPaths &paths, std::uint32_t workers)
    {
        using clock = std::chrono::steady_clock;
        if (workers < 1)
            workers = 1;
        RunReport report;

        const auto t0 = clock::now();
        train(paths, workers);
        normalize(memory_);
        const auto t1 = clock::now();
        report.memory_digest = memory_digest(memory_);
        test(paths, workers, report);
        const auto t2 = clock::now();

        report.train_seconds = std::chrono::duration<double>(t1 - t0).count();
        report.test_seconds = std::chrono::duration<double>(t2 - t1).count();
        report.accuracy = static_cast<double>(report.correct) / static_cast<double>(desc_.test_size);
        return report;
    }

private:
    frontend::ProgramDescription desc_;
    ir::EncodingIR ir_;
    dataio::ValueRange range_;
    TableSet tables_;
    AssociativeMemory memory_;

    struct Batch {
        std::vector<std::vector<std::int32_t>> rows;
        std::vector<std::uint32_t> labels;
    };

    /// Reads up to `max` samples with their labels. Throws CountError when
    /// either file runs out before `expected` lines or has more than that.
    bool read_batch(dataio::SampleStream &data, dataio::LabelStream &labels, std::size_t expected,
                    std::size_t max, Batch &batch) const
    {
        batch.rows.clear();
        batch.labels.clear();
        std::vector<double> sample;
        while (batch.rows.size() < max && data.cursor() < expected) {
            if (!data.next(sample))
                throw CountError(data.path(), expected, data.cursor());
            const auto label = labels.next();
            if (!label)
                throw CountError(labels.path(), expected, labels.cursor());
            batch.rows.push_back(rows_for(sample));
            batch.labels.push_back(*label);
        }
        if (data.cursor() == expected) {
            if (const std::size_t extra = data.count_remaining())
                throw CountError(data.path(), expected, expected + extra);
            if (const std::size_t extra = labels.count_remaining())
                throw CountError(labels.path(), expected, expected + extra);
        }
        return !batch.rows.empty();
    }

    template <class Work>
    static void for_each_worker(std::uint32_t workers, Work &&work)
    {
        if (workers == 1) {
            work(0u);
            return;
        }
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::uint32_t w = 0; w < workers; ++w)
            pool.emplace_back([&work, w] { work(w); });
    }

    void train(const DataPaths &paths, std::uint32_t workers)
    {
        auto data = dataio::open_samples(paths.train_data, desc_, desc_.train_size);
        dataio::LabelStream labels(paths.train_labels, desc_.classes);
        std::vector<Encoder> encoders;
        std::vector<AssociativeMemory> partial;
        for (std::uint32_t w = 0; w < workers; ++w) {
            encoders.emplace_back(ir_, tables_, desc_);
            partial.emplace_back(desc_.classes, desc_.dimensions);
        }
        Batch batch;
        const std::size_t batch_size = 64 * static_cast<std::size_t>(workers);
        while (read_batch(data, labels, desc_.train_size, batch_size, batch)) {
            for_each_worker(workers, [&](std::uint32_t w) {
                for (std::size_t k = w; k < batch.rows.size(); k += workers) {
                    const auto enc = hard_quantize(encoders[w].encode(batch.rows[k]));
                    update_memory(partial[w], enc, batch.labels[k]);
                }
            });
        }
        memory_ = AssociativeMemory(desc_.classes, desc_.dimensions);
        for (const auto &p : partial)
            merge_into(memory_, p);
    }

    void test(const DataPaths &paths, std::uint32_t workers, RunReport &report)
    {
        auto data = dataio::open_samples(paths.test_data, desc_, desc_.test_size);
        dataio::LabelStream labels(paths.test_labels, desc_.classes);
        std::vector<Encoder> encoders;
        for (std::uint32_t w = 0; w < workers; ++w)
            encoders.emplace_back(ir_, tables_, desc_);
        std::vector<std::uint64_t> correct(workers, 0);
        report.predictions.assign(desc_.test_size, 0);
        Batch batch;
        const std::size_t batch_size = 64 * static_cast<std::size_t>(workers);
        std::size_t base = 0;
        while (read_batch(data, labels, desc_.test_size, batch_size, batch)) {
            for_each_worker(workers, [&](std::uint32_t w) {
                for (std::size_t k = w; k < batch.rows.size(); k += workers) {
                    const auto enc = hard_quantize(encoders[w].encode(batch.rows[k]));
                    const auto pred = infer(memory_, enc);
                    report.predictions[base + k] = pred;
                    if (pred == batch.labels[k])
                        ++correct[w];
                }
            });
            base += batch.rows.size();
        }
        for (auto c : correct)
            report.correct += c;
    }
};

} // namespace hdcc::core
