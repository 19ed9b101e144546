#pragma once

#include "hdcc/core/hypervector.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdcc::core {

/// Class prototypes: integer accumulators plus their L2-normalized form.
struct AssociativeMemory {
    std::uint32_t classes = 0;
    std::uint32_t dimensions = 0;
    std::vector<std::int64_t> counts;    // classes x dimensions
    std::vector<double> norm_rows;       // filled by normalize()
    std::vector<std::uint64_t> trained_samples_per_class;

    AssociativeMemory() = default;
    AssociativeMemory(std::uint32_t k, std::uint32_t d)
        : classes(k), dimensions(d), counts(static_cast<std::size_t>(k) * d, 0), trained_samples_per_class(k, 0)
    {
    }

    std::span<const std::int64_t> counts_row(std::size_t c) const
    {
        return std::span<const std::int64_t>(counts).subspan(c * dimensions, dimensions);
    }
    std::span<const double> norm_row(std::size_t c) const
    {
        return std::span<const double>(norm_rows).subspan(c * dimensions, dimensions);
    }
    bool normalized() const { return norm_rows.size() == counts.size(); }
};

inline void update_memory(AssociativeMemory &mem, HvView enc, std::uint32_t label)
{
    if (label >= mem.classes)
        throw std::out_of_range("label " + std::to_string(label) + " outside [0, " +
                                std::to_string(mem.classes) + ")");
    if (enc.size() != mem.dimensions)
        throw std::invalid_argument("encoding length does not match memory dimensions");
    auto *row = mem.counts.data() + static_cast<std::size_t>(label) * mem.dimensions;
    for (std::size_t j = 0; j < enc.size(); ++j)
        row[j] += enc[j];
    ++mem.trained_samples_per_class[label];
    mem.norm_rows.clear();
}

/// Adds a partial memory element-wise. Integer addition, so the merge order
/// never changes the result.
inline void merge_into(AssociativeMemory &into, const AssociativeMemory &part)
{
    if (into.classes != part.classes || into.dimensions != part.dimensions)
        throw std::invalid_argument("merging memories of different shapes");
    for (std::size_t i = 0; i < into.counts.size(); ++i)
        into.counts[i] += part.counts[i];
    for (std::size_t c = 0; c < into.classes; ++c)
        into.trained_samples_per_class[c] += part.trained_samples_per_class[c];
    into.norm_rows.clear();
}

/// norm_rows[c] = counts[c] / ||counts[c]||; zero rows stay zero. The sum
/// of squares is exact in 64-bit integers before the single sqrt.
inline void normalize(AssociativeMemory &mem)
{
    mem.norm_rows.assign(mem.counts.size(), 0.0);
    for (std::size_t c = 0; c < mem.classes; ++c) {
        const auto row = mem.counts_row(c);
        std::int64_t sumsq = 0;
        for (std::int64_t v : row)
            sumsq += v * v;
        if (sumsq == 0)
            continue;
        const double norm = std::sqrt(static_cast<double>(sumsq));
        double *out = mem.norm_rows.data() + c * mem.dimensions;
        for (std::size_t j = 0; j < row.size(); ++j)
            out[j] = static_cast<double>(row[j]) / norm;
    }
}

/// Similarity of `enc` to class `c`: dot product with the normalized row,
/// summed in element order.
inline double score(const AssociativeMemory &mem, HvView enc, std::size_t c)
{
    const auto row = mem.norm_row(c);
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j)
        s += static_cast<double>(enc[j]) * row[j];
    return s;
}

/// argmax over classes of score(); ties go to the lowest class index.
inline std::uint32_t infer(const AssociativeMemory &mem, HvView enc)
{
    if (!mem.normalized())
        throw std::logic_error("infer() before normalize()");
    if (enc.size() != mem.dimensions)
        throw std::invalid_argument("encoding length does not match memory dimensions");
    std::uint32_t best = 0;
    double best_score = score(mem, enc, 0);
    for (std::uint32_t c = 1; c < mem.classes; ++c) {
        const double s = score(mem, enc, c);
        if (s > best_score) {
            best_score = s;
            best = c;
        }
    }
    return best;
}

/// FNV-1a 64 over the counts as little-endian int64, row-major. Rendered as
/// 16 lowercase hex digits. The generated programs compute the same digest.
inline std::string memory_digest(const AssociativeMemory &mem)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t v : mem.counts) {
        auto u = static_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            h ^= (u >> (8 * b)) & 0xFF;
            h *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace hdcc::core
