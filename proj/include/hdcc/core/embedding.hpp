#pragma once

#include "hdcc/core/hypervector.hpp"
#include "hdcc/core/rng.hpp"
#include "hdcc/frontend/ast.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdcc::core {

/// Basis hypervectors, items x dims, row-major.
class EmbeddingTable {
public:
    EmbeddingTable() = default;
    EmbeddingTable(frontend::EmbeddingSpec spec, std::uint32_t dims, std::uint64_t stream,
                   std::vector<std::int32_t> data)
        : spec_(std::move(spec)), dims_(dims), stream_(stream), data_(std::move(data))
    {
        if (data_.size() != static_cast<std::size_t>(spec_.items) * dims_)
            throw std::invalid_argument("embedding table size mismatch");
    }

    const frontend::EmbeddingSpec &spec() const { return spec_; }
    std::uint32_t items() const { return spec_.items; }
    std::uint32_t dims() const { return dims_; }
    std::uint64_t stream() const { return stream_; }

    HvView row(std::size_t i) const
    {
        return HvView(data_).subspan(i * dims_, dims_);
    }
    Hypervector row_copy(std::size_t i) const
    {
        auto r = row(i);
        return Hypervector(r.begin(), r.end());
    }
    std::span<const std::int32_t> data() const { return data_; }

    friend bool operator==(const EmbeddingTable &, const EmbeddingTable &) = default;

private:
    frontend::EmbeddingSpec spec_;
    std::uint32_t dims_ = 0;
    std::uint64_t stream_ = 0;
    std::vector<std::int32_t> data_;
};

/// i.i.d. bipolar rows drawn element by element in row-major order.
inline std::vector<std::int32_t> random_rows(std::uint32_t items, std::uint32_t dims, Rng &rng)
{
    std::vector<std::int32_t> data(static_cast<std::size_t>(items) * dims);
    for (auto &x : data)
        x = rng.next_bipolar();
    return data;
}

/// Number of leading elements row `i` of an `items`-row level table takes
/// from the target: round(i * dims / (items - 1)), halves rounded up.
inline std::size_t level_cut(std::size_t i, std::size_t items, std::size_t dims)
{
    const std::uint64_t den = 2ULL * (items - 1);
    return static_cast<std::size_t>((2ULL * i * dims + (items - 1)) / den);
}

/// Level rows interpolating from `base` (row 0) to `target` (last row) by
/// copying a growing prefix of the target.
inline std::vector<std::int32_t> level_rows(std::uint32_t items, HvView base, HvView target)
{
    if (items < 2)
        throw std::invalid_argument("level embedding needs at least 2 items");
    detail::require_same_length(base, target);
    const std::size_t dims = base.size();
    std::vector<std::int32_t> data(static_cast<std::size_t>(items) * dims);
    for (std::size_t i = 0; i < items; ++i) {
        const std::size_t cut = level_cut(i, items, dims);
        auto *row = data.data() + i * dims;
        for (std::size_t j = 0; j < dims; ++j)
            row[j] = j < cut ? target[j] : base[j];
    }
    return data;
}

inline EmbeddingTable random_embedding(std::uint32_t items, std::uint32_t dims, Rng &rng,
                                       std::string name = "RANDOM", std::uint64_t stream = 0)
{
    if (items < 1 || dims < 1)
        throw std::invalid_argument("random embedding needs items >= 1 and dims >= 1");
    return EmbeddingTable({std::move(name), frontend::EmbeddingKind::Random, items}, dims, stream,
                          random_rows(items, dims, rng));
}

/// Draws base then target from `rng`, then interpolates.
inline EmbeddingTable level_embedding(std::uint32_t items, std::uint32_t dims, Rng &rng,
                                      std::string name = "LEVEL", std::uint64_t stream = 0)
{
    if (items < 2 || dims < 1)
        throw std::invalid_argument("level embedding needs items >= 2 and dims >= 1");
    const auto base = random_rows(1, dims, rng);
    const auto target = random_rows(1, dims, rng);
    return EmbeddingTable({std::move(name), frontend::EmbeddingKind::Level, items}, dims, stream,
                          level_rows(items, base, target));
}

using TableSet = std::map<std::string, EmbeddingTable, std::less<>>;

/// Regenerates every declared table. Stream ids follow
/// ProgramDescription::all_embeddings() order.
inline TableSet build_tables(const frontend::ProgramDescription &desc)
{
    TableSet tables;
    const auto specs = desc.all_embeddings();
    for (std::size_t s = 0; s < specs.size(); ++s) {
        Rng rng = Rng::for_stream(desc.seed, s);
        const auto &spec = specs[s];
        tables.emplace(spec.name, spec.kind == frontend::EmbeddingKind::Random
                                      ? random_embedding(spec.items, desc.dimensions, rng, spec.name, s)
                                      : level_embedding(spec.items, desc.dimensions, rng, spec.name, s));
    }
    return tables;
}

} // namespace hdcc::core
