#pragma once

#include "hdcc/core/embedding.hpp"
#include "hdcc/dataio/stream.hpp"
#include "hdcc/errors.hpp"

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hdcc::core {

/// Row marker for a skipped feature.
inline constexpr std::int32_t kSkipRow = -1;

/// Maps x in [min, max] onto a level index in [0, levels).
/// clamp(round_half_away((x - min) / (max - min) * (levels - 1)), 0, levels - 1).
/// The generated C uses the same expression, in the same order, so the
/// results agree bit for bit.
inline std::uint32_t map_range(double x, double min, double max, std::uint32_t levels)
{
    if (levels < 2 || !(min < max))
        throw std::invalid_argument("map_range needs levels >= 2 and min < max");
    const double t = (x - min) / (max - min) * static_cast<double>(levels - 1);
    const double r = std::round(t);
    if (!(r > 0.0))
        return 0;
    if (r >= static_cast<double>(levels - 1))
        return levels - 1;
    return static_cast<std::uint32_t>(r);
}

/// Row of `table` selected by each feature value, kSkipRow for the -1
/// sentinel. LEVEL tables go through map_range; RANDOM tables take the
/// value as an index.
inline std::vector<std::int32_t> resolve_rows(const EmbeddingTable &table, std::span<const double> sample,
                                              const dataio::ValueRange &range = {})
{
    std::vector<std::int32_t> rows(sample.size());
    const std::uint32_t items = table.items();
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double x = sample[i];
        if (table.spec().kind == frontend::EmbeddingKind::Level) {
            rows[i] = static_cast<std::int32_t>(map_range(x, range.min, range.max, items));
            continue;
        }
        if (x != std::floor(x))
            throw IndexError(i, "index " + std::to_string(x) + " is not an integer");
        if (x == -1.0) {
            rows[i] = kSkipRow;
        } else if (x < -1.0 || x >= static_cast<double>(items)) {
            throw IndexError(i, "index " + std::to_string(static_cast<long long>(x)) + " outside [0, " +
                                    std::to_string(items) + ") for embedding " + table.spec().name);
        } else {
            rows[i] = static_cast<std::int32_t>(x);
        }
    }
    return rows;
}

/// One hypervector per non-skipped feature, in feature order.
inline std::vector<Hypervector> forward(const EmbeddingTable &table, std::span<const double> sample,
                                        const dataio::ValueRange &range = {})
{
    std::vector<Hypervector> out;
    for (std::int32_t r : resolve_rows(table, sample, range))
        if (r != kSkipRow)
            out.push_back(table.row_copy(static_cast<std::size_t>(r)));
    return out;
}

} // namespace hdcc::core
