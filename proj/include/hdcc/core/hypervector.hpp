#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdcc::core {

/// Signed 32-bit elements. Bipolar ({-1,+1}) after hard_quantize, unbounded
/// sums otherwise. Arithmetic wraps modulo 2^32 like the generated code,
/// which is built with -fwrapv.
using Hypervector = std::vector<std::int32_t>;
using HvView = std::span<const std::int32_t>;

inline std::int32_t wrap_add(std::int32_t a, std::int32_t b)
{
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) + static_cast<std::uint32_t>(b));
}

inline std::int32_t wrap_mul(std::int32_t a, std::int32_t b)
{
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) * static_cast<std::uint32_t>(b));
}

namespace detail {

inline void require_same_length(HvView a, HvView b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("hypervector length mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
}

} // namespace detail

/// Element-wise product.
inline Hypervector bind(HvView a, HvView b)
{
    detail::require_same_length(a, b);
    Hypervector out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = wrap_mul(a[j], b[j]);
    return out;
}

/// Element-wise sum.
inline Hypervector bundle(HvView a, HvView b)
{
    detail::require_same_length(a, b);
    Hypervector out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = wrap_add(a[j], b[j]);
    return out;
}

/// Right cyclic rotation: out[(j + k) mod d] = a[j].
inline Hypervector permute(HvView a, std::uint64_t k)
{
    const std::size_t d = a.size();
    Hypervector out(d);
    if (d == 0)
        return out;
    const std::size_t shift = static_cast<std::size_t>(k % d);
    for (std::size_t j = 0; j < d; ++j)
        out[(j + shift) % d] = a[j];
    return out;
}

inline Hypervector multiset(std::span<const Hypervector> vs)
{
    if (vs.empty())
        throw std::invalid_argument("multiset of an empty sequence");
    Hypervector acc(vs.front().size(), 0);
    for (const auto &v : vs)
        acc = bundle(acc, v);
    return acc;
}

/// Bundle of K_i (x) V_i.
inline Hypervector hash_table(std::span<const Hypervector> keys, std::span<const Hypervector> values)
{
    if (keys.size() != values.size())
        throw std::invalid_argument("hash_table: " + std::to_string(keys.size()) + " keys but " +
                                    std::to_string(values.size()) + " values");
    if (keys.empty())
        throw std::invalid_argument("hash_table of an empty sequence");
    Hypervector acc(keys.front().size(), 0);
    for (std::size_t i = 0; i < keys.size(); ++i)
        acc = bundle(acc, core::bind(keys[i], values[i]));
    return acc;
}

/// Sum over windows i of the bound product of rho^(n-j-1)(V_{i+j}),
/// j = 0..n-1. Builds every rotated copy; see Encoder for the
/// sliding-window evaluation.
inline Hypervector ngram(std::span<const Hypervector> vs, std::size_t n)
{
    if (n < 1)
        throw std::invalid_argument("ngram window must be at least 1");
    if (n > vs.size())
        throw std::invalid_argument("ngram window " + std::to_string(n) + " exceeds sequence length " +
                                    std::to_string(vs.size()));
    Hypervector acc(vs.front().size(), 0);
    for (std::size_t i = 0; i + n <= vs.size(); ++i) {
        Hypervector term = permute(vs[i], n - 1);
        for (std::size_t j = 1; j < n; ++j)
            term = core::bind(term, permute(vs[i + j], n - j - 1));
        acc = bundle(acc, term);
    }
    return acc;
}

/// +1 where the element is strictly positive, -1 otherwise (0 maps to -1).
inline Hypervector hard_quantize(HvView a)
{
    Hypervector out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = a[j] > 0 ? 1 : -1;
    return out;
}

inline std::int64_t dot(HvView a, HvView b)
{
    detail::require_same_length(a, b);
    std::int64_t s = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        s += static_cast<std::int64_t>(a[j]) * b[j];
    return s;
}

/// Cosine similarity; 0 when either vector is zero.
inline double cosine(HvView a, HvView b)
{
    detail::require_same_length(a, b);
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        ab += static_cast<double>(a[j]) * b[j];
        aa += static_cast<double>(a[j]) * a[j];
        bb += static_cast<double>(b[j]) * b[j];
    }
    if (aa == 0 || bb == 0)
        return 0.0;
    return ab / (std::sqrt(aa) * std::sqrt(bb));
}

} // namespace hdcc::core
