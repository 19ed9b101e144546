#pragma once

#include <cstdint>

namespace hdcc::core {

/// xorshift64* generator. The emitted C runtime carries a line-for-line copy
/// of next() and for_stream(); both must stay bit-identical.
class Rng {
public:
    static constexpr std::uint64_t kMultiplier = 0x2545F4914F6CDD1DULL;

    explicit Rng(std::uint64_t state) : state_(state != 0 ? state : kZeroReplacement) {}

    /// Independent stream `stream` of `seed`: a splitmix64 finalizer over
    /// seed + (stream + 1) * golden-ratio constant.
    static Rng for_stream(std::uint64_t seed, std::uint64_t stream)
    {
        std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return Rng(z);
    }

    std::uint64_t next()
    {
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * kMultiplier;
    }

    /// +1 when the top bit of the next draw is clear, -1 otherwise.
    std::int32_t next_bipolar() { return (next() >> 63) == 0 ? 1 : -1; }

    std::uint64_t state() const { return state_; }

private:
    // xorshift has a fixed point at zero
    static constexpr std::uint64_t kZeroReplacement = 0x9E3779B97F4A7C15ULL;
    std::uint64_t state_;
};

} // namespace hdcc::core
