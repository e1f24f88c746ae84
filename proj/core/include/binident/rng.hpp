#pragma once

#include <cstdint>

namespace binident {

/// Counter-based SplitMix64 generator.
///
/// The i-th output (i = 1, 2, ...) is mix(seed + i * 0x9E3779B97F4A7C15), so any
/// draw can be recomputed from (seed, index) alone and streams are identical
/// across platforms.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t index) noexcept {
        return mix(seed + index * kGamma);
    }

    constexpr std::uint64_t operator()() noexcept { return at(seed_, ++counter_); }

    constexpr std::uint64_t seed() const noexcept { return seed_; }
    constexpr std::uint64_t counter() const noexcept { return counter_; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace binident
