#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "binident/rational.hpp"
#include "binident/rng.hpp"

namespace binident {

__extension__ typedef unsigned __int128 uint128;

/// Probability mass function over [n] = {1, ..., n} with exact rational masses.
///
/// Construction validates non-negativity and exact normalization; the object is
/// immutable afterwards. Elements are 1-based in the public API, storage is 0-based.
class Distribution {
public:
    /// Throws InvalidArgument on an empty or negative pmf, NormalizationError if the
    /// masses do not sum to exactly 1.
    explicit Distribution(std::vector<Rational> pmf);

    static Distribution uniform(std::size_t n);
    static Distribution point_mass(std::size_t n, std::size_t element);
    /// Normalizes non-negative weights with a positive total.
    static Distribution from_weights(std::span<const Rational> weights);

    std::size_t n() const noexcept { return pmf_.size(); }
    const std::vector<Rational>& pmf() const noexcept { return pmf_; }
    /// prefix()[i] = mass of {1, ..., i}; prefix()[0] = 0 and prefix()[n] = 1.
    const std::vector<Rational>& prefix() const noexcept { return prefix_; }

    const Rational& mass(std::size_t element) const;
    /// Mass of the half-open index range (lo, hi], i.e. elements lo+1 .. hi.
    Rational interval_mass(std::size_t lo, std::size_t hi) const;

    /// Same masses in reverse element order.
    Distribution reversed() const;

    friend bool operator==(const Distribution& a, const Distribution& b) { return a.pmf_ == b.pmf_; }

private:
    std::vector<Rational> pmf_;
    std::vector<Rational> prefix_;
};

/// Multiset of draws from [n], in draw order.
struct SampleSet {
    std::vector<std::size_t> values;
    /// Seed used to generate the draws; empty for externally supplied data.
    std::optional<std::uint64_t> seed;

    std::size_t size() const noexcept { return values.size(); }
    bool empty() const noexcept { return values.empty(); }
    std::vector<std::size_t> counts(std::size_t n) const;
};

/// Inverse-CDF sampler at 64-bit resolution.
///
/// Element i is returned for uniform words u with floor(2^64 prefix[i-1]) <= u <
/// floor(2^64 prefix[i]), so each element's probability is off by less than 2^-63.
class Sampler {
public:
    explicit Sampler(const Distribution& d);

    std::size_t draw(CounterRng& rng) const;
    std::size_t n() const noexcept { return thresholds_.size(); }

private:
    std::vector<uint128> thresholds_;
};

/// s i.i.d. draws from d, deterministic in seed.
SampleSet sample(const Distribution& d, std::size_t s, std::uint64_t seed);

/// (1/2) * sum |d1(i) - d2(i)|.
Rational total_variation(const Distribution& d1, const Distribution& d2);

/// Largest |F1(i) - F2(i)| over the cumulative masses.
Rational kolmogorov_distance(const Distribution& d1, const Distribution& d2);

/// A_ell distance: maximum over partitions of [n] into ell consecutive, possibly
/// empty intervals of sum_j |d1(I_j) - d2(I_j)|.
///
/// With D = prefix(d1) - prefix(d2), a partition with bounds 0 = b_0 <= ... <= b_ell = n
/// scores sum_j |D[b_j] - D[b_{j-1}]|. Splitting |x| = max(x, -x) lets each layer of the
/// DP keep two running maxima, so the whole evaluation is O(n * ell).
Rational ak_distance(const Distribution& d1, const Distribution& d2, std::size_t ell);

/// Empirical distribution of the samples over [n].
Distribution empirical(const SampleSet& samples, std::size_t n);

}  // namespace binident
