#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "binident/budget.hpp"
#include "binident/distribution.hpp"
#include "binident/rational.hpp"

namespace binident {

/// Balanced string over {2,3}: b/2 of each symbol. Symbol x_i maps to mass
/// x_i / ((5/2) b), so masses are 4/(5b) or 6/(5b).
class MassString {
public:
    explicit MassString(std::string symbols);

    std::size_t b() const noexcept { return symbols_.size(); }
    const std::string& symbols() const noexcept { return symbols_; }
    char operator[](std::size_t i) const { return symbols_[i]; }

    /// result[i] = (*this)[(i + shift) mod b]
    MassString rotated(std::size_t shift) const;
    Distribution to_distribution() const;

    friend bool operator==(const MassString&, const MassString&) = default;
    friend auto operator<=>(const MassString&, const MassString&) = default;

private:
    std::string symbols_;
};

/// C(b, b/2)
std::uint64_t balanced_string_count(std::size_t b);

/// Visits every balanced string of length b in lexicographic order ('2' < '3').
/// The callback returns false to stop early.
void for_each_balanced_string(std::size_t b, const std::function<bool(const std::string&)>& visit);

/// Longest common subsequence length with a matching, 0-based index pairs.
std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>
longest_common_subsequence(std::string_view x, std::string_view y);

struct ShiftWitness {
    /// y is compared as y.rotated(rotation).
    std::size_t rotation;
    /// Matched (i in x, j in y) pairs, 1-based, j in y's original indexing.
    std::vector<std::pair<std::size_t, std::size_t>> matches;
};

struct ShiftCheck {
    bool is_shift;
    /// max over rotations of LCS(x, rotate(y))
    std::size_t cyclic_lcs;
    std::optional<ShiftWitness> witness;
};

/// y is an r-partial cyclic shift of x iff some rotation of y shares a common
/// subsequence of length >= r with x. O(b^3). Throws InvalidArgument if r > b
/// or lengths differ.
ShiftCheck is_partial_cyclic_shift(const MassString& x, const MassString& y, std::size_t r);

struct HardPairBases {
    std::size_t m;
    Rational rho;
    MassString p_string;
    MassString q_string;
    Distribution p_base;
    Distribution q_base;
    std::uint64_t strings_enumerated;
    std::size_t buckets;
};

/// Searches balanced strings of length b for two with identical m-way moment
/// vectors that are not ceil(rho*b)-partial cyclic shifts of each other (checked
/// in both directions). Returns the lexicographically first such pair by
/// enumeration index, or nullopt.
///
/// Strings are bucketed by the integer sums sum_{i_1<...<i_t} prod x_{i_j}^{F_j};
/// these equal the m-way moments up to the string-independent factor
/// K_F (2/(5b))^m, so equal keys mean equal moment vectors.
std::optional<HardPairBases> find_hard_pair(std::size_t m, std::size_t b, const Rational& rho,
                                            const Budget& budget = default_budget());

/// p_big(b(i-1)+j) = p_base(j) / k' for block i in [1,k'], and likewise for q.
std::pair<Distribution, Distribution> block_construct(const Distribution& p_base,
                                                      const Distribution& q_base,
                                                      std::size_t k_prime);

struct HardInstancePair {
    std::size_t m;
    std::size_t b;
    std::size_t k_prime;
    Rational shift_fraction;
    MassString p_string;
    MassString q_string;
    Distribution p_base;
    Distribution q_base;
    Distribution p_big;
    Distribution q_big;
};

HardInstancePair make_hard_instance(const HardPairBases& bases, std::size_t k_prime);

/// Exact coarsening distance dist(p_big, q_big), with q_big as the reference over [b k'].
Rational verify_distance_claim(const HardInstancePair& pair,
                               const Budget& budget = default_budget());

/// Exact probability that s balls thrown uniformly into k' blocks leave some
/// block with at least m+1 balls.
Rational block_overflow_probability(std::size_t k_prime, std::size_t s, std::size_t m,
                                    const Budget& budget = default_budget());

/// Largest number of samples landing in a single block of size b.
std::size_t max_block_load(const SampleSet& samples, std::size_t b, std::size_t k_prime);

struct OverflowPoint {
    std::size_t s;
    std::size_t trials;
    std::size_t overflows;
    double fraction;
    Rational exact;
};

/// Per-trial outcome at one grid point: seed and largest block load.
struct OverflowTrial {
    std::size_t s;
    std::size_t trial;
    std::uint64_t seed;
    std::size_t max_load;
    bool overflow;
};

struct SampleSizeCurve {
    std::vector<OverflowTrial> trials;
    std::vector<OverflowPoint> points;
};

/// For every s, the fraction of trials whose s draws from p_big put at least m+1
/// samples into one block. Trial t uses seed + t at every grid point.
SampleSizeCurve sample_size_curve(const HardInstancePair& pair, std::span<const std::size_t> s_grid,
                                  std::size_t trials, std::uint64_t seed,
                                  const Budget& budget = default_budget());

}  // namespace binident
