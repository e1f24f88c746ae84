#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binident/budget.hpp"
#include "binident/distribution.hpp"
#include "binident/rational.hpp"

namespace binident {

/// Ordered partition of [n] into k consecutive, possibly empty intervals.
///
/// Stored as bounds 0 = b_0 <= b_1 <= ... <= b_k = n; bin j (1-based) is the
/// index range (b_{j-1}, b_j]. Equivalently the nondecreasing map f: [n] -> [k]
/// with I_j = f^{-1}(j).
class IntervalPartition {
public:
    explicit IntervalPartition(std::vector<std::size_t> bounds);

    /// Builds the partition whose bin j holds elements with labels[i-1] == j.
    /// Labels must be nondecreasing values in [1, k].
    static IntervalPartition from_labels(const std::vector<std::size_t>& labels, std::size_t k);

    std::size_t k() const noexcept { return bounds_.size() - 1; }
    std::size_t n() const noexcept { return bounds_.back(); }
    const std::vector<std::size_t>& bounds() const noexcept { return bounds_; }

    /// (lo, hi] for bin j in [1, k].
    std::pair<std::size_t, std::size_t> interval(std::size_t j) const;
    std::size_t size_of(std::size_t j) const;
    Rational mass(const Distribution& d, std::size_t j) const;

    /// "[0,8,8,17,20]"
    std::string to_string() const;

    friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;

private:
    std::vector<std::size_t> bounds_;
};

/// |J_{n,k}| = C(n+k-1, n), saturating at UINT64_MAX.
std::uint64_t partition_count(std::size_t n, std::size_t k);

/// Lazily yields every element of J_{n,k} once, bounds in lexicographic order.
class PartitionStream {
public:
    /// Throws InvalidArgument for n or k of zero, SizeGuardExceeded past budget.partitions.
    PartitionStream(std::size_t n, std::size_t k, const Budget& budget = default_budget());

    std::optional<IntervalPartition> next();
    std::uint64_t size() const noexcept { return total_; }

private:
    std::vector<std::size_t> bounds_;
    std::uint64_t total_;
    bool done_ = false;
    bool started_ = false;
};

inline PartitionStream enumerate_partitions(std::size_t n, std::size_t k,
                                            const Budget& budget = default_budget()) {
    return PartitionStream(n, k, budget);
}

/// Whether bins carrying positive reference mass must receive a nonempty interval.
enum class SupportBins { may_be_empty, must_be_nonempty };

struct BinningResult {
    /// min over admissible partitions of sum_j |p(I_j) - q(j)|
    Rational delta;
    /// Lexicographically smallest bounds attaining delta.
    IntervalPartition witness;
};

/// sum_j |p(I_j) - q(j)| for a fixed partition.
Rational binned_discrepancy(const Distribution& p, const IntervalPartition& partition,
                            const Distribution& q);

/// Exact minimum of the binned discrepancy over J_{n,k}, k = q.n(), with a witness.
///
/// Suffix DP over (bin, domain position) with O(n^2 k) transitions. The forward
/// traceback takes the smallest admissible split at every bin, which yields the
/// lexicographically smallest optimal bounds.
///
/// Throws InfeasibleConstraint when must_be_nonempty is requested and q has more
/// positive entries than p has elements.
BinningResult min_binned_discrepancy(const Distribution& p_hat, const Distribution& q,
                                     SupportBins support);

/// Coarsening distance dist(p, q): the unconstrained binned minimum. Zero iff
/// p admits a binning onto q; half of it lower-bounds TV(p, P_q).
Rational coarsening_distance(const Distribution& p, const Distribution& q);

/// Moves mass between bins until p*(I_j) = q(j) for all j.
///
/// Each step pairs the first over-full bin with the first under-full bin and moves
/// delta = min(surplus, deficit), drained from the highest-index elements of the
/// over-full interval and credited to the lowest-index element of the under-full one.
/// The result satisfies 2 * TV(p, p*) = sum_j |p(I_j) - q(j)|.
///
/// Throws InvalidArgument if an under-full bin has an empty interval.
Distribution greedy_repair(const Distribution& p, const IntervalPartition& partition,
                           const Distribution& q);

}  // namespace binident
