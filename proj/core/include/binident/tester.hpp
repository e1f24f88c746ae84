#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "binident/binning.hpp"
#include "binident/distribution.hpp"
#include "binident/rational.hpp"

namespace binident {

struct TestConfig {
    Rational epsilon{1, 10};
    /// C in s = ceil(C * k / eps^2).
    Rational learn_constant{16};
    /// Accept iff delta <= eps * fraction.
    Rational accept_threshold_fraction{1, 4};
    std::uint64_t seed = 0;
    /// Overrides the computed sample count when set.
    std::optional<std::size_t> samples;

    /// Throws InvalidArgument unless eps in (0,1], C > 0, fraction in (0,1).
    void validate() const;
    std::size_t sample_count(std::size_t k) const;
    Rational threshold() const { return epsilon * accept_threshold_fraction; }
};

enum class Verdict { accept, reject };

const char* to_string(Verdict v) noexcept;

struct TestReport {
    Verdict verdict;
    /// False when q has more positive bins than the domain has elements; such q
    /// admit no binning at all and the verdict is reject.
    bool feasible;
    /// Constrained minimum when feasible, unconstrained minimum otherwise.
    Rational delta;
    IntervalPartition witness;
    std::size_t samples_used;
    Distribution p_hat;
};

/// Either an unknown distribution to draw from (with cfg.seed) or a fixed sample.
using SampleSource = std::variant<Distribution, SampleSet>;

/// Learns p_hat empirically, minimizes the binned discrepancy against q with
/// nonempty bins on q's support, and accepts iff the minimum is at most eps/4.
TestReport bin_identity_test(const SampleSource& source, const Distribution& q, std::size_t n,
                             const TestConfig& cfg);

struct ErrorCurveRow {
    Rational epsilon;
    std::size_t trial;
    std::uint64_t seed;
    std::size_t samples;
    Verdict verdict;
    Rational delta;
};

struct ErrorCurvePoint {
    Rational epsilon;
    std::size_t samples;
    std::size_t trials;
    std::size_t accepts;
    double accept_frequency;
};

struct ErrorCurve {
    /// Ordered by (epsilon index, trial).
    std::vector<ErrorCurveRow> rows;
    std::vector<ErrorCurvePoint> points;
};

/// Accept frequency of bin_identity_test per epsilon over `trials` runs with seeds
/// master_seed + trial. Trials may run concurrently; results are keyed by index.
ErrorCurve error_curve(const Distribution& p, const Distribution& q,
                       std::span<const Rational> epsilons, std::size_t trials,
                       std::uint64_t master_seed, const Rational& learn_constant = Rational(16));

}  // namespace binident
