#include "binident/tester.hpp"

#include <string>

#include "binident/error.hpp"
#include "binident/parallel.hpp"

namespace binident {

void TestConfig::validate() const {
    if (epsilon <= 0 || epsilon > 1) {
        throw InvalidArgument("epsilon must lie in (0, 1], got " + to_string(epsilon));
    }
    if (learn_constant <= 0) {
        throw InvalidArgument("learn constant must be positive, got " + to_string(learn_constant));
    }
    if (accept_threshold_fraction <= 0 || accept_threshold_fraction >= 1) {
        throw InvalidArgument("threshold fraction must lie in (0, 1), got " +
                              to_string(accept_threshold_fraction));
    }
}

std::size_t TestConfig::sample_count(std::size_t k) const {
    if (samples) {
        return *samples;
    }
    return static_cast<std::size_t>(ceil_to_u64(learn_constant * Rational(k) / (epsilon * epsilon)));
}

const char* to_string(Verdict v) noexcept {
    return v == Verdict::accept ? "accept" : "reject";
}

TestReport bin_identity_test(const SampleSource& source, const Distribution& q, std::size_t n,
                             const TestConfig& cfg) {
    cfg.validate();

    SampleSet samples;
    if (const auto* p = std::get_if<Distribution>(&source)) {
        if (p->n() != n) {
            throw InvalidArgument("unknown distribution is over [" + std::to_string(p->n()) +
                                  "], expected [" + std::to_string(n) + "]");
        }
        const std::size_t s = cfg.sample_count(q.n());
        if (s == 0) {
            throw InvalidArgument("bin_identity_test: zero samples requested");
        }
        samples = sample(*p, s, cfg.seed);
    } else {
        samples = std::get<SampleSet>(source);
        if (samples.empty()) {
            throw InvalidArgument("bin_identity_test: empty sample set");
        }
    }

    Distribution p_hat = empirical(samples, n);
    bool feasible = true;
    std::optional<BinningResult> best;
    try {
        best = min_binned_discrepancy(p_hat, q, SupportBins::must_be_nonempty);
    } catch (const InfeasibleConstraint&) {
        feasible = false;
        best = min_binned_discrepancy(p_hat, q, SupportBins::may_be_empty);
    }
    const Verdict verdict =
        feasible && best->delta <= cfg.threshold() ? Verdict::accept : Verdict::reject;
    return TestReport{verdict, feasible, std::move(best->delta), std::move(best->witness),
                      samples.size(), std::move(p_hat)};
}

ErrorCurve error_curve(const Distribution& p, const Distribution& q,
                       std::span<const Rational> epsilons, std::size_t trials,
                       std::uint64_t master_seed, const Rational& learn_constant) {
    if (trials == 0) {
        throw InvalidArgument("error_curve: trials must be positive");
    }
    ErrorCurve curve;
    std::vector<std::optional<ErrorCurveRow>> slots(epsilons.size() * trials);
    parallel_for(slots.size(), [&](std::size_t index) {
        const std::size_t e = index / trials;
        const std::size_t trial = index % trials;
        TestConfig cfg;
        cfg.epsilon = epsilons[e];
        cfg.learn_constant = learn_constant;
        cfg.seed = master_seed + trial;
        auto report = bin_identity_test(p, q, p.n(), cfg);
        slots[index] = ErrorCurveRow{epsilons[e], trial, cfg.seed, report.samples_used,
                                     report.verdict, std::move(report.delta)};
    });

    curve.rows.reserve(slots.size());
    for (auto& slot : slots) {
        curve.rows.push_back(std::move(*slot));
    }
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
        ErrorCurvePoint point{epsilons[e], curve.rows[e * trials].samples, trials, 0, 0.0};
        for (std::size_t t = 0; t < trials; ++t) {
            point.accepts += curve.rows[e * trials + t].verdict == Verdict::accept ? 1 : 0;
        }
        point.accept_frequency = static_cast<double>(point.accepts) / static_cast<double>(trials);
        curve.points.push_back(std::move(point));
    }
    return curve;
}

}  // namespace binident
