#include <gtest/gtest.h>

#include "binident/error.hpp"
#include "binident/tester.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace binident;

namespace {

TestConfig config(const char* eps, std::uint64_t seed = 0) {
    TestConfig cfg;
    cfg.epsilon = parse_rational(eps);
    cfg.seed = seed;
    return cfg;
}

/// Sample set whose empirical distribution is exactly `d` (denominators divide s).
SampleSet exact_sample(const Distribution& d, std::size_t s) {
    SampleSet out;
    for (std::size_t i = 1; i <= d.n(); ++i) {
        const Rational count = d.mass(i) * Rational(s);
        EXPECT_EQ(count.get_den(), 1);
        for (unsigned long c = 0; c < count.get_num().get_ui(); ++c) out.values.push_back(i);
    }
    return out;
}

}  // namespace

TEST(TestConfig, ValidatesAndSizesSample) {
    auto cfg = config("1/10");
    EXPECT_EQ(cfg.sample_count(4), 6400u);
    EXPECT_EQ(cfg.threshold(), Rational(1, 40));
    cfg.samples = 17;
    EXPECT_EQ(cfg.sample_count(4), 17u);
    EXPECT_THROW(config("0").validate(), InvalidArgument);
    EXPECT_THROW(config("3/2").validate(), InvalidArgument);
    auto bad = config("1/10");
    bad.learn_constant = 0;
    EXPECT_THROW(bad.validate(), InvalidArgument);
    bad = config("1/10");
    bad.accept_threshold_fraction = 1;
    EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(BinIdentityTest, PointMassAcceptsWithZeroDelta) {
    const auto d = Distribution::point_mass(1, 1);
    for (std::size_t s : {1u, 5u, 100u}) {
        auto cfg = config("1/2");
        cfg.samples = s;
        const auto report = bin_identity_test(d, d, 1, cfg);
        EXPECT_EQ(report.verdict, Verdict::accept);
        EXPECT_EQ(report.delta, 0);
        EXPECT_EQ(report.samples_used, s);
    }
}

TEST(BinIdentityTest, TwentyPointInstanceAcceptsMostTrials) {
    const auto p = fixtures::twenty_p();
    const auto q = fixtures::twenty_q();
    int accepts = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto report = bin_identity_test(p, q, 20, config("1/10", seed));
        EXPECT_EQ(report.samples_used, 6400u);
        EXPECT_EQ(report.verdict == Verdict::accept, report.delta <= Rational(1, 40));
        accepts += report.verdict == Verdict::accept ? 1 : 0;
    }
    EXPECT_GE(accepts, 50);
}

TEST(BinIdentityTest, InfeasibleReferenceAlwaysRejects) {
    const auto p = Distribution::point_mass(1, 1);
    const auto q = fixtures::from_strings({"1/2", "1/2"});
    ASSERT_EQ(coarsening_distance(p, q), 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto report = bin_identity_test(p, q, 1, config("1/5", seed));
        EXPECT_EQ(report.verdict, Verdict::reject);
        EXPECT_FALSE(report.feasible);
        EXPECT_EQ(report.delta, 1);
        EXPECT_EQ(report.samples_used, 800u);
    }
}

TEST(BinIdentityTest, FarDistributionRejects) {
    const auto p = Distribution::point_mass(2, 1);
    const auto q = fixtures::from_strings({"1/2", "1/2"});
    ASSERT_EQ(coarsening_distance(p, q), 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto report = bin_identity_test(p, q, 2, config("2/5", seed));
        EXPECT_TRUE(report.feasible);
        EXPECT_EQ(report.verdict, Verdict::reject);
    }
}

TEST(BinIdentityTest, IsDeterministic) {
    const auto a = bin_identity_test(fixtures::twenty_p(), fixtures::twenty_q(), 20, config("1/5", 9));
    const auto b = bin_identity_test(fixtures::twenty_p(), fixtures::twenty_q(), 20, config("1/5", 9));
    EXPECT_EQ(a.delta, b.delta);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.p_hat, b.p_hat);
}

TEST(BinIdentityTest, DeltaNeverExceedsAnyFixedBlocking) {
    const auto p = fixtures::twenty_p();
    const auto q = fixtures::twenty_q();
    const IntervalPartition blocking({0, 5, 10, 15, 20});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto report = bin_identity_test(p, q, 20, config("1/5", seed));
        EXPECT_LE(report.delta, binned_discrepancy(report.p_hat, blocking, q));
    }
}

TEST(BinIdentityTest, CompletenessUnderInjectedLearningError) {
    // p in P_q; p_hat differs from p by moving 1/100 of mass across the I_1/I_3 border
    const auto p = fixtures::twenty_p();
    std::vector<Rational> shifted = p.pmf();
    shifted[7] -= Rational(1, 100);
    shifted[8] += Rational(1, 100);
    const Distribution p_hat(shifted);
    const auto cfg = config("1/10");
    const Rational learn_error = ak_distance(p_hat, p, 4);
    ASSERT_EQ(learn_error, Rational(1, 50));
    ASSERT_LE(learn_error, cfg.threshold());
    const auto report = bin_identity_test(exact_sample(p_hat, 100), fixtures::twenty_q(), 20, cfg);
    EXPECT_LE(report.delta, learn_error);
    EXPECT_EQ(report.verdict, Verdict::accept);
}

TEST(BinIdentityTest, RejectsBadInputs) {
    const auto q = fixtures::twenty_q();
    EXPECT_THROW(bin_identity_test(SampleSet{}, q, 20, config("1/10")), InvalidArgument);
    auto cfg = config("1/10");
    cfg.samples = 0;
    EXPECT_THROW(bin_identity_test(fixtures::twenty_p(), q, 20, cfg), InvalidArgument);
    EXPECT_THROW(bin_identity_test(fixtures::twenty_p(), q, 19, config("1/10")), InvalidArgument);
}

TEST(ErrorCurve, InPropertyAcceptsAtEveryEpsilon) {
    const std::vector<Rational> eps{Rational(1, 5), Rational(2, 5)};
    const auto curve = error_curve(fixtures::twenty_p(), fixtures::twenty_q(), eps, 60, 1000);
    ASSERT_EQ(curve.points.size(), 2u);
    ASSERT_EQ(curve.rows.size(), 120u);
    for (const auto& point : curve.points) {
        // 5/6 minus a 3 sigma binomial margin at 60 trials
        EXPECT_GE(point.accept_frequency, 5.0 / 6.0 - 3 * std::sqrt(5.0 / 36.0 / 60.0));
    }
    EXPECT_EQ(curve.rows[61].seed, 1001u);
}

TEST(ErrorCurve, FarInstanceRarelyAccepts) {
    const std::vector<Rational> eps{Rational(1, 10), Rational(2, 5)};
    const auto curve = error_curve(Distribution::point_mass(2, 1), fixtures::from_strings({"1/2", "1/2"}),
                                   eps, 30, 7);
    for (const auto& point : curve.points) EXPECT_LE(point.accept_frequency, 1.0 / 6.0);
}

TEST(ErrorCurve, SingleTrialIsReproducible) {
    const std::vector<Rational> eps{Rational(1, 4)};
    const auto a = error_curve(fixtures::twenty_p(), fixtures::twenty_q(), eps, 1, 3);
    const auto b = error_curve(fixtures::twenty_p(), fixtures::twenty_q(), eps, 1, 3);
    EXPECT_EQ(a.rows[0].delta, b.rows[0].delta);
    EXPECT_EQ(a.rows[0].verdict, b.rows[0].verdict);
    EXPECT_THROW(error_curve(fixtures::twenty_p(), fixtures::twenty_q(), eps, 0, 3), InvalidArgument);
}
