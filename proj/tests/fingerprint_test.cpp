#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "binident/error.hpp"
#include "binident/fingerprint.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace binident;

namespace {

OrderedFingerprint fp(std::vector<std::size_t> counts) { return OrderedFingerprint(std::move(counts)); }

}  // namespace

TEST(OrderedFingerprint, OfSample) {
    EXPECT_EQ(fingerprint_of(SampleSet{{12, 7, 98, 7}, {}}), fp({2, 1, 1}));
    EXPECT_EQ(fingerprint_of(SampleSet{{5, 5, 5}, {}}), fp({3}));
    EXPECT_EQ(fingerprint_of(SampleSet{{1, 2, 3}, {}}), fp({1, 1, 1}));
    EXPECT_THROW(fingerprint_of(SampleSet{}), InvalidArgument);
}

TEST(OrderedFingerprint, ParsePrintAndValidate) {
    const auto f = OrderedFingerprint::parse("2+1+1");
    EXPECT_EQ(f, fp({2, 1, 1}));
    EXPECT_EQ(f.to_string(), "2+1+1");
    EXPECT_EQ(f.s(), 4u);
    EXPECT_EQ(f.t(), 3u);
    EXPECT_EQ(f.reversed(), fp({1, 1, 2}));
    EXPECT_THROW(fp({2, 0}), InvalidArgument);
    EXPECT_THROW(fp({}), InvalidArgument);
    EXPECT_THROW(OrderedFingerprint::parse("2++1"), FormatError);
    EXPECT_THROW(OrderedFingerprint::parse("x"), FormatError);
}

TEST(Compositions, CountAndOrder) {
    for (std::size_t s = 1; s <= 10; ++s) {
        const auto all = compositions(s);
        ASSERT_EQ(all.size(), std::size_t{1} << (s - 1));
        for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1], all[i]);
        for (const auto& f : all) EXPECT_EQ(f.s(), s);
    }
    const auto three = compositions(3);
    EXPECT_EQ(three.front(), fp({1, 1, 1}));
    EXPECT_EQ(three.back(), fp({3}));
    EXPECT_EQ(compositions(5).size(), 16u);
}

TEST(Moment, Examples) {
    const auto u2 = Distribution::uniform(2);
    EXPECT_EQ(moment(u2, fp({2})), Rational(1, 2));
    EXPECT_EQ(moment(u2, fp({1, 1})), Rational(1, 2));
    const auto point = Distribution::point_mass(5, 3);
    EXPECT_EQ(moment(point, fp({4})), 1);
    EXPECT_EQ(moment(point, fp({2, 2})), 0);
    EXPECT_EQ(multinomial(fp({2, 1, 1})), 12);
}

TEST(Moment, MatchesLiteralSum) {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 40; ++round) {
        const auto d = oracle::random_distribution(rng, 1 + rng() % 8);
        const std::size_t s = 1 + rng() % 5;
        for (const auto& f : compositions(s)) {
            EXPECT_EQ(moment(d, f), oracle::literal_moment(d, f.counts())) << f.to_string();
        }
    }
}

TEST(Moment, MatchesOutcomeEnumeration) {
    std::mt19937_64 rng(32);
    for (int round = 0; round < 20; ++round) {
        const auto d = oracle::random_distribution(rng, 1 + rng() % 4);
        const std::size_t s = 1 + rng() % 4;
        const auto law = oracle::fingerprint_law(d, s);
        for (const auto& [f, value] : moment_vector(d, s).entries) {
            const auto it = law.find(f.to_string());
            EXPECT_EQ(value, it == law.end() ? Rational(0) : it->second) << f.to_string();
        }
    }
}

TEST(MomentVector, SumsToOne) {
    std::mt19937_64 rng(33);
    for (int round = 0; round < 30; ++round) {
        const auto d = oracle::random_distribution(rng, 1 + rng() % 10);
        for (std::size_t s = 1; s <= 5; ++s) {
            const auto mv = moment_vector(d, s);
            ASSERT_EQ(mv.entries.size(), std::size_t{1} << (s - 1));
            Rational total = 0;
            for (const auto& entry : mv.entries) total += entry.second;
            EXPECT_EQ(total, 1);
        }
    }
}

TEST(MomentVector, Examples) {
    const auto one = moment_vector(fixtures::twenty_p(), 1);
    ASSERT_EQ(one.entries.size(), 1u);
    EXPECT_EQ(one.at(fp({1})), 1);
    const auto two = moment_vector(Distribution::uniform(2), 2);
    EXPECT_EQ(two.at(fp({2})), Rational(1, 2));
    EXPECT_EQ(two.at(fp({1, 1})), Rational(1, 2));
    EXPECT_THROW(two.at(fp({3})), InvalidArgument);
}

TEST(Moment, ReversalSymmetry) {
    std::mt19937_64 rng(34);
    for (int round = 0; round < 20; ++round) {
        const auto d = oracle::random_distribution(rng, 2 + rng() % 7);
        for (const auto& f : compositions(4)) {
            EXPECT_EQ(moment(d.reversed(), f), moment(d, f.reversed()));
        }
    }
}

TEST(Moment, DependsOnlyOnOrder) {
    // Spread the support of d over a larger domain, preserving order.
    std::mt19937_64 rng(35);
    for (int round = 0; round < 10; ++round) {
        const auto d = oracle::random_distribution(rng, 5);
        std::vector<Rational> spread(17, Rational(0));
        const std::size_t at[] = {0, 3, 4, 11, 16};
        for (std::size_t i = 0; i < 5; ++i) spread[at[i]] = d.pmf()[i];
        const Distribution pushed(spread);
        for (std::size_t s = 1; s <= 4; ++s) EXPECT_EQ(moment_vector(d, s), moment_vector(pushed, s));
    }
}

TEST(Moment, EmpiricalFrequenciesWithinFourSigma) {
    const auto d = fixtures::from_strings({"1/10", "2/5", "1/5", "3/10"});
    constexpr std::size_t s = 3;
    constexpr std::size_t tuples = 100000;
    const auto draws = sample(d, s * tuples, 2024);
    std::map<OrderedFingerprint, std::size_t> seen;
    for (std::size_t t = 0; t < tuples; ++t) {
        SampleSet tuple;
        tuple.values.assign(draws.values.begin() + static_cast<std::ptrdiff_t>(t * s),
                            draws.values.begin() + static_cast<std::ptrdiff_t>((t + 1) * s));
        ++seen[fingerprint_of(tuple)];
    }
    for (const auto& [f, exact] : moment_vector(d, s).entries) {
        const double prob = to_double(exact);
        const double freq = static_cast<double>(seen[f]) / tuples;
        const double sigma = std::sqrt(prob * (1 - prob) / tuples);
        EXPECT_LE(std::abs(freq - prob), 4 * sigma) << f.to_string();
    }
}

TEST(Indistinguishability, Examples) {
    const auto p = fixtures::twenty_p();
    auto same = fingerprints_indistinguishable(p, p, 3);
    EXPECT_TRUE(same.indistinguishable);
    EXPECT_EQ(same.tv_gap, 0);

    const auto labels = fingerprints_indistinguishable(Distribution::point_mass(2, 1),
                                                       Distribution::point_mass(2, 2), 1);
    EXPECT_TRUE(labels.indistinguishable);
    EXPECT_EQ(labels.tv_gap, 0);

    const auto gap = fingerprints_indistinguishable(Distribution::uniform(2), Distribution::point_mass(2, 1), 2);
    EXPECT_FALSE(gap.indistinguishable);
    EXPECT_EQ(gap.tv_gap, Rational(1, 2));
}

TEST(Moment, SizeGuard) {
    Budget tight = default_budget();
    tight.moment_work = 10;
    EXPECT_THROW(moment_vector(Distribution::uniform(20), 5, tight), SizeGuardExceeded);
}
