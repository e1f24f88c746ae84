#include "binident/distribution.hpp"

#include <algorithm>
#include <string>

#include "binident/error.hpp"

namespace binident {

Distribution::Distribution(std::vector<Rational> pmf) : pmf_(std::move(pmf)) {
    if (pmf_.empty()) {
        throw InvalidArgument("distribution over an empty domain");
    }
    prefix_.reserve(pmf_.size() + 1);
    prefix_.emplace_back(0);
    for (std::size_t i = 0; i < pmf_.size(); ++i) {
        pmf_[i].canonicalize();
        if (pmf_[i] < 0) {
            throw InvalidArgument("negative mass " + to_string(pmf_[i]) + " at element " +
                                  std::to_string(i + 1));
        }
        prefix_.emplace_back(prefix_.back() + pmf_[i]);
    }
    if (prefix_.back() != 1) {
        Rational deficit = 1 - prefix_.back();
        throw NormalizationError("pmf sums to " + to_string(prefix_.back()) + " (deficit " +
                                     to_string(deficit) + ")",
                                 deficit);
    }
}

Distribution Distribution::uniform(std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("uniform distribution over an empty domain");
    }
    return Distribution(std::vector<Rational>(n, Rational(1, n)));
}

Distribution Distribution::point_mass(std::size_t n, std::size_t element) {
    if (element < 1 || element > n) {
        throw InvalidArgument("point mass element " + std::to_string(element) + " outside [1, " +
                              std::to_string(n) + "]");
    }
    std::vector<Rational> pmf(n, Rational(0));
    pmf[element - 1] = 1;
    return Distribution(std::move(pmf));
}

Distribution Distribution::from_weights(std::span<const Rational> weights) {
    Rational total = 0;
    for (const auto& w : weights) {
        if (w < 0) {
            throw InvalidArgument("negative weight " + to_string(w));
        }
        total += w;
    }
    if (total <= 0) {
        throw InvalidArgument("weights have no positive mass");
    }
    std::vector<Rational> pmf;
    pmf.reserve(weights.size());
    for (const auto& w : weights) {
        pmf.emplace_back(w / total);
    }
    return Distribution(std::move(pmf));
}

const Rational& Distribution::mass(std::size_t element) const {
    if (element < 1 || element > n()) {
        throw InvalidArgument("element " + std::to_string(element) + " outside [1, " +
                              std::to_string(n()) + "]");
    }
    return pmf_[element - 1];
}

Rational Distribution::interval_mass(std::size_t lo, std::size_t hi) const {
    if (lo > hi || hi > n()) {
        throw InvalidArgument("bad interval (" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return prefix_[hi] - prefix_[lo];
}

Distribution Distribution::reversed() const {
    return Distribution(std::vector<Rational>(pmf_.rbegin(), pmf_.rend()));
}

std::vector<std::size_t> SampleSet::counts(std::size_t n) const {
    std::vector<std::size_t> result(n, 0);
    for (std::size_t v : values) {
        if (v < 1 || v > n) {
            throw InvalidArgument("sample value " + std::to_string(v) + " outside [1, " +
                                  std::to_string(n) + "]");
        }
        ++result[v - 1];
    }
    return result;
}

Sampler::Sampler(const Distribution& d) {
    thresholds_.reserve(d.n());
    const uint128 top = uint128{1} << 64;
    mpz_class scaled;
    for (std::size_t i = 1; i <= d.n(); ++i) {
        const Rational& cumulative = d.prefix()[i];
        if (cumulative >= 1) {
            thresholds_.push_back(top);
            continue;
        }
        // floor(cumulative * 2^64) < 2^64
        mpz_mul_2exp(scaled.get_mpz_t(), cumulative.get_num_mpz_t(), 64);
        mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), cumulative.get_den_mpz_t());
        thresholds_.push_back(static_cast<uint128>(scaled.get_ui()));
    }
}

std::size_t Sampler::draw(CounterRng& rng) const {
    const uint128 u = rng();
    auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), u);
    return static_cast<std::size_t>(it - thresholds_.begin()) + 1;
}

SampleSet sample(const Distribution& d, std::size_t s, std::uint64_t seed) {
    SampleSet result;
    result.seed = seed;
    result.values.reserve(s);
    const Sampler sampler(d);
    CounterRng rng(seed);
    for (std::size_t i = 0; i < s; ++i) {
        result.values.push_back(sampler.draw(rng));
    }
    return result;
}

namespace {

void require_same_domain(const Distribution& d1, const Distribution& d2, const char* op) {
    if (d1.n() != d2.n()) {
        throw InvalidArgument(std::string(op) + ": domain sizes differ (" + std::to_string(d1.n()) +
                              " vs " + std::to_string(d2.n()) + ")");
    }
}

std::vector<Rational> prefix_difference(const Distribution& d1, const Distribution& d2) {
    std::vector<Rational> diff(d1.n() + 1);
    for (std::size_t i = 0; i <= d1.n(); ++i) {
        diff[i] = d1.prefix()[i] - d2.prefix()[i];
    }
    return diff;
}

}  // namespace

Rational total_variation(const Distribution& d1, const Distribution& d2) {
    require_same_domain(d1, d2, "total_variation");
    Rational sum = 0;
    for (std::size_t i = 0; i < d1.n(); ++i) {
        sum += abs(d1.pmf()[i] - d2.pmf()[i]);
    }
    return sum / 2;
}

Rational kolmogorov_distance(const Distribution& d1, const Distribution& d2) {
    require_same_domain(d1, d2, "kolmogorov_distance");
    Rational best = 0;
    for (const auto& d : prefix_difference(d1, d2)) {
        if (abs(d) > best) {
            best = abs(d);
        }
    }
    return best;
}

Rational ak_distance(const Distribution& d1, const Distribution& d2, std::size_t ell) {
    require_same_domain(d1, d2, "ak_distance");
    const std::size_t n = d1.n();
    if (ell < 1 || ell > n) {
        throw InvalidArgument("ak_distance: ell = " + std::to_string(ell) + " outside [1, " +
                              std::to_string(n) + "]");
    }
    const auto diff = prefix_difference(d1, d2);

    // score[i]: best total for bounds ending at position i with the current number of
    // intervals. One interval: |D[i] - D[0]| = |D[i]|.
    std::vector<Rational> score(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        score[i] = abs(diff[i]);
    }
    std::vector<Rational> next(n + 1);
    Rational plus_best, minus_best, candidate;
    for (std::size_t layer = 2; layer <= ell; ++layer) {
        // plus_best = max_{i' <= i} score[i'] - D[i'], minus_best = max score[i'] + D[i']
        plus_best = score[0] - diff[0];
        minus_best = score[0] + diff[0];
        for (std::size_t i = 0; i <= n; ++i) {
            candidate = score[i] - diff[i];
            if (candidate > plus_best) plus_best = candidate;
            candidate = score[i] + diff[i];
            if (candidate > minus_best) minus_best = candidate;
            next[i] = diff[i] + plus_best;
            candidate = minus_best - diff[i];
            if (candidate > next[i]) next[i] = candidate;
        }
        std::swap(score, next);
    }
    return score[n];
}

Distribution empirical(const SampleSet& samples, std::size_t n) {
    if (samples.empty()) {
        throw InvalidArgument("empirical: empty sample set");
    }
    const auto counts = samples.counts(n);
    const Rational total(samples.size());
    std::vector<Rational> pmf;
    pmf.reserve(n);
    for (std::size_t c : counts) {
        pmf.emplace_back(Rational(c) / total);
    }
    return Distribution(std::move(pmf));
}

}  // namespace binident
