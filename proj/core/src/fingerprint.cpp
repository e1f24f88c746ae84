#include "binident/fingerprint.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "binident/error.hpp"

namespace binident {

OrderedFingerprint::OrderedFingerprint(std::vector<std::size_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) {
        throw InvalidArgument("ordered fingerprint needs at least one count");
    }
    for (std::size_t c : counts_) {
        if (c == 0) {
            throw InvalidArgument("ordered fingerprint counts must be positive");
        }
        s_ += c;
    }
}

OrderedFingerprint OrderedFingerprint::parse(std::string_view text) {
    std::vector<std::size_t> counts;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto plus = text.find('+', start);
        auto part = text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
        if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw FormatError("bad composition '" + std::string(text) + "'");
        }
        counts.push_back(std::stoul(std::string(part)));
        if (plus == std::string_view::npos) {
            break;
        }
        start = plus + 1;
    }
    try {
        return OrderedFingerprint(std::move(counts));
    } catch (const InvalidArgument& e) {
        throw FormatError(e.what());
    }
}

std::string OrderedFingerprint::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i > 0) out += '+';
        out += std::to_string(counts_[i]);
    }
    return out;
}

OrderedFingerprint OrderedFingerprint::reversed() const {
    return OrderedFingerprint(std::vector<std::size_t>(counts_.rbegin(), counts_.rend()));
}

namespace {

void extend_compositions(std::size_t remaining, std::vector<std::size_t>& prefix,
                         std::vector<OrderedFingerprint>& out) {
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    for (std::size_t first = 1; first <= remaining; ++first) {
        prefix.push_back(first);
        extend_compositions(remaining - first, prefix, out);
        prefix.pop_back();
    }
}

Rational power(const Rational& base, std::size_t exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Rational result(num, den);
    result.canonicalize();
    return result;
}

std::uint64_t composition_count(std::size_t s) {
    if (s == 0 || s > 63) {
        throw InvalidArgument("composition size " + std::to_string(s) + " outside [1, 63]");
    }
    return std::uint64_t{1} << (s - 1);
}

}  // namespace

std::vector<OrderedFingerprint> compositions(std::size_t s) {
    std::vector<OrderedFingerprint> out;
    out.reserve(composition_count(s));
    std::vector<std::size_t> prefix;
    extend_compositions(s, prefix, out);
    return out;
}

OrderedFingerprint fingerprint_of(const SampleSet& samples) {
    if (samples.empty()) {
        throw InvalidArgument("fingerprint_of: empty sample");
    }
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t v : samples.values) {
        ++counts[v];
    }
    std::vector<std::size_t> ordered;
    ordered.reserve(counts.size());
    for (const auto& [value, count] : counts) {
        ordered.push_back(count);
    }
    return OrderedFingerprint(std::move(ordered));
}

mpz_class multinomial(const OrderedFingerprint& f) {
    mpz_class result, factor;
    mpz_fac_ui(result.get_mpz_t(), f.s());
    for (std::size_t c : f.counts()) {
        mpz_fac_ui(factor.get_mpz_t(), c);
        result /= factor;
    }
    return result;
}

Rational moment(const Distribution& d, const OrderedFingerprint& f, const Budget& budget) {
    const std::size_t t = f.t();
    check_budget("moment", static_cast<std::uint64_t>(d.n()) * t, budget.moment_work);

    // partial[j]: sum over i_1 < ... < i_j among the elements seen so far of
    // prod_{r <= j} d(i_r)^{F_r}
    std::vector<Rational> partial(t + 1, Rational(0));
    partial[0] = 1;
    for (std::size_t i = 0; i < d.n(); ++i) {
        const Rational& mass = d.pmf()[i];
        if (mass == 0) {
            continue;
        }
        for (std::size_t j = std::min(t, i + 1); j >= 1; --j) {
            if (partial[j - 1] != 0) {
                partial[j] += partial[j - 1] * power(mass, f.counts()[j - 1]);
            }
        }
    }
    return Rational(multinomial(f)) * partial[t];
}

const Rational& MomentVector::at(const OrderedFingerprint& f) const {
    for (const auto& [composition, value] : entries) {
        if (composition == f) {
            return value;
        }
    }
    throw InvalidArgument("composition " + f.to_string() + " is not part of this " +
                          std::to_string(s) + "-way moment vector");
}

MomentVector moment_vector(const Distribution& d, std::size_t s, const Budget& budget) {
    const std::uint64_t count = composition_count(s);
    check_budget("moment_vector", count * d.n() * s, budget.moment_work);
    MomentVector result;
    result.s = s;
    for (auto& f : compositions(s)) {
        Rational value = moment(d, f, Budget::uniform(UINT64_MAX));
        result.entries.emplace_back(std::move(f), std::move(value));
    }
    return result;
}

Indistinguishability fingerprints_indistinguishable(const Distribution& d1, const Distribution& d2,
                                                    std::size_t s, const Budget& budget) {
    const auto v1 = moment_vector(d1, s, budget);
    const auto v2 = moment_vector(d2, s, budget);
    Rational gap = 0;
    for (std::size_t i = 0; i < v1.entries.size(); ++i) {
        gap += abs(v1.entries[i].second - v2.entries[i].second);
    }
    gap /= 2;
    return Indistinguishability{gap == 0, gap};
}

}  // namespace binident
