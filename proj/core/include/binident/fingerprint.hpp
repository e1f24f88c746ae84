#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "binident/budget.hpp"
#include "binident/distribution.hpp"
#include "binident/rational.hpp"

namespace binident {

/// Multiplicities of the distinct values of a sample, ordered by value, labels
/// removed. Always a composition of the sample size s.
class OrderedFingerprint {
public:
    explicit OrderedFingerprint(std::vector<std::size_t> counts);

    /// Inverse of to_string: "2+1+1".
    static OrderedFingerprint parse(std::string_view text);

    const std::vector<std::size_t>& counts() const noexcept { return counts_; }
    std::size_t s() const noexcept { return s_; }
    std::size_t t() const noexcept { return counts_.size(); }
    std::string to_string() const;

    OrderedFingerprint reversed() const;

    friend bool operator==(const OrderedFingerprint&, const OrderedFingerprint&) = default;
    friend auto operator<=>(const OrderedFingerprint& a, const OrderedFingerprint& b) {
        return a.counts_ <=> b.counts_;
    }

private:
    std::vector<std::size_t> counts_;
    std::size_t s_ = 0;
};

/// All 2^(s-1) compositions of s in lexicographic order.
std::vector<OrderedFingerprint> compositions(std::size_t s);

OrderedFingerprint fingerprint_of(const SampleSet& samples);

/// s! / (F_1! ... F_t!)
mpz_class multinomial(const OrderedFingerprint& f);

/// Probability that s i.i.d. draws from d have ordered fingerprint f:
///   multinomial(f) * sum_{i_1 < ... < i_t} prod_j d(i_j)^{F_j}.
/// The elementary sum is accumulated by a DP over domain positions, O(n t).
Rational moment(const Distribution& d, const OrderedFingerprint& f,
                const Budget& budget = default_budget());

struct MomentVector {
    std::size_t s = 0;
    /// Lexicographic composition order.
    std::vector<std::pair<OrderedFingerprint, Rational>> entries;

    const Rational& at(const OrderedFingerprint& f) const;
    friend bool operator==(const MomentVector&, const MomentVector&) = default;
};

MomentVector moment_vector(const Distribution& d, std::size_t s,
                           const Budget& budget = default_budget());

struct Indistinguishability {
    bool indistinguishable;
    /// TV distance between the two fingerprint distributions.
    Rational tv_gap;
};

Indistinguishability fingerprints_indistinguishable(const Distribution& d1, const Distribution& d2,
                                                    std::size_t s,
                                                    const Budget& budget = default_budget());

}  // namespace binident
