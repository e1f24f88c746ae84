#include "binident/lowerbound.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "binident/binning.hpp"
#include "binident/error.hpp"
#include "binident/fingerprint.hpp"
#include "binident/parallel.hpp"

namespace binident {

MassString::MassString(std::string symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty() || symbols_.size() % 2 != 0) {
        throw InvalidArgument("mass string length must be even and positive, got " +
                              std::to_string(symbols_.size()));
    }
    std::size_t threes = 0;
    for (char c : symbols_) {
        if (c != '2' && c != '3') {
            throw InvalidArgument("mass string symbols must be '2' or '3': '" + symbols_ + "'");
        }
        threes += c == '3' ? 1 : 0;
    }
    if (2 * threes != symbols_.size()) {
        throw InvalidArgument("mass string must be balanced: '" + symbols_ + "'");
    }
}

MassString MassString::rotated(std::size_t shift) const {
    const std::size_t n = b();
    shift %= n;
    return MassString(symbols_.substr(shift) + symbols_.substr(0, shift));
}

Distribution MassString::to_distribution() const {
    Rational scale(2, 5 * b());
    scale.canonicalize();
    std::vector<Rational> pmf;
    pmf.reserve(b());
    for (char c : symbols_) {
        pmf.emplace_back(Rational(c - '0') * scale);
    }
    return Distribution(std::move(pmf));
}

std::uint64_t balanced_string_count(std::size_t b) {
    mpz_class count;
    mpz_bin_uiui(count.get_mpz_t(), b, b / 2);
    if (!mpz_fits_ulong_p(count.get_mpz_t())) {
        return UINT64_MAX;
    }
    return count.get_ui();
}

void for_each_balanced_string(std::size_t b, const std::function<bool(const std::string&)>& visit) {
    if (b == 0 || b % 2 != 0) {
        throw InvalidArgument("balanced strings need an even positive length");
    }
    std::string s(b / 2, '2');
    s.append(b / 2, '3');
    do {
        if (!visit(s)) {
            return;
        }
    } while (std::next_permutation(s.begin(), s.end()));
}

std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>
longest_common_subsequence(std::string_view x, std::string_view y) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    std::vector<std::vector<std::size_t>> table(n + 1, std::vector<std::size_t>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            table[i][j] = x[i] == y[j] ? table[i + 1][j + 1] + 1
                                       : std::max(table[i + 1][j], table[i][j + 1]);
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> matches;
    std::size_t i = 0, j = 0;
    while (i < n && j < m) {
        if (x[i] == y[j] && table[i][j] == table[i + 1][j + 1] + 1) {
            matches.emplace_back(i, j);
            ++i;
            ++j;
        } else if (table[i + 1][j] >= table[i][j + 1]) {
            ++i;
        } else {
            ++j;
        }
    }
    return {table[0][0], std::move(matches)};
}

ShiftCheck is_partial_cyclic_shift(const MassString& x, const MassString& y, std::size_t r) {
    const std::size_t b = x.b();
    if (y.b() != b) {
        throw InvalidArgument("partial shift check needs equal lengths");
    }
    if (r > b) {
        throw InvalidArgument("partial shift threshold " + std::to_string(r) + " exceeds length " +
                              std::to_string(b));
    }
    std::size_t best = 0;
    std::size_t best_rotation = 0;
    for (std::size_t rotation = 0; rotation < b; ++rotation) {
        const std::size_t length =
            longest_common_subsequence(x.symbols(), y.rotated(rotation).symbols()).first;
        if (length > best) {
            best = length;
            best_rotation = rotation;
        }
        if (best == b) {
            break;
        }
    }
    ShiftCheck result{best >= r, best, std::nullopt};
    if (result.is_shift) {
        auto matches = longest_common_subsequence(x.symbols(), y.rotated(best_rotation).symbols()).second;
        ShiftWitness witness{best_rotation, {}};
        witness.matches.reserve(matches.size());
        for (auto [i, j] : matches) {
            witness.matches.emplace_back(i + 1, (j + best_rotation) % b + 1);
        }
        result.witness = std::move(witness);
    }
    return result;
}

namespace {

/// Unscaled m-way moment keys of a {2,3}-string, one per composition of m.
class MomentKeyer {
public:
    MomentKeyer(std::size_t m, std::size_t b) : compositions_(compositions(m)) {
        // every key is at most 3^m * C(b+m-1, m)
        mpz_class bound, terms;
        mpz_ui_pow_ui(bound.get_mpz_t(), 3, m);
        mpz_bin_uiui(terms.get_mpz_t(), b + m - 1, m);
        bound *= terms;
        if (mpz_sizeinbase(bound.get_mpz_t(), 2) > 63) {
            throw SizeGuardExceeded("find_hard_pair: moment keys for m = " + std::to_string(m) +
                                    ", b = " + std::to_string(b) + " overflow 64 bits");
        }
        for (std::size_t base : {2u, 3u}) {
            std::vector<std::uint64_t> powers(m + 1, 1);
            for (std::size_t e = 1; e <= m; ++e) {
                powers[e] = powers[e - 1] * base;
            }
            powers_.push_back(std::move(powers));
        }
    }

    std::vector<std::uint64_t> operator()(const std::string& symbols) const {
        std::vector<std::uint64_t> key;
        key.reserve(compositions_.size());
        std::vector<std::uint64_t> partial;
        for (const auto& f : compositions_) {
            const std::size_t t = f.t();
            partial.assign(t + 1, 0);
            partial[0] = 1;
            for (std::size_t i = 0; i < symbols.size(); ++i) {
                const auto& powers = powers_[symbols[i] == '3' ? 1 : 0];
                for (std::size_t j = std::min(t, i + 1); j >= 1; --j) {
                    partial[j] += partial[j - 1] * powers[f.counts()[j - 1]];
                }
            }
            key.push_back(partial[t]);
        }
        return key;
    }

private:
    std::vector<OrderedFingerprint> compositions_;
    std::vector<std::vector<std::uint64_t>> powers_;
};

}  // namespace

std::optional<HardPairBases> find_hard_pair(std::size_t m, std::size_t b, const Rational& rho,
                                            const Budget& budget) {
    if (m < 1) {
        throw InvalidArgument("find_hard_pair: m must be positive");
    }
    if (b < 2 || b % 2 != 0) {
        throw InvalidArgument("find_hard_pair: b must be even and at least 2");
    }
    if (rho <= 0 || rho > 1) {
        throw InvalidArgument("find_hard_pair: rho must lie in (0, 1]");
    }
    check_budget("find_hard_pair", balanced_string_count(b), budget.balanced_strings);
    const std::size_t r = static_cast<std::size_t>(ceil_to_u64(rho * Rational(b)));

    const MomentKeyer keyer(m, b);
    std::vector<std::string> strings;
    std::vector<std::size_t> bucket_of;
    std::map<std::vector<std::uint64_t>, std::size_t> bucket_ids;
    std::vector<std::vector<std::size_t>> buckets;
    for_each_balanced_string(b, [&](const std::string& s) {
        auto [it, inserted] = bucket_ids.try_emplace(keyer(s), buckets.size());
        if (inserted) {
            buckets.emplace_back();
        }
        buckets[it->second].push_back(strings.size());
        bucket_of.push_back(it->second);
        strings.push_back(s);
        return true;
    });

    for (std::size_t i = 0; i < strings.size(); ++i) {
        const auto& members = buckets[bucket_of[i]];
        const MassString x(strings[i]);
        for (auto it = std::upper_bound(members.begin(), members.end(), i); it != members.end(); ++it) {
            const MassString y(strings[*it]);
            if (is_partial_cyclic_shift(x, y, r).is_shift || is_partial_cyclic_shift(y, x, r).is_shift) {
                continue;
            }
            return HardPairBases{m,
                                 rho,
                                 x,
                                 y,
                                 x.to_distribution(),
                                 y.to_distribution(),
                                 static_cast<std::uint64_t>(strings.size()),
                                 buckets.size()};
        }
    }
    return std::nullopt;
}

std::pair<Distribution, Distribution> block_construct(const Distribution& p_base,
                                                      const Distribution& q_base,
                                                      std::size_t k_prime) {
    if (k_prime < 1) {
        throw InvalidArgument("block_construct: k' must be positive");
    }
    if (p_base.n() != q_base.n()) {
        throw InvalidArgument("block_construct: bases have different domain sizes");
    }
    const Rational share(1, k_prime);
    auto blow_up = [&](const Distribution& base) {
        std::vector<Rational> pmf;
        pmf.reserve(base.n() * k_prime);
        for (std::size_t block = 0; block < k_prime; ++block) {
            for (const auto& mass : base.pmf()) {
                pmf.emplace_back(mass * share);
            }
        }
        return Distribution(std::move(pmf));
    };
    return {blow_up(p_base), blow_up(q_base)};
}

HardInstancePair make_hard_instance(const HardPairBases& bases, std::size_t k_prime) {
    auto [p_big, q_big] = block_construct(bases.p_base, bases.q_base, k_prime);
    return HardInstancePair{bases.m,        bases.p_string.b(), k_prime,
                            bases.rho,      bases.p_string,     bases.q_string,
                            bases.p_base,   bases.q_base,       std::move(p_big),
                            std::move(q_big)};
}

Rational verify_distance_claim(const HardInstancePair& pair, const Budget& budget) {
    check_budget("verify_distance_claim", static_cast<std::uint64_t>(pair.p_big.n()), budget.claim_domain);
    return coarsening_distance(pair.p_big, pair.q_big);
}

Rational block_overflow_probability(std::size_t k_prime, std::size_t s, std::size_t m,
                                    const Budget& budget) {
    if (k_prime < 1) {
        throw InvalidArgument("block_overflow_probability: k' must be positive");
    }
    check_budget("block_overflow_probability", static_cast<std::uint64_t>(k_prime) * s,
                 budget.overflow_cells);
    if (s < m + 1) {
        return Rational(0);
    }

    // binom[t][c] = C(t, c) for c <= m
    const std::size_t cap = m;
    std::vector<std::vector<mpz_class>> binom(s + 1, std::vector<mpz_class>(cap + 1, 0));
    for (std::size_t t = 0; t <= s; ++t) {
        binom[t][0] = 1;
        for (std::size_t c = 1; c <= std::min(t, cap); ++c) {
            binom[t][c] = binom[t - 1][c - 1] + (c <= t - 1 ? binom[t - 1][c] : mpz_class(0));
        }
    }

    // ways[t]: sequences of t labeled balls over the blocks processed so far with
    // every block holding at most m balls
    std::vector<mpz_class> ways(s + 1, 0), next(s + 1);
    ways[0] = 1;
    for (std::size_t block = 0; block < k_prime; ++block) {
        for (std::size_t t = 0; t <= s; ++t) {
            next[t] = 0;
            for (std::size_t c = 0; c <= std::min(t, cap); ++c) {
                if (ways[t - c] != 0) {
                    next[t] += binom[t][c] * ways[t - c];
                }
            }
        }
        std::swap(ways, next);
    }

    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), k_prime, s);
    Rational within(ways[s], total);
    within.canonicalize();
    return 1 - within;
}

std::size_t max_block_load(const SampleSet& samples, std::size_t b, std::size_t k_prime) {
    std::vector<std::size_t> load(k_prime, 0);
    for (std::size_t v : samples.values) {
        if (v < 1 || v > b * k_prime) {
            throw InvalidArgument("sample value " + std::to_string(v) + " outside the block domain");
        }
        ++load[(v - 1) / b];
    }
    return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

SampleSizeCurve sample_size_curve(const HardInstancePair& pair, std::span<const std::size_t> s_grid,
                                  std::size_t trials, std::uint64_t seed, const Budget& budget) {
    if (trials == 0) {
        throw InvalidArgument("sample_size_curve: trials must be positive");
    }
    std::vector<Rational> exact;
    for (std::size_t s : s_grid) {
        exact.push_back(block_overflow_probability(pair.k_prime, s, pair.m, budget));
    }
    SampleSizeCurve curve;
    curve.trials.resize(s_grid.size() * trials);
    const Sampler sampler(pair.p_big);
    parallel_for(curve.trials.size(), [&](std::size_t index) {
        const std::size_t point = index / trials;
        const std::size_t trial = index % trials;
        CounterRng rng(seed + trial);
        SampleSet draws;
        draws.seed = rng.seed();
        draws.values.reserve(s_grid[point]);
        for (std::size_t i = 0; i < s_grid[point]; ++i) {
            draws.values.push_back(sampler.draw(rng));
        }
        const std::size_t load = max_block_load(draws, pair.b, pair.k_prime);
        curve.trials[index] = OverflowTrial{s_grid[point], trial, rng.seed(), load, load >= pair.m + 1};
    });

    for (std::size_t point = 0; point < s_grid.size(); ++point) {
        OverflowPoint summary{s_grid[point], trials, 0, 0.0, exact[point]};
        for (std::size_t trial = 0; trial < trials; ++trial) {
            summary.overflows += curve.trials[point * trials + trial].overflow ? 1 : 0;
        }
        summary.fraction = static_cast<double>(summary.overflows) / static_cast<double>(trials);
        curve.points.push_back(std::move(summary));
    }
    return curve;
}

}  // namespace binident
