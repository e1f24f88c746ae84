#include "binident/binning.hpp"

#include <limits>
#include <string>

#include "binident/error.hpp"

namespace binident {

IntervalPartition::IntervalPartition(std::vector<std::size_t> bounds) : bounds_(std::move(bounds)) {
    if (bounds_.size() < 2) {
        throw InvalidArgument("partition needs at least one bin");
    }
    if (bounds_.front() != 0) {
        throw InvalidArgument("partition bounds must start at 0");
    }
    for (std::size_t j = 1; j < bounds_.size(); ++j) {
        if (bounds_[j] < bounds_[j - 1]) {
            throw InvalidArgument("partition bounds must be nondecreasing: " + to_string());
        }
    }
}

IntervalPartition IntervalPartition::from_labels(const std::vector<std::size_t>& labels, std::size_t k) {
    std::vector<std::size_t> bounds(k + 1, 0);
    std::size_t previous = 1;
    for (std::size_t label : labels) {
        if (label < previous || label > k) {
            throw InvalidArgument("labels must be nondecreasing values in [1, k]");
        }
        previous = label;
        ++bounds[label];
    }
    for (std::size_t j = 1; j <= k; ++j) {
        bounds[j] += bounds[j - 1];
    }
    return IntervalPartition(std::move(bounds));
}

std::pair<std::size_t, std::size_t> IntervalPartition::interval(std::size_t j) const {
    if (j < 1 || j > k()) {
        throw InvalidArgument("bin " + std::to_string(j) + " outside [1, " + std::to_string(k()) + "]");
    }
    return {bounds_[j - 1], bounds_[j]};
}

std::size_t IntervalPartition::size_of(std::size_t j) const {
    auto [lo, hi] = interval(j);
    return hi - lo;
}

Rational IntervalPartition::mass(const Distribution& d, std::size_t j) const {
    auto [lo, hi] = interval(j);
    return d.interval_mass(lo, hi);
}

std::string IntervalPartition::to_string() const {
    std::string out = "[";
    for (std::size_t j = 0; j < bounds_.size(); ++j) {
        if (j > 0) out += ',';
        out += std::to_string(bounds_[j]);
    }
    return out + "]";
}

std::uint64_t partition_count(std::size_t n, std::size_t k) {
    if (k == 0) {
        return 0;
    }
    mpz_class count;
    mpz_bin_uiui(count.get_mpz_t(), n + k - 1, n);
    if (!mpz_fits_ulong_p(count.get_mpz_t())) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return count.get_ui();
}

PartitionStream::PartitionStream(std::size_t n, std::size_t k, const Budget& budget)
    : total_(partition_count(n, k)) {
    if (n == 0 || k == 0) {
        throw InvalidArgument("enumerate_partitions: n and k must be positive");
    }
    check_budget("enumerate_partitions", total_, budget.partitions);
    bounds_.assign(k + 1, 0);
    bounds_.back() = n;
}

std::optional<IntervalPartition> PartitionStream::next() {
    if (done_) {
        return std::nullopt;
    }
    if (!started_) {
        started_ = true;
        return IntervalPartition(bounds_);
    }
    const std::size_t k = bounds_.size() - 1;
    const std::size_t n = bounds_.back();
    // advance the rightmost interior bound that still has room
    std::size_t j = k - 1;
    while (j >= 1 && bounds_[j] == n) {
        --j;
    }
    if (j == 0) {
        done_ = true;
        return std::nullopt;
    }
    ++bounds_[j];
    for (std::size_t r = j + 1; r < k; ++r) {
        bounds_[r] = bounds_[j];
    }
    return IntervalPartition(bounds_);
}

namespace {

void require_matching(const Distribution& p, const IntervalPartition& partition, const Distribution& q) {
    if (partition.n() != p.n() || partition.k() != q.n()) {
        throw InvalidArgument("partition " + partition.to_string() + " does not map [" +
                              std::to_string(p.n()) + "] onto [" + std::to_string(q.n()) + "]");
    }
}

}  // namespace

Rational binned_discrepancy(const Distribution& p, const IntervalPartition& partition,
                            const Distribution& q) {
    require_matching(p, partition, q);
    Rational sum = 0;
    for (std::size_t j = 1; j <= q.n(); ++j) {
        sum += abs(partition.mass(p, j) - q.pmf()[j - 1]);
    }
    return sum;
}

BinningResult min_binned_discrepancy(const Distribution& p_hat, const Distribution& q,
                                     SupportBins support) {
    const std::size_t n = p_hat.n();
    const std::size_t k = q.n();
    const bool constrained = support == SupportBins::must_be_nonempty;
    if (constrained) {
        std::size_t positive = 0;
        for (const auto& mass : q.pmf()) {
            positive += mass > 0 ? 1 : 0;
        }
        if (positive > n) {
            throw InfeasibleConstraint("reference has " + std::to_string(positive) +
                                       " positive bins but the domain has only " +
                                       std::to_string(n) + " elements");
        }
    }

    const auto& prefix = p_hat.prefix();
    auto needs_element = [&](std::size_t bin) { return constrained && q.pmf()[bin - 1] > 0; };

    // rest[j][i]: least discrepancy for elements (i, n] spread over bins j+1..k.
    std::vector<std::vector<Rational>> rest(k + 1, std::vector<Rational>(n + 1));
    std::vector<std::vector<char>> reachable(k + 1, std::vector<char>(n + 1, 0));
    reachable[k][n] = 1;

    Rational cost;
    for (std::size_t j = k; j-- > 0;) {
        const std::size_t bin = j + 1;
        const Rational& target = q.pmf()[j];
        const std::size_t min_width = needs_element(bin) ? 1 : 0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t split = i + min_width; split <= n; ++split) {
                if (!reachable[j + 1][split]) {
                    continue;
                }
                cost = prefix[split] - prefix[i];
                cost -= target;
                cost = abs(cost);
                cost += rest[j + 1][split];
                if (!reachable[j][i] || cost < rest[j][i]) {
                    rest[j][i] = cost;
                    reachable[j][i] = 1;
                }
            }
        }
    }
    if (!reachable[0][0]) {
        throw InfeasibleConstraint("no admissible partition");
    }

    std::vector<std::size_t> bounds(k + 1, 0);
    std::size_t position = 0;
    for (std::size_t bin = 1; bin <= k; ++bin) {
        const Rational& target = q.pmf()[bin - 1];
        bool chosen = false;
        for (std::size_t split = position + (needs_element(bin) ? 1 : 0); split <= n; ++split) {
            if (!reachable[bin][split]) {
                continue;
            }
            cost = prefix[split] - prefix[position];
            cost -= target;
            cost = abs(cost);
            cost += rest[bin][split];
            if (cost == rest[bin - 1][position]) {
                position = split;
                chosen = true;
                break;
            }
        }
        if (!chosen) {
            throw Error("min_binned_discrepancy: traceback failed");
        }
        bounds[bin] = position;
    }
    return BinningResult{rest[0][0], IntervalPartition(std::move(bounds))};
}

Rational coarsening_distance(const Distribution& p, const Distribution& q) {
    return min_binned_discrepancy(p, q, SupportBins::may_be_empty).delta;
}

Distribution greedy_repair(const Distribution& p, const IntervalPartition& partition,
                           const Distribution& q) {
    require_matching(p, partition, q);
    const std::size_t k = q.n();

    std::vector<Rational> gap(k);  // p(I_j) - q(j); positive means over-full
    for (std::size_t j = 1; j <= k; ++j) {
        gap[j - 1] = partition.mass(p, j) - q.pmf()[j - 1];
        if (gap[j - 1] < 0 && partition.size_of(j) == 0) {
            throw InvalidArgument("greedy_repair: under-full bin " + std::to_string(j) +
                                  " has an empty interval");
        }
    }

    std::vector<Rational> pmf = p.pmf();
    for (;;) {
        std::size_t over = k;
        std::size_t under = k;
        for (std::size_t j = 0; j < k; ++j) {
            if (over == k && gap[j] > 0) over = j;
            if (under == k && gap[j] < 0) under = j;
        }
        if (over == k || under == k) {
            break;
        }
        const Rational delta = gap[over] < -gap[under] ? gap[over] : Rational(-gap[under]);

        auto [over_lo, over_hi] = partition.interval(over + 1);
        Rational remaining = delta;
        for (std::size_t e = over_hi; e > over_lo && remaining > 0; --e) {
            Rational& mass = pmf[e - 1];
            if (mass >= remaining) {
                mass -= remaining;
                remaining = 0;
            } else {
                remaining -= mass;
                mass = 0;
            }
        }
        auto under_lo = partition.interval(under + 1).first;
        pmf[under_lo] += delta;

        gap[over] -= delta;
        gap[under] += delta;
    }
    return Distribution(std::move(pmf));
}

}  // namespace binident
