#pragma once

#include <cstdint>
#include <string_view>

namespace binident {

/// Size guards for every enumeration and exact DP in the library.
///
/// The environment variable BINIDENT_BUDGET, when set to a positive integer,
/// replaces every limit below with that value.
struct Budget {
    /// Partitions yielded by enumerate_partitions, i.e. C(n+k-1, n).
    std::uint64_t partitions = 2'000'000;
    /// Inner-loop steps of moment evaluation, 2^(s-1) * n * s for a whole vector.
    std::uint64_t moment_work = 5'000'000;
    /// Balanced {2,3}-strings scanned by find_hard_pair, C(b, b/2). Admits b <= 20.
    std::uint64_t balanced_strings = 200'000;
    /// Domain size b*k' handed to the coarsening DP by verify_distance_claim.
    std::uint64_t claim_domain = 200;
    /// Cells k' * s of the balls-into-blocks DP.
    std::uint64_t overflow_cells = 200'000;

    static Budget uniform(std::uint64_t limit) noexcept;

    /// Defaults, overridden by BINIDENT_BUDGET if present.
    static Budget from_env();
};

/// Process-wide budget, read from the environment once.
const Budget& default_budget();

/// Throws SizeGuardExceeded naming `what` when required > limit.
void check_budget(std::string_view what, std::uint64_t required, std::uint64_t limit);

}  // namespace binident
