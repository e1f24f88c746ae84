#include "binident/budget.hpp"

#include <cstdlib>
#include <string>

#include "binident/error.hpp"

namespace binident {

Budget Budget::uniform(std::uint64_t limit) noexcept {
    return Budget{limit, limit, limit, limit, limit};
}

Budget Budget::from_env() {
    const char* raw = std::getenv("BINIDENT_BUDGET");
    if (raw == nullptr || *raw == '\0') {
        return Budget{};
    }
    std::size_t used = 0;
    unsigned long long limit = 0;
    try {
        limit = std::stoull(raw, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != std::string(raw).size() || limit == 0) {
        throw InvalidArgument(std::string("BINIDENT_BUDGET must be a positive integer, got '") + raw + "'");
    }
    return uniform(limit);
}

const Budget& default_budget() {
    static const Budget budget = Budget::from_env();
    return budget;
}

void check_budget(std::string_view what, std::uint64_t required, std::uint64_t limit) {
    if (required > limit) {
        throw SizeGuardExceeded(std::string(what) + ": requires " + std::to_string(required) +
                                ", budget is " + std::to_string(limit) +
                                " (raise with BINIDENT_BUDGET)");
    }
}

}  // namespace binident
