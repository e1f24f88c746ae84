#pragma once

#include <string>
#include <vector>

#include "binident/distribution.hpp"
#include "binident/rational.hpp"

namespace binident::fixtures {

inline Distribution from_strings(const std::vector<std::string>& entries) {
    std::vector<Rational> pmf;
    for (const auto& e : entries) pmf.push_back(parse_rational(e));
    return Distribution(std::move(pmf));
}

/// n = 20 example: p = (1/50) (1,2,3,0,3,3,2,1,4,3,5,4,2,0,0,3,4,2,4,4).
inline Distribution twenty_p() {
    const int weights[] = {1, 2, 3, 0, 3, 3, 2, 1, 4, 3, 5, 4, 2, 0, 0, 3, 4, 2, 4, 4};
    std::vector<Rational> pmf;
    for (int w : weights) {
        Rational mass(w, 50);
        mass.canonicalize();
        pmf.push_back(mass);
    }
    return Distribution(std::move(pmf));
}

inline Distribution twenty_q() { return from_strings({"3/10", "0", "1/2", "1/5"}); }

/// n = k = 6 example.
inline Distribution six_p() { return from_strings({"1/20", "2/5", "1/20", "1/80", "37/80", "1/40"}); }
inline Distribution six_q() { return from_strings({"0", "1/2", "0", "0", "1/2", "0"}); }

}  // namespace binident::fixtures
