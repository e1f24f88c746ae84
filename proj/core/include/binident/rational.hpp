#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace binident {

/// Exact arbitrary-precision rational. Every probability mass in the library is one.
using Rational = mpq_class;

/// Parses "a/b", "a", or a plain decimal ("0.125", "-3", "2.5e-3") into an exact rational.
/// Throws FormatError on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "a/b" form ("a" when the denominator is 1).
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Smallest integer >= value. Throws InvalidArgument if value is negative or too large.
std::uint64_t ceil_to_u64(const Rational& value);

}  // namespace binident
