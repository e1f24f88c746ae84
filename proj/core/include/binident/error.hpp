#pragma once

#include <stdexcept>
#include <string>

#include "binident/rational.hpp"

namespace binident {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (mismatched sizes, out-of-range parameters).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An enumeration or exact DP would exceed its configured budget.
class SizeGuardExceeded : public Error {
public:
    using Error::Error;
};

/// No partition satisfies the nonemptiness constraint.
class InfeasibleConstraint : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (JSON, rationals, composition strings).
class FormatError : public Error {
public:
    using Error::Error;
};

/// A pmf whose entries do not sum to exactly one.
class NormalizationError : public Error {
public:
    NormalizationError(const std::string& what, Rational deficit)
        : Error(what), deficit_(std::move(deficit)) {}

    /// 1 - sum(pmf); negative when the entries overshoot.
    const Rational& deficit() const noexcept { return deficit_; }

private:
    Rational deficit_;
};

}  // namespace binident
