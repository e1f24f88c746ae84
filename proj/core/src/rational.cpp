#include "binident/rational.hpp"

#include <cctype>

#include "binident/error.hpp"

namespace binident {
namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void bad(std::string_view text) {
    throw FormatError("not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);

    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(text);
        const mpz_class d{std::string(den), 10};
        if (d == 0) {
            throw FormatError("zero denominator in '" + std::string(text) + "'");
        }
        result = Rational(mpz_class(std::string(num), 10), d);
    } else {
        // decimal with optional fraction and exponent
        std::string_view mantissa = body;
        long exponent = 0;
        if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = body.substr(0, e);
            auto exp_text = body.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) bad(text);
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
        }
        std::string digits;
        if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            auto whole = mantissa.substr(0, dot);
            auto frac = mantissa.substr(dot + 1);
            if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
                (whole.empty() && frac.empty())) {
                bad(text);
            }
            digits = std::string(whole) + std::string(frac);
            exponent -= static_cast<long>(frac.size());
        } else {
            if (!all_digits(mantissa)) bad(text);
            digits = std::string(mantissa);
        }
        mpz_class value(digits, 10);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        result = exponent < 0 ? Rational(value, scale) : Rational(value * scale);
    }
    result.canonicalize();
    if (negative) {
        result = -result;
    }
    return result;
}

std::string to_string(const Rational& value) {
    return value.get_str();
}

double to_double(const Rational& value) {
    return value.get_d();
}

std::uint64_t ceil_to_u64(const Rational& value) {
    if (value < 0) {
        throw InvalidArgument("ceil_to_u64: negative value " + to_string(value));
    }
    mpz_class result;
    mpz_cdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    if (!mpz_fits_ulong_p(result.get_mpz_t())) {
        throw InvalidArgument("ceil_to_u64: value too large " + to_string(value));
    }
    return result.get_ui();
}

}  // namespace binident
