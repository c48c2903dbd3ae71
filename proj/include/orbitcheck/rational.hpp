#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "orbitcheck/errors.hpp"

namespace orbitcheck {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

static_assert(std::numeric_limits<double>::is_iec559 && std::numeric_limits<double>::digits == 53,
              "IEEE-754 binary64 arithmetic is required");

namespace detail {

/// Digit-by-digit accumulation; the mpz string constructor auto-detects the
/// base, so "075" would silently parse as octal.
inline BigInt int_from_digits(std::string_view digits) {
    BigInt value = 0;
    for (char c : digits) value = value * 10 + (c - '0');
    return value;
}

}  // namespace detail

/// Parses a plain decimal literal ("3.8283", "4", ".5") into the exact
/// rational it spells. No exponent notation: the denominator is the power of
/// ten implied by the fractional digits, so nothing is rounded here.
inline BigRat rational_from_decimal(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    std::string digits;
    std::size_t frac_len = 0;
    bool seen_point = false;
    for (char c : rest) {
        if (c == '.') {
            if (seen_point) throw ParseError("malformed decimal: '" + std::string(text) + "'");
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_point) ++frac_len;
        } else {
            throw ParseError("malformed decimal: '" + std::string(text) + "'");
        }
    }
    if (digits.empty()) throw ParseError("malformed decimal: '" + std::string(text) + "'");
    BigInt num = detail::int_from_digits(digits);
    if (negative) num = -num;
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return BigRat(num, den);
}

/// Accepts either a decimal literal or an integer fraction "p/q".
inline BigRat rational_from_text(std::string_view text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) return rational_from_decimal(text);
    const std::string_view num_text = text.substr(0, slash);
    const std::string_view den_text = text.substr(slash + 1);
    const auto parse_int = [&](std::string_view part) {
        std::string_view rest = part;
        bool negative = false;
        if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
            negative = rest.front() == '-';
            rest.remove_prefix(1);
        }
        if (rest.empty() || rest.find_first_not_of("0123456789") != std::string_view::npos)
            throw ParseError("malformed fraction: '" + std::string(text) + "'");
        const BigInt value = detail::int_from_digits(rest);
        return negative ? BigInt(-value) : value;
    };
    const BigInt num = parse_int(num_text);
    const BigInt den = parse_int(den_text);
    if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    return BigRat(num, den);
}

enum class Rounding {
    nearest_even,     ///< IEEE round-to-nearest, ties to even
    toward_positive,  ///< directed toward +inf (conservative upper bound for errors)
};

/// Correctly rounded conversion of the ratio num/den (den > 0) to binary64.
///
/// The quotient is computed with enough integer headroom that the round and
/// sticky bits are exact, then rounded once at the destination precision;
/// subnormal outputs round at the 2^-1074 grid instead, so there is no double
/// rounding anywhere.
inline double ratio_to_double(const BigInt& num, const BigInt& den, Rounding mode) {
    using boost::multiprecision::msb;
    if (den <= 0) throw DomainError("ratio_to_double: denominator must be positive");
    if (num == 0) return 0.0;
    const bool negative = num < 0;
    const BigInt p = abs(num);

    // Scale so the integer quotient carries at least 55 bits.
    const long pb = static_cast<long>(msb(p));
    const long qb = static_cast<long>(msb(den));
    const long shift = 56 - (pb - qb);
    BigInt scaled_num = p;
    BigInt scaled_den = den;
    if (shift > 0)
        scaled_num <<= shift;
    else if (shift < 0)
        scaled_den <<= -shift;
    BigInt q, r;
    divide_qr(scaled_num, scaled_den, q, r);
    bool sticky = r != 0;

    const long qbits = static_cast<long>(msb(q)) + 1;  // 56..58
    const long e2 = -shift;                            // value = (q + frac) * 2^e2
    const long msb_exp = e2 + qbits - 1;
    if (msb_exp > 1023) return negative ? -HUGE_VAL : HUGE_VAL;
    long ulp_exp = msb_exp - 52;
    if (ulp_exp < -1074) ulp_exp = -1074;
    const long drop = ulp_exp - e2;  // >= 3; larger when the result is subnormal

    const bool round_bit = bit_test(q, static_cast<unsigned>(drop - 1));
    const BigInt below = q & ((BigInt(1) << (drop - 1)) - 1);
    sticky = sticky || below != 0;
    std::uint64_t kept = static_cast<std::uint64_t>(BigInt(q >> drop));  // <= 2^53 - 1

    bool increment = false;
    if (mode == Rounding::nearest_even)
        increment = round_bit && (sticky || (kept & 1u));
    else
        increment = !negative && (round_bit || sticky);
    if (increment) ++kept;  // may carry to 2^53, still exactly representable

    const double magnitude = std::ldexp(static_cast<double>(kept), static_cast<int>(ulp_exp));
    return negative ? -magnitude : magnitude;
}

/// Round-to-nearest-even image of an exact rational.
inline double to_double_nearest(const BigRat& x) {
    return ratio_to_double(numerator(x), denominator(x), Rounding::nearest_even);
}

/// Smallest binary64 >= x (for x >= 0); used to keep error bounds conservative.
inline double to_double_up(const BigRat& x) {
    return ratio_to_double(numerator(x), denominator(x), Rounding::toward_positive);
}

/// Exact rational value of a finite binary64.
inline BigRat rational_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("rational_from_double: value must be finite");
    return BigRat(x);  // mpq_set_d is exact
}

/// Decimal digit count of |x| (exact or one high, per mpz_sizeinbase); cheap
/// even for multi-million-digit integers, unlike a base-10 string conversion.
inline std::size_t decimal_digit_count(const BigInt& x) {
    if (x == 0) return 1;
    return mpz_sizeinbase(x.backend().data(), 10);
}

}  // namespace orbitcheck
