#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/lbe.hpp"
#include "orbitcheck/map.hpp"
#include "orbitcheck/rational.hpp"

namespace orbitcheck {

/// Denominator digits roughly double per iteration; horizon 20 for the usual
/// parameter sets needs 5-8 million digits, so this default clears it while
/// still stopping runaway horizons.
inline constexpr std::size_t kDefaultOracleDigitBudget = 10'000'000;

/// Exact rational iterate, kept as a raw lowest-terms pair. With x = p/q and
/// r = a/b both in lowest terms, gcd(a*p*(q-p), b*q*q) divides a*b, so the
/// reduction only ever takes gcds against the small constant a*b; a full-size
/// gcd would dominate the runtime at multi-million-digit operands.
struct ExactValue {
    BigInt num;
    BigInt den;  // > 0, gcd(num, den) == 1
};

struct ExactOrbit {
    MapParams params;
    BigRat x0_exact;
    std::vector<ExactValue> values;  ///< values[n+1] = r * values[n] * (1 - values[n]), exactly

    std::size_t horizon() const { return values.empty() ? 0 : values.size() - 1; }
};

/// Iterates the map in exact rational arithmetic. Cost grows geometrically:
/// each step roughly doubles the digit count of the denominator. Throws
/// BudgetError (naming the last completed index) once a denominator would
/// exceed `digit_budget` decimal digits.
inline ExactOrbit exact_orbit(const MapParams& params, const InitialCondition& x0,
                              std::size_t horizon,
                              std::size_t digit_budget = kDefaultOracleDigitBudget) {
    ExactOrbit orbit{params, x0.x0_exact, {}};
    orbit.values.reserve(horizon + 1);

    const BigInt a = numerator(params.r_exact);
    const BigInt b = denominator(params.r_exact);
    const BigInt ab = a * b;

    BigInt p = numerator(x0.x0_exact);
    BigInt q = denominator(x0.x0_exact);
    orbit.values.push_back({p, q});

    for (std::size_t n = 0; n < horizon; ++n) {
        if (p < 0 || p > q) throw Error("exact orbit left [0, 1]");  // impossible for r in (0,4]
        BigInt next_num = a * p * (q - p);
        if (next_num == 0) {
            p = 0;
            q = 1;
        } else {
            BigInt next_den = b * q * q;
            // gcd(next_num, next_den) divides ab, so two cheap gcds suffice.
            const BigInt g = gcd(BigInt(gcd(next_num, ab)), BigInt(gcd(next_den, ab)));
            if (g > 1) {
                next_num /= g;
                next_den /= g;
            }
            p = std::move(next_num);
            q = std::move(next_den);
        }
        if (decimal_digit_count(q) > digit_budget) throw BudgetError(n, digit_budget);
        orbit.values.push_back({p, q});
    }
    return orbit;
}

/// Conservative per-index true errors of each pseudo-orbit against the exact
/// orbit: computed by exact rational subtraction, then rounded toward +inf so
/// a reported error is never smaller than the true one.
struct TrueErrorSeries {
    std::vector<double> err_a;
    std::vector<double> err_b;

    std::size_t horizon() const { return err_a.empty() ? 0 : err_a.size() - 1; }
};

/// |pseudo - num/den| rounded up, without constructing a canonical rational:
/// pseudo = t/2^k exactly, so the difference is |t*den - num*2^k| / (den*2^k).
inline double true_error_bound(double pseudo, const ExactValue& exact) {
    const BigRat dyadic = rational_from_double(pseudo);
    const BigInt err_num = abs(numerator(dyadic) * exact.den - exact.num * denominator(dyadic));
    const BigInt err_den = exact.den * denominator(dyadic);
    return ratio_to_double(err_num, err_den, Rounding::toward_positive);
}

inline TrueErrorSeries true_errors(const PseudoOrbit& orbit_a, const PseudoOrbit& orbit_b,
                                   const ExactOrbit& exact) {
    if (!(orbit_a.params == orbit_b.params) || !(orbit_a.params == exact.params))
        throw MismatchError("true_errors: map parameters differ");
    if (orbit_a.x0.x0_exact != orbit_b.x0.x0_exact || orbit_a.x0.x0_exact != exact.x0_exact)
        throw MismatchError("true_errors: initial conditions differ");
    if (exact.values.size() > orbit_a.values.size() || exact.values.size() > orbit_b.values.size())
        throw MismatchError("true_errors: oracle horizon exceeds orbit length");

    TrueErrorSeries series;
    const std::size_t count = exact.values.size();
    series.err_a.reserve(count);
    series.err_b.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        series.err_a.push_back(true_error_bound(orbit_a.values[n], exact.values[n]));
        series.err_b.push_back(true_error_bound(orbit_b.values[n], exact.values[n]));
    }
    return series;
}

/// Per-index check of the lower-bound property: at least one of the two true
/// errors must reach delta[n]. Holds on every honest run by the triangle
/// inequality; a failure means the divergence series and the orbits do not
/// belong together.
struct LbeValidation {
    std::vector<bool> pass;
    std::optional<std::size_t> first_failure;

    bool all_pass() const { return !first_failure.has_value(); }
};

inline LbeValidation validate_lbe(const DivergenceSeries& series, const TrueErrorSeries& errors) {
    if (errors.err_a.size() != errors.err_b.size())
        throw MismatchError("validate_lbe: error series lengths differ");
    if (errors.err_a.size() > series.delta.size())
        throw MismatchError("validate_lbe: error horizon exceeds divergence series");

    LbeValidation result;
    result.pass.reserve(errors.err_a.size());
    for (std::size_t n = 0; n < errors.err_a.size(); ++n) {
        const double larger = errors.err_a[n] > errors.err_b[n] ? errors.err_a[n] : errors.err_b[n];
        const bool ok = larger >= series.delta[n];
        result.pass.push_back(ok);
        if (!ok && !result.first_failure) result.first_failure = n;
    }
    return result;
}

}  // namespace orbitcheck
