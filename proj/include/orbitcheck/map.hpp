#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/rational.hpp"

namespace orbitcheck {

/// One algebraic arrangement of the logistic update r*x*(1-x). Both forms are
/// identical over the reals; in binary64 they round differently at the third
/// operation, and that difference is the measurement this library is built on.
enum class ExtensionForm {
    expanded,  ///< x -> fl(fl(r*x) - fl(r*fl(x*x)))
    factored,  ///< x -> fl(fl(r*x) * fl(1-x))
};

inline const char* description(ExtensionForm form) {
    return form == ExtensionForm::expanded ? "r*x - r*(x*x)" : "(r*x)*(1-x)";
}

/// Map parameter carried both as binary64 and as the exact rational spelled
/// by its decimal text, so the oracle can reproduce exactly what the user meant.
struct MapParams {
    double r = 0.0;   ///< nearest binary64 of r_exact
    BigRat r_exact;   ///< the decimal literal as an exact rational, in lowest terms

    friend bool operator==(const MapParams& a, const MapParams& b) {
        return a.r == b.r && a.r_exact == b.r_exact;
    }
};

/// Builds MapParams from decimal text. The parameter is never accepted as a
/// raw binary64: "3.8283" means 38283/10000, not the double nearest to it.
inline MapParams make_params(std::string_view r_text) {
    BigRat r_exact = rational_from_decimal(r_text);
    if (r_exact <= 0 || r_exact > 4)
        throw RangeError("map parameter r must lie in (0, 4]: '" + std::string(r_text) + "'");
    const double r = to_double_nearest(r_exact);
    return {r, std::move(r_exact)};
}

struct InitialCondition {
    BigRat x0_exact;
    double x0_float = 0.0;  ///< correctly rounded (nearest-even) image of x0_exact
    std::string label;

    friend bool operator==(const InitialCondition& a, const InitialCondition& b) {
        return a.x0_exact == b.x0_exact &&
               std::bit_cast<std::uint64_t>(a.x0_float) == std::bit_cast<std::uint64_t>(b.x0_float);
    }
};

/// Parses "0.3", "300/341" or the token "1/r" (the reciprocal of r_exact).
inline InitialCondition parse_initial_condition(std::string_view text, const MapParams& params) {
    BigRat exact;
    if (text == "1/r")
        exact = 1 / params.r_exact;
    else
        exact = rational_from_text(text);
    if (exact < 0 || exact > 1)
        throw RangeError("initial condition must lie in [0, 1]: '" + std::string(text) + "'");
    const double x0 = to_double_nearest(exact);
    return {std::move(exact), x0, std::string(text)};
}

/// One map application in the form's exact evaluation order. Every
/// intermediate is a named binary64 rounded to nearest; the build disables FMA
/// contraction so the compiler cannot fuse the multiply-subtract of the
/// expanded form (see the bit-pattern sentinels in the test suite).
inline double step(ExtensionForm form, double r, double x) noexcept {
    if (form == ExtensionForm::expanded) {
        const double rx = r * x;
        const double x_sq = x * x;
        const double r_x_sq = r * x_sq;
        return rx - r_x_sq;
    }
    const double rx = r * x;
    const double one_minus_x = 1.0 - x;
    return rx * one_minus_x;
}

/// Rounding can overshoot [0,1] by a few ulp at most; anything past this band
/// is a fault to report, never to clamp.
inline constexpr double kRangeSlack = 4.0 * std::numeric_limits<double>::epsilon();

struct PseudoOrbit {
    ExtensionForm form;
    MapParams params;
    InitialCondition x0;
    std::vector<double> values;  ///< values[0] == x0.x0_float, values[n+1] == step(form, r, values[n])

    std::size_t iterations() const { return values.empty() ? 0 : values.size() - 1; }
};

/// Iterates the map n times from x0. Deterministic: repeated calls are
/// bit-identical on any host honoring the strict evaluation order.
/// Throws RangeFault (with the index) if an iterate escapes the guard band.
inline PseudoOrbit iterate(ExtensionForm form, const MapParams& params, const InitialCondition& x0,
                           std::size_t n) {
    PseudoOrbit orbit{form, params, x0, {}};
    orbit.values.reserve(n + 1);
    double x = x0.x0_float;
    for (std::size_t i = 0;; ++i) {
        if (!(x >= -kRangeSlack && x <= 1.0 + kRangeSlack)) throw RangeFault(i, x);
        orbit.values.push_back(x);
        if (i == n) break;
        x = step(form, params.r, x);
    }
    return orbit;
}

/// The two fixed points of the logistic map: 0 and fl(1 - fl(1/r)).
inline std::pair<double, double> fixed_points(const MapParams& params) {
    const double inv_r = 1.0 / params.r;
    const double nontrivial = 1.0 - inv_r;
    return {0.0, nontrivial};
}

}  // namespace orbitcheck
