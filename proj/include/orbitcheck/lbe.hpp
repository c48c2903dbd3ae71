#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/map.hpp"

namespace orbitcheck {

/// Per-iteration lower bound error between two pseudo-orbits, the derived
/// significant-digit estimates, and the maximum reliable iteration.
struct DivergenceSeries {
    std::vector<double> delta;          ///< delta[n] = |x_a[n] - x_b[n]| / 2
    std::vector<double> digits;         ///< significant_digits(delta[n]); +inf where delta == 0
    std::optional<std::size_t> n_max;   ///< first unreliable iteration, if reached
    double digit_floor = 0.0;           ///< threshold used for n_max
};

/// Reliable-decimal-digit estimate for a unit-interval signal whose two
/// equivalent evaluations differ by a gap of 2*delta: -log10(2*delta).
/// Zero gap means every digit agrees (+inf). This is an absolute-accuracy
/// count; callers wanting a relative count can divide delta by the signal
/// magnitude before calling.
inline double significant_digits(double delta_n) {
    if (!(delta_n >= 0)) throw DomainError("significant_digits: delta must be nonnegative");
    if (delta_n == 0) return std::numeric_limits<double>::infinity();
    const double digits = -std::log10(2.0 * delta_n);
    return digits == 0.0 ? 0.0 : digits;  // normalize -0
}

/// First iteration with fewer than (digit_floor + 1) trustworthy decimal
/// digits, i.e. the first n whose digit estimate drops below floor + 1. With
/// the default floor of 0 an orbit is flagged as soon as not even one full
/// digit survives (orbit gap above 0.1). Raising the floor can only move the
/// flag earlier, never later.
inline std::optional<std::size_t> max_reliable_iteration(std::span<const double> delta,
                                                         double digit_floor) {
    if (!(digit_floor >= 0)) throw DomainError("max_reliable_iteration: digit_floor must be >= 0");
    for (std::size_t n = 0; n < delta.size(); ++n)
        if (significant_digits(delta[n]) < digit_floor + 1.0) return n;
    return std::nullopt;
}

/// Lower bound error series between two pseudo-orbits of the same run under
/// distinct extension forms: delta[n] = |x_a[n] - x_b[n]| / 2. By the triangle
/// inequality at least one of the two true per-orbit errors is >= delta[n],
/// which is what the oracle module verifies where it can.
inline DivergenceSeries lower_bound_error(const PseudoOrbit& orbit_a, const PseudoOrbit& orbit_b,
                                          double digit_floor = 0.0) {
    if (orbit_a.form == orbit_b.form)
        throw SameFormError("lower_bound_error: both orbits use the same extension form");
    if (orbit_a.values.size() != orbit_b.values.size())
        throw MismatchError("lower_bound_error: orbit lengths differ");
    if (!(orbit_a.params == orbit_b.params))
        throw MismatchError("lower_bound_error: map parameters differ");
    if (std::bit_cast<std::uint64_t>(orbit_a.x0.x0_float) !=
        std::bit_cast<std::uint64_t>(orbit_b.x0.x0_float))
        throw MismatchError("lower_bound_error: initial conditions differ");

    DivergenceSeries series;
    series.digit_floor = digit_floor;
    const std::size_t n = orbit_a.values.size();
    series.delta.reserve(n);
    series.digits.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double gap = std::fabs(orbit_a.values[i] - orbit_b.values[i]);
        double delta = gap * 0.5;
        // keep delta == 0 equivalent to bitwise equality: halving the smallest
        // subnormal gap would otherwise round to zero
        if (delta == 0.0 && gap > 0.0) delta = std::numeric_limits<double>::denorm_min();
        series.delta.push_back(delta);
        series.digits.push_back(significant_digits(delta));
    }
    series.n_max = max_reliable_iteration(series.delta, digit_floor);
    return series;
}

}  // namespace orbitcheck
