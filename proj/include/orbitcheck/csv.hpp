#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/intermittency.hpp"
#include "orbitcheck/lbe.hpp"
#include "orbitcheck/map.hpp"

namespace orbitcheck {

/// 17 significant digits round-trips any binary64 exactly.
inline std::string format_double17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// One row per iteration:
///   n,x_a,x_b,delta,digits,phase_a,phase_b,within_n_max
/// Floats carry 17 significant digits; infinite digit counts print as "inf";
/// within_n_max is "false" from n_max on (always "true" when n_max is none).
inline void emit_csv(std::ostream& out, const PseudoOrbit& orbit_a, const PseudoOrbit& orbit_b,
                     const DivergenceSeries& series, const std::vector<PhaseSegment>& segments_a,
                     const std::vector<PhaseSegment>& segments_b) {
    const std::size_t size = series.delta.size();
    if (orbit_a.values.size() != size || orbit_b.values.size() != size)
        throw MismatchError("emit_csv: orbit and series lengths differ");
    const std::vector<PhaseKind> kinds_a = phase_by_index(segments_a, size);
    const std::vector<PhaseKind> kinds_b = phase_by_index(segments_b, size);

    out << "n,x_a,x_b,delta,digits,phase_a,phase_b,within_n_max\n";
    for (std::size_t n = 0; n < size; ++n) {
        const bool within = !series.n_max || n < *series.n_max;
        out << n << ',' << format_double17(orbit_a.values[n]) << ','
            << format_double17(orbit_b.values[n]) << ',' << format_double17(series.delta[n]) << ','
            << format_double17(series.digits[n]) << ',' << phase_name(kinds_a[n]) << ','
            << phase_name(kinds_b[n]) << ',' << (within ? "true" : "false") << '\n';
    }
}

/// File variant: writes to "<path>.tmp" and renames, so an interrupted run
/// leaves no partial CSV behind.
inline void emit_csv(const std::filesystem::path& path, const PseudoOrbit& orbit_a,
                     const PseudoOrbit& orbit_b, const DivergenceSeries& series,
                     const std::vector<PhaseSegment>& segments_a,
                     const std::vector<PhaseSegment>& segments_b) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        emit_csv(out, orbit_a, orbit_b, series, segments_a, segments_b);
        out.flush();
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot move into place: " + path.string() + " (" + ec.message() + ")");
    }
}

}  // namespace orbitcheck
