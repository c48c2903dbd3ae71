#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/lbe.hpp"
#include "orbitcheck/map.hpp"

namespace orbitcheck {

enum class PhaseKind { laminar, chaotic };

inline const char* phase_name(PhaseKind kind) {
    return kind == PhaseKind::laminar ? "laminar" : "chaotic";
}

/// One maximal run of a single phase; [start, end] inclusive. A segmentation
/// is contiguous, covers the whole orbit, and alternates kinds.
struct PhaseSegment {
    PhaseKind kind;
    std::size_t start;
    std::size_t end;
};

/// Laminarity rule: an index is laminar iff it belongs to a run of at least
/// `min_run` consecutive iterates with |x[n] - x_star| < eps. The band is
/// measured against the period-1 fixed point only; both knobs are exposed all
/// the way up to the CLI.
inline std::vector<PhaseSegment> classify_phases(std::span<const double> values, double x_star,
                                                 double eps, std::size_t min_run) {
    if (!(eps > 0)) throw DomainError("classify_phases: eps must be positive");
    if (min_run < 1) throw DomainError("classify_phases: min_run must be >= 1");
    if (values.empty()) throw DomainError("classify_phases: empty orbit");

    const std::size_t n = values.size();
    std::vector<bool> laminar(n, false);
    std::size_t i = 0;
    while (i < n) {
        if (std::fabs(values[i] - x_star) < eps) {
            std::size_t j = i;
            while (j < n && std::fabs(values[j] - x_star) < eps) ++j;
            if (j - i >= min_run)
                for (std::size_t k = i; k < j; ++k) laminar[k] = true;
            i = j;
        } else {
            ++i;
        }
    }

    std::vector<PhaseSegment> segments;
    std::size_t begin = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k == n || laminar[k] != laminar[begin]) {
            segments.push_back({laminar[begin] ? PhaseKind::laminar : PhaseKind::chaotic, begin, k - 1});
            begin = k;
        }
    }
    return segments;
}

inline std::vector<PhaseSegment> classify_phases(const PseudoOrbit& orbit, double x_star, double eps,
                                                 std::size_t min_run) {
    return classify_phases(std::span<const double>(orbit.values), x_star, eps, min_run);
}

/// Expands a segmentation to one kind per index; validates coverage of
/// [0, expected_size).
inline std::vector<PhaseKind> phase_by_index(const std::vector<PhaseSegment>& segments,
                                             std::size_t expected_size) {
    std::vector<PhaseKind> kinds;
    kinds.reserve(expected_size);
    std::size_t next = 0;
    for (const PhaseSegment& seg : segments) {
        if (seg.start != next || seg.end < seg.start)
            throw MismatchError("segmentation is not contiguous");
        for (std::size_t i = seg.start; i <= seg.end; ++i) kinds.push_back(seg.kind);
        next = seg.end + 1;
    }
    if (next != expected_size) throw MismatchError("segmentation does not cover the orbit");
    return kinds;
}

enum class Verdict {
    trustworthy_intermittency,  ///< both phases seen, inside the reliable window, forms agree
    artifact_suspect,           ///< the two forms disagree on the phase somewhere
    no_intermittency,           ///< no laminar/chaotic alternation within the reliable window
};

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::trustworthy_intermittency: return "trustworthy-intermittency";
        case Verdict::artifact_suspect: return "artifact-suspect";
        default: return "no-intermittency";
    }
}

struct IntermittencyReport {
    std::vector<PhaseSegment> segments_a;
    std::vector<PhaseSegment> segments_b;
    std::optional<std::size_t> n_max;
    Verdict verdict = Verdict::no_intermittency;
    std::vector<std::size_t> disagreement_indices;  ///< one form laminar, the other chaotic
};

/// Combines the two segmentations with the divergence series into a verdict:
///  - any pointwise phase disagreement anywhere in the run -> artifact_suspect
///    (an intermittency call that depends on the evaluation order is numerics,
///    not dynamics);
///  - otherwise trustworthy only if both orbits show at least one laminar and
///    one chaotic segment ending before n_max (whole run when n_max is none);
///  - otherwise no_intermittency.
inline IntermittencyReport build_report(const std::vector<PhaseSegment>& segments_a,
                                        const std::vector<PhaseSegment>& segments_b,
                                        const DivergenceSeries& series) {
    const std::size_t size = series.delta.size();
    const std::vector<PhaseKind> kinds_a = phase_by_index(segments_a, size);
    const std::vector<PhaseKind> kinds_b = phase_by_index(segments_b, size);

    IntermittencyReport report;
    report.segments_a = segments_a;
    report.segments_b = segments_b;
    report.n_max = series.n_max;

    for (std::size_t i = 0; i < size; ++i)
        if (kinds_a[i] != kinds_b[i]) report.disagreement_indices.push_back(i);

    const std::size_t reliable_end = series.n_max.value_or(size);  // segments must end before this
    const auto alternates_before = [reliable_end](const std::vector<PhaseSegment>& segs) {
        bool laminar = false, chaotic = false;
        for (const PhaseSegment& seg : segs) {
            if (seg.end >= reliable_end) continue;
            (seg.kind == PhaseKind::laminar ? laminar : chaotic) = true;
        }
        return laminar && chaotic;
    };

    if (!report.disagreement_indices.empty())
        report.verdict = Verdict::artifact_suspect;
    else if (alternates_before(segments_a) && alternates_before(segments_b))
        report.verdict = Verdict::trustworthy_intermittency;
    else
        report.verdict = Verdict::no_intermittency;
    return report;
}

}  // namespace orbitcheck
