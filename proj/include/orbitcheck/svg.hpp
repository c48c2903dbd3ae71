#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "orbitcheck/errors.hpp"
#include "orbitcheck/intermittency.hpp"
#include "orbitcheck/lbe.hpp"
#include "orbitcheck/map.hpp"

namespace orbitcheck {

namespace svg_detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Panel {
    double left, top, width, height;
    double x_min, x_max, y_min, y_max;

    double px(double x) const { return left + (x - x_min) / (x_max - x_min) * width; }
    double py(double y) const { return top + height - (y - y_min) / (y_max - y_min) * height; }
};

inline void polyline(std::ostream& out, const Panel& p, const std::vector<double>& ys,
                     std::string_view stroke) {
    out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"0.8\" points=\"";
    for (std::size_t i = 0; i < ys.size(); ++i)
        out << num(p.px(static_cast<double>(i))) << ',' << num(p.py(ys[i])) << ' ';
    out << "\"/>\n";
}

inline void axes(std::ostream& out, const Panel& p, std::string_view title,
                 std::string_view y_label, int x_ticks, int y_ticks) {
    out << "<rect x=\"" << num(p.left) << "\" y=\"" << num(p.top) << "\" width=\"" << num(p.width)
        << "\" height=\"" << num(p.height) << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << num(p.left) << "\" y=\"" << num(p.top - 8)
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << title << "</text>\n";
    out << "<text x=\"" << num(p.left - 44) << "\" y=\"" << num(p.top + p.height / 2)
        << "\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-90 "
        << num(p.left - 44) << ' ' << num(p.top + p.height / 2) << ")\">" << y_label << "</text>\n";
    for (int t = 0; t <= x_ticks; ++t) {
        const double x = p.x_min + (p.x_max - p.x_min) * t / x_ticks;
        const double cx = p.px(x);
        out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(p.top + p.height) << "\" x2=\"" << num(cx)
            << "\" y2=\"" << num(p.top + p.height + 4) << "\" stroke=\"#333\"/>\n";
        char label[32];
        std::snprintf(label, sizeof label, "%.0f", x);
        out << "<text x=\"" << num(cx) << "\" y=\"" << num(p.top + p.height + 16)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" << label
            << "</text>\n";
    }
    for (int t = 0; t <= y_ticks; ++t) {
        const double y = p.y_min + (p.y_max - p.y_min) * t / y_ticks;
        const double cy = p.py(y);
        out << "<line x1=\"" << num(p.left - 4) << "\" y1=\"" << num(cy) << "\" x2=\"" << num(p.left)
            << "\" y2=\"" << num(cy) << "\" stroke=\"#333\"/>\n";
        char label[32];
        std::snprintf(label, sizeof label, "%.2g", y);
        out << "<text x=\"" << num(p.left - 6) << "\" y=\"" << num(cy + 3)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << label
            << "</text>\n";
    }
}

inline void shade_laminar(std::ostream& out, const Panel& p, const std::vector<PhaseSegment>& segs,
                          std::string_view fill) {
    for (const PhaseSegment& seg : segs) {
        if (seg.kind != PhaseKind::laminar) continue;
        const double x0 = p.px(static_cast<double>(seg.start));
        const double x1 = p.px(static_cast<double>(seg.end));
        out << "<rect x=\"" << num(x0) << "\" y=\"" << num(p.top) << "\" width=\""
            << num(std::max(x1 - x0, 1.0)) << "\" height=\"" << num(p.height) << "\" fill=\"" << fill
            << "\" fill-opacity=\"0.25\"/>\n";
    }
}

}  // namespace svg_detail

/// Self-contained two-panel chart for one scenario: the orbit overlay (both
/// pseudo-orbits, fixed-point line, laminar spans shaded per orbit) above the
/// divergence chart (log10 of delta with the n_max marker). Zero deltas are
/// clamped to a sentinel floor; an all-zero series is annotated instead of
/// pretending to show structure. No external references.
inline void emit_svg(std::ostream& out, std::string_view title, const PseudoOrbit& orbit_a,
                     const PseudoOrbit& orbit_b, const DivergenceSeries& series,
                     const std::vector<PhaseSegment>& segments_a,
                     const std::vector<PhaseSegment>& segments_b, double x_star) {
    using namespace svg_detail;
    const std::size_t size = series.delta.size();
    if (size == 0) throw DomainError("emit_svg: empty series");
    if (orbit_a.values.size() != size || orbit_b.values.size() != size)
        throw MismatchError("emit_svg: orbit and series lengths differ");

    const double width = 960, panel_h = 300;
    const double x_max = size > 1 ? static_cast<double>(size - 1) : 1.0;
    const Panel orbit_panel{64, 32, width - 90, panel_h, 0, x_max, 0.0, 1.0};
    const Panel error_panel{64, 32 + panel_h + 64, width - 90, panel_h, 0, x_max, 0, 1};

    constexpr double kLogFloor = -18.0;  // below any nonzero gap of unit-interval binary64 data
    std::vector<double> log_delta;
    log_delta.reserve(size);
    bool any_positive = false;
    double log_max = kLogFloor;
    for (double d : series.delta) {
        if (d > 0) {
            const double l = std::max(std::log10(d), kLogFloor);
            log_delta.push_back(l);
            log_max = std::max(log_max, l);
            any_positive = true;
        } else {
            log_delta.push_back(kLogFloor);
        }
    }

    Panel ep = error_panel;
    ep.y_min = kLogFloor;
    ep.y_max = any_positive ? std::ceil(std::max(log_max, -17.0)) : 0.0;
    if (ep.y_max <= ep.y_min) ep.y_max = ep.y_min + 1;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << (2 * panel_h + 140) << "\" viewBox=\"0 0 " << width << ' ' << (2 * panel_h + 140)
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // panel 1: orbit overlay
    shade_laminar(out, orbit_panel, segments_a, "#4477aa");
    shade_laminar(out, orbit_panel, segments_b, "#cc6677");
    axes(out, orbit_panel, std::string("orbit overlay - ") + std::string(title), "x_n", 10, 5);
    const double star_y = orbit_panel.py(x_star);
    out << "<line x1=\"" << num(orbit_panel.left) << "\" y1=\"" << num(star_y) << "\" x2=\""
        << num(orbit_panel.left + orbit_panel.width) << "\" y2=\"" << num(star_y)
        << "\" stroke=\"#228833\" stroke-dasharray=\"6 3\"/>\n";
    polyline(out, orbit_panel, orbit_a.values, "#4477aa");
    polyline(out, orbit_panel, orbit_b.values, "#cc6677");
    out << "<text x=\"" << num(orbit_panel.left + orbit_panel.width - 4) << "\" y=\""
        << num(star_y - 4)
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\" fill=\"#228833\">x*"
        << "</text>\n";

    // panel 2: divergence
    axes(out, ep, "lower bound error", "log10(delta)", 10, 6);
    polyline(out, ep, log_delta, "#222222");
    if (!any_positive) {
        out << "<text x=\"" << num(ep.left + ep.width / 2) << "\" y=\"" << num(ep.top + ep.height / 2)
            << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" fill=\"#666\">"
            << "no divergence</text>\n";
    }
    if (series.n_max) {
        const double mark_x = ep.px(static_cast<double>(*series.n_max));
        out << "<line x1=\"" << num(mark_x) << "\" y1=\"" << num(ep.top) << "\" x2=\"" << num(mark_x)
            << "\" y2=\"" << num(ep.top + ep.height)
            << "\" stroke=\"#aa3377\" stroke-dasharray=\"4 3\"/>\n";
        out << "<text x=\"" << num(mark_x + 4) << "\" y=\"" << num(ep.top + 14)
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#aa3377\">n* = " << *series.n_max
            << "</text>\n";
    }
    out << "</svg>\n";
}

inline void emit_svg(const std::filesystem::path& path, std::string_view title,
                     const PseudoOrbit& orbit_a, const PseudoOrbit& orbit_b,
                     const DivergenceSeries& series, const std::vector<PhaseSegment>& segments_a,
                     const std::vector<PhaseSegment>& segments_b, double x_star) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        emit_svg(out, title, orbit_a, orbit_b, series, segments_a, segments_b, x_star);
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
