// Acceptance suite: exercises every top-level requirement end to end and
// prints one [PASS]/[FAIL] line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orbitcheck/orbitcheck.hpp"

using namespace orbitcheck;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(bool ok, const std::string& label, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", label.c_str(), detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Scenario {
    InitialCondition x0;
    PseudoOrbit orbit_a;
    PseudoOrbit orbit_b;
    DivergenceSeries series;
    std::vector<PhaseSegment> segments_a;
    std::vector<PhaseSegment> segments_b;
    IntermittencyReport report;
};

struct GoldenRow {
    const char* label;
    std::size_t n_max;               // at digit_floor = 0
    bool expect_disagreement;
    std::size_t first_disagreement;  // meaningful when expect_disagreement
};

// Frozen on the first verified run of this implementation; regressions in the
// strict evaluation order or the divergence pipeline move these.
constexpr GoldenRow kGolden[] = {
    {"0.3", 247, true, 1889},
    {"1/r", 60, true, 59},
    {"300/341", 64, true, 132},
    {"1904/6365", 75, true, 566},
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main() {
    const MapParams params = make_params("3.8283");
    const double x_star = fixed_points(params).second;
    const RunConfig defaults;  // eps, laminar_len, digit_floor as shipped

    std::vector<Scenario> scenarios;
    for (const std::string& text : paper_preset_x0()) {
        Scenario s;
        s.x0 = parse_initial_condition(text, params);
        s.orbit_a = iterate(ExtensionForm::expanded, params, s.x0, 5000);
        s.orbit_b = iterate(ExtensionForm::factored, params, s.x0, 5000);
        s.series = lower_bound_error(s.orbit_a, s.orbit_b, defaults.digit_floor);
        s.segments_a = classify_phases(s.orbit_a, x_star, defaults.eps, defaults.laminar_len);
        s.segments_b = classify_phases(s.orbit_b, x_star, defaults.eps, defaults.laminar_len);
        s.report = build_report(s.segments_a, s.segments_b, s.series);
        scenarios.push_back(std::move(s));
    }

    // 1. Lower-bound validity: max(true error a, true error b) >= delta at
    //    every index up to the oracle horizon, zero tolerance, all four x0.
    {
        const auto start = std::chrono::steady_clock::now();
        bool ok = true;
        std::string detail;
        std::vector<TrueErrorSeries> error_series;
        for (const Scenario& s : scenarios) {
            const ExactOrbit exact = exact_orbit(params, s.x0, 20);
            const TrueErrorSeries errors = true_errors(s.orbit_a, s.orbit_b, exact);
            const LbeValidation validation = validate_lbe(s.series, errors);
            if (!validation.all_pass()) {
                ok = false;
                detail += "x0=" + s.x0.label + " violates at n=" +
                          std::to_string(*validation.first_failure) + "; ";
            }
            error_series.push_back(errors);
        }
        const double elapsed = seconds_since(start);
        if (elapsed >= 60.0) ok = false;
        report(ok, "lower-bound validity (horizon 20, zero tolerance)",
               detail + "all indices n<=20 hold for 4 initial conditions in " +
                   std::to_string(elapsed) + " s (< 60 s)");

        // 7. Negative control: corrupt one delta where the oracle errors are
        //    tiny; the checker must flag exactly that index.
        {
            const std::size_t target = 10;
            DivergenceSeries corrupted = scenarios[0].series;
            const TrueErrorSeries& errors = error_series[0];
            bool small = errors.err_a[target] < 0.1 && errors.err_b[target] < 0.1;
            corrupted.delta[target] = 1.0;
            const LbeValidation validation = validate_lbe(corrupted, errors);
            bool exact_hit = validation.first_failure == target;
            for (std::size_t n = 0; n < validation.pass.size(); ++n)
                if (n != target && !validation.pass[n]) exact_hit = false;
            report(small && exact_hit, "negative control",
                   "delta[10] := 1.0 with oracle errors < 0.1 fails exactly at n=10");
        }
    }

    // 2. Fixed-point artifact at x0 = 1/r: the exact orbit is the fixed point
    //    28283/38283 at every index 1..20, yet both pseudo-orbits stray more
    //    than 0.1 from fl(x*) somewhere, and the verdict is artifact-suspect.
    {
        const auto start = std::chrono::steady_clock::now();
        const Scenario& s = scenarios[1];
        bool ok = true;
        std::string detail;

        const ExactOrbit exact = exact_orbit(params, s.x0, 20);
        for (std::size_t n = 1; n <= 20; ++n)
            if (exact.values[n].num != 28283 || exact.values[n].den != 38283) ok = false;
        detail += "exact orbit == 28283/38283 on 1..20";

        auto first_far = [&](const PseudoOrbit& orbit) -> long {
            for (std::size_t n = 0; n < orbit.values.size(); ++n)
                if (std::fabs(orbit.values[n] - x_star) > 0.1) return static_cast<long>(n);
            return -1;
        };
        const long far_a = first_far(s.orbit_a);
        const long far_b = first_far(s.orbit_b);
        if (far_a < 0 || far_b < 0) ok = false;
        detail += "; |x-x*|>0.1 first at n=" + std::to_string(far_a) + " (expanded), n=" +
                  std::to_string(far_b) + " (factored)";

        if (s.report.verdict != Verdict::artifact_suspect) ok = false;
        detail += "; verdict=";
        detail += verdict_name(s.report.verdict);

        const double elapsed = seconds_since(start);
        if (elapsed >= 10.0) ok = false;
        detail += "; " + std::to_string(elapsed) + " s (< 10 s)";
        report(ok, "fixed-point artifact (x0 = 1/r)", detail);
    }

    // 3. Divergence growth: delta starts at zero, reaches 0.1 within 5000
    //    iterations, and n_max at floor 0 is finite; n_max values are golden.
    {
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < scenarios.size(); ++i) {
            const Scenario& s = scenarios[i];
            if (s.series.delta[0] != 0.0) ok = false;
            bool reached = false;
            for (double d : s.series.delta)
                if (d >= 0.1) { reached = true; break; }
            if (!reached) ok = false;
            if (!s.series.n_max || *s.series.n_max != kGolden[i].n_max) ok = false;
            detail += std::string(kGolden[i].label) + ": n_max=" +
                      (s.series.n_max ? std::to_string(*s.series.n_max) : "none") + " (want " +
                      std::to_string(kGolden[i].n_max) + "); ";
        }
        report(ok, "divergence growth and n_max goldens", detail);
    }

    // 4. Extension disagreement: for 300/341 and 1904/6365 one form is
    //    laminar while the other is chaotic at some shared index.
    {
        bool ok = true;
        std::string detail;
        for (std::size_t i = 2; i < 4; ++i) {
            const Scenario& s = scenarios[i];
            if (s.report.disagreement_indices.empty()) {
                ok = false;
                detail += std::string(kGolden[i].label) + ": no disagreement; ";
                continue;
            }
            const std::size_t first = s.report.disagreement_indices.front();
            if (first != kGolden[i].first_disagreement) ok = false;
            detail += std::string(kGolden[i].label) + ": " +
                      std::to_string(s.report.disagreement_indices.size()) +
                      " disagreeing indices, first at " + std::to_string(first) + " (want " +
                      std::to_string(kGolden[i].first_disagreement) + "); ";
        }
        report(ok, "cross-form phase disagreement", detail);
    }

    // 5. Determinism: the full preset run twice produces byte-identical CSVs.
    {
        RunConfig config = paper_preset_config();
        config.output_dir = fs::temp_directory_path() / "orbitcheck_accept_a";
        fs::remove_all(config.output_dir);
        const RunOutcome first = run_scenario(config);
        config.output_dir = fs::temp_directory_path() / "orbitcheck_accept_b";
        fs::remove_all(config.output_dir);
        const RunOutcome second = run_scenario(config);

        bool ok = first.exit_code == 0 && second.exit_code == 0 &&
                  first.scenarios.size() == second.scenarios.size();
        std::size_t bytes = 0;
        if (ok)
            for (std::size_t i = 0; i < first.scenarios.size(); ++i) {
                const std::string one = slurp(first.scenarios[i].csv_path);
                const std::string two = slurp(second.scenarios[i].csv_path);
                bytes += one.size();
                if (one.empty() || one != two) ok = false;
            }
        report(ok, "byte-identical reruns",
               "4 CSVs, " + std::to_string(bytes) + " bytes compared equal");
    }

    // 6. Invariant suite.
    {
        bool ok = true;
        std::string detail;

        // segmentation totality and alternation on random orbits
        {
            std::mt19937_64 rng(20260810);
            std::uniform_real_distribution<double> dist(0.0, 1.0);
            for (int trial = 0; trial < 100 && ok; ++trial) {
                std::vector<double> values(500);
                for (double& v : values) v = dist(rng);
                const auto segments = classify_phases(values, x_star, defaults.eps, defaults.laminar_len);
                std::size_t next = 0;
                for (std::size_t i = 0; i < segments.size(); ++i) {
                    if (segments[i].start != next || segments[i].end < segments[i].start) ok = false;
                    if (i > 0 && segments[i].kind == segments[i - 1].kind) ok = false;
                    next = segments[i].end + 1;
                }
                if (next != values.size()) ok = false;
            }
            detail += "segmentation totality/alternation; ";
        }

        // delta symmetry
        {
            const DivergenceSeries forward = scenarios[0].series;
            const DivergenceSeries reverse =
                lower_bound_error(scenarios[0].orbit_b, scenarios[0].orbit_a);
            for (std::size_t n = 0; n < forward.delta.size(); ++n)
                if (forward.delta[n] != reverse.delta[n]) ok = false;
            detail += "delta symmetry; ";
        }

        // n_max monotone in digit_floor
        {
            std::optional<std::size_t> previous;
            bool first = true;
            for (double floor : {0.0, 0.5, 1.0, 2.0, 4.0}) {
                const auto n_max = max_reliable_iteration(scenarios[0].series.delta, floor);
                if (!first && previous.has_value() &&
                    (!n_max.has_value() || *n_max > *previous)) ok = false;
                previous = n_max;
                first = false;
            }
            detail += "n_max monotone in floor; ";
        }

        // significant digits antitone in delta
        {
            std::mt19937_64 rng(7);
            std::uniform_real_distribution<double> log_dist(-20.0, std::log10(0.5));
            for (int i = 0; i < 5000; ++i) {
                double d1 = std::pow(10.0, log_dist(rng));
                double d2 = std::pow(10.0, log_dist(rng));
                if (d1 > d2) std::swap(d1, d2);
                if (significant_digits(d1) < significant_digits(d2)) ok = false;
            }
            detail += "digit antitonicity; ";
        }

        // exact range preservation on 10^3 random (r, x0)
        {
            std::mt19937_64 rng(99);
            std::uniform_int_distribution<long> r_num(1, 40000);
            std::uniform_int_distribution<long> den(1, 1000000);
            for (int i = 0; i < 1000; ++i) {
                const BigRat r(r_num(rng), 10000);
                const long q = den(rng);
                std::uniform_int_distribution<long> num(0, q);
                const BigRat x(num(rng), q);
                const BigRat y = r * x * (1 - x);
                if (y < 0 || y > 1) ok = false;
            }
            detail += "exact range preservation (1000 samples)";
        }

        report(ok, "invariant suite", detail);
    }

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
