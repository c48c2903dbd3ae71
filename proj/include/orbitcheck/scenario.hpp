#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "orbitcheck/csv.hpp"
#include "orbitcheck/errors.hpp"
#include "orbitcheck/intermittency.hpp"
#include "orbitcheck/lbe.hpp"
#include "orbitcheck/map.hpp"
#include "orbitcheck/oracle.hpp"
#include "orbitcheck/svg.hpp"

namespace orbitcheck {

struct RunConfig {
    std::string r_text = "3.8283";
    std::vector<std::string> x0_texts;
    std::size_t iterations = 5000;
    double digit_floor = 0.0;
    double eps = 0.05;             ///< laminar band half-width around x*
    std::size_t laminar_len = 8;   ///< minimum run length for a laminar phase
    std::size_t oracle_horizon = 20;
    std::size_t oracle_digit_budget = kDefaultOracleDigitBudget;
    std::filesystem::path output_dir = ".";
    bool emit_svg = false;
};

/// The four initial conditions of the standard demonstration run.
inline std::vector<std::string> paper_preset_x0() {
    return {"0.3", "1/r", "300/341", "1904/6365"};
}

inline RunConfig paper_preset_config() {
    RunConfig config;
    config.x0_texts = paper_preset_x0();
    return config;
}

/// Validates every field before any computation; throws ConfigError naming the
/// offending field.
inline void validate_config(const RunConfig& config) {
    try {
        make_params(config.r_text);
    } catch (const Error& e) {
        throw ConfigError("r", e.what());
    }
    if (config.x0_texts.empty()) throw ConfigError("x0", "at least one initial condition is required");
    const MapParams params = make_params(config.r_text);
    for (const std::string& text : config.x0_texts) {
        try {
            parse_initial_condition(text, params);
        } catch (const Error& e) {
            throw ConfigError("x0", e.what());
        }
    }
    if (!(config.digit_floor >= 0)) throw ConfigError("digit-floor", "must be >= 0");
    if (!(config.eps > 0)) throw ConfigError("eps", "must be > 0");
    if (config.laminar_len < 1) throw ConfigError("laminar-len", "must be >= 1");
    if (config.output_dir.empty()) throw ConfigError("out", "output directory must not be empty");
}

struct ScenarioResult {
    InitialCondition x0;
    PseudoOrbit orbit_a;   ///< expanded form
    PseudoOrbit orbit_b;   ///< factored form
    DivergenceSeries series;
    std::vector<PhaseSegment> segments_a;
    std::vector<PhaseSegment> segments_b;
    IntermittencyReport report;
    TrueErrorSeries errors;
    LbeValidation validation;
    std::size_t oracle_horizon_reached = 0;
    std::filesystem::path csv_path;
    std::filesystem::path svg_path;  ///< empty unless SVG emission was requested
};

struct RunOutcome {
    int exit_code = 0;  ///< 0 ok, 2 lower-bound validation failed, 3 range fault
    std::vector<ScenarioResult> scenarios;
    std::filesystem::path summary_path;
    std::string fault_message;  ///< set when exit_code == 3
};

inline std::string sanitize_label(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    for (char c : label)
        out.push_back((std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_');
    return out;
}

/// Runs one initial condition end to end: both forms, divergence series,
/// segmentation, verdict, oracle validation. File emission is the caller's
/// business so the pipeline stays testable in memory.
inline ScenarioResult analyze_scenario(const MapParams& params, const InitialCondition& x0,
                                       const RunConfig& config) {
    ScenarioResult result;
    result.x0 = x0;
    result.orbit_a = iterate(ExtensionForm::expanded, params, x0, config.iterations);
    result.orbit_b = iterate(ExtensionForm::factored, params, x0, config.iterations);
    result.series = lower_bound_error(result.orbit_a, result.orbit_b, config.digit_floor);

    const double x_star = fixed_points(params).second;
    result.segments_a = classify_phases(result.orbit_a, x_star, config.eps, config.laminar_len);
    result.segments_b = classify_phases(result.orbit_b, x_star, config.eps, config.laminar_len);
    result.report = build_report(result.segments_a, result.segments_b, result.series);

    std::size_t horizon = std::min(config.oracle_horizon, config.iterations);
    ExactOrbit exact;
    try {
        exact = exact_orbit(params, x0, horizon, config.oracle_digit_budget);
    } catch (const BudgetError& e) {
        horizon = e.last_index;
        exact = exact_orbit(params, x0, horizon, config.oracle_digit_budget);
    }
    result.oracle_horizon_reached = horizon;
    result.errors = true_errors(result.orbit_a, result.orbit_b, exact);
    result.validation = validate_lbe(result.series, result.errors);
    return result;
}

inline void write_summary(const std::filesystem::path& path,
                          const std::vector<ScenarioResult>& scenarios) {
    std::ostringstream out;
    out << "x0              n_max     verdict                     first_disagreement\n";
    for (const ScenarioResult& s : scenarios) {
        std::ostringstream n_max;
        if (s.series.n_max)
            n_max << *s.series.n_max;
        else
            n_max << "none";
        std::ostringstream first;
        if (!s.report.disagreement_indices.empty())
            first << s.report.disagreement_indices.front();
        else
            first << "-";
        out << s.x0.label;
        for (std::size_t i = s.x0.label.size(); i < 16; ++i) out << ' ';
        out << n_max.str();
        for (std::size_t i = n_max.str().size(); i < 10; ++i) out << ' ';
        out << verdict_name(s.report.verdict);
        for (std::size_t i = std::string(verdict_name(s.report.verdict)).size(); i < 28; ++i) out << ' ';
        out << first.str() << '\n';
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open for writing: " + path.string());
    file << out.str();
    file.flush();
    if (!file) throw IoError("write failed: " + path.string());
}

/// Full pipeline for every configured initial condition. Returns exit status
/// 0 on success, 2 if any lower-bound validation index failed (internal
/// inconsistency), 3 on a range fault. Config and I/O problems throw.
inline RunOutcome run_scenario(const RunConfig& config) {
    validate_config(config);
    const MapParams params = make_params(config.r_text);

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + config.output_dir.string() + " (" +
                          ec.message() + ")");

    RunOutcome outcome;
    for (const std::string& text : config.x0_texts) {
        const InitialCondition x0 = parse_initial_condition(text, params);
        ScenarioResult result;
        try {
            result = analyze_scenario(params, x0, config);
        } catch (const RangeFault& fault) {
            outcome.exit_code = 3;
            outcome.fault_message = "x0 = " + x0.label + ": " + fault.what();
            return outcome;
        }

        const std::string stem = sanitize_label(x0.label);
        result.csv_path = config.output_dir / (stem + ".csv");
        emit_csv(result.csv_path, result.orbit_a, result.orbit_b, result.series, result.segments_a,
                 result.segments_b);
        if (config.emit_svg) {
            result.svg_path = config.output_dir / (stem + ".svg");
            emit_svg(result.svg_path, x0.label, result.orbit_a, result.orbit_b, result.series,
                     result.segments_a, result.segments_b, fixed_points(params).second);
        }
        outcome.scenarios.push_back(std::move(result));
    }

    outcome.summary_path = config.output_dir / "summary.txt";
    write_summary(outcome.summary_path, outcome.scenarios);

    for (const ScenarioResult& s : outcome.scenarios)
        if (!s.validation.all_pass()) outcome.exit_code = 2;
    return outcome;
}

}  // namespace orbitcheck
