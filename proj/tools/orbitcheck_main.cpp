#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbitcheck/orbitcheck.hpp"

namespace {

using namespace orbitcheck;

void add_common_options(CLI::App& cmd, RunConfig& config) {
    cmd.add_option("--iterations", config.iterations, "Iteration count per pseudo-orbit")
        ->capture_default_str();
    cmd.add_option("--digit-floor", config.digit_floor,
                   "Reliability floor in surviving decimal digits")
        ->capture_default_str();
    cmd.add_option("--eps", config.eps, "Laminar band half-width around the fixed point")
        ->capture_default_str();
    cmd.add_option("--laminar-len", config.laminar_len, "Minimum run length of a laminar phase")
        ->capture_default_str();
    cmd.add_option("--oracle-horizon", config.oracle_horizon,
                   "Exact-arithmetic horizon for the validation oracle")
        ->capture_default_str();
    cmd.add_option("--oracle-digit-budget", config.oracle_digit_budget,
                   "Abort the oracle once a denominator exceeds this many decimal digits")
        ->capture_default_str();
    cmd.add_option("--out", config.output_dir, "Output directory")->capture_default_str();
    cmd.add_flag("--svg", config.emit_svg, "Also emit one SVG chart per scenario");
}

int execute_run(const RunConfig& config) {
    const RunOutcome outcome = run_scenario(config);
    if (outcome.exit_code == 3) {
        std::cerr << "range fault: " << outcome.fault_message << "\n";
        return 3;
    }
    for (const ScenarioResult& s : outcome.scenarios) {
        std::cout << "x0 = " << s.x0.label << ": n_max = ";
        if (s.series.n_max)
            std::cout << *s.series.n_max;
        else
            std::cout << "none";
        std::cout << ", verdict = " << verdict_name(s.report.verdict) << ", oracle check ";
        if (s.validation.all_pass())
            std::cout << "passed (horizon " << s.oracle_horizon_reached << ")";
        else
            std::cout << "FAILED at n = " << *s.validation.first_failure;
        std::cout << " -> " << s.csv_path.string() << "\n";
    }
    std::cout << "summary: " << outcome.summary_path.string() << "\n";
    if (outcome.exit_code == 2)
        std::cerr << "lower-bound validation failed; see per-scenario output above\n";
    return outcome.exit_code;
}

int execute_verify(const RunConfig& config) {
    validate_config(config);
    const MapParams params = make_params(config.r_text);
    bool all_ok = true;
    for (const std::string& text : config.x0_texts) {
        const InitialCondition x0 = parse_initial_condition(text, params);
        std::size_t horizon = config.oracle_horizon;
        ExactOrbit exact;
        try {
            exact = exact_orbit(params, x0, horizon, config.oracle_digit_budget);
        } catch (const BudgetError& e) {
            std::cerr << "x0 = " << x0.label << ": " << e.what() << "; validating up to n = "
                      << e.last_index << "\n";
            horizon = e.last_index;
            exact = exact_orbit(params, x0, horizon, config.oracle_digit_budget);
        }
        const PseudoOrbit orbit_a = iterate(ExtensionForm::expanded, params, x0, horizon);
        const PseudoOrbit orbit_b = iterate(ExtensionForm::factored, params, x0, horizon);
        const DivergenceSeries series = lower_bound_error(orbit_a, orbit_b, config.digit_floor);
        const TrueErrorSeries errors = true_errors(orbit_a, orbit_b, exact);
        const LbeValidation validation = validate_lbe(series, errors);

        std::cout << "x0 = " << x0.label << " (r = " << config.r_text << ", horizon " << horizon
                  << ")\n";
        std::printf("  %4s  %-24s  %-24s  %-24s  %s\n", "n", "delta", "err_a", "err_b", "status");
        for (std::size_t n = 0; n < errors.err_a.size(); ++n) {
            std::printf("  %4zu  %-24s  %-24s  %-24s  %s\n", n,
                        format_double17(series.delta[n]).c_str(),
                        format_double17(errors.err_a[n]).c_str(),
                        format_double17(errors.err_b[n]).c_str(),
                        validation.pass[n] ? "ok" : "VIOLATION");
        }
        if (!validation.all_pass()) all_ok = false;
    }
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "orbitcheck: how far can an iterated-map simulation be trusted?\n"
        "Runs the logistic map through two algebraically equivalent but\n"
        "floating-point-distinct evaluation forms, bounds the rounding error\n"
        "from below by half their gap, and reports whether the observed\n"
        "intermittency survives inside the numerically reliable window.\n"
        "Exit status: 0 ok, 1 config/parse/I-O error, 2 lower-bound validation\n"
        "failure, 3 range fault."};
    app.require_subcommand(1);

    RunConfig run_config;
    CLI::App* run = app.add_subcommand("run", "Full pipeline for chosen r and x0 values");
    run->add_option("--r", run_config.r_text, "Map parameter as a decimal literal")->required();
    run->add_option("--x0", run_config.x0_texts,
                    "Initial condition: decimal, fraction p/q, or the token 1/r (repeatable)")
        ->required();
    add_common_options(*run, run_config);

    RunConfig preset_config = paper_preset_config();
    CLI::App* preset = app.add_subcommand(
        "paper-preset", "The standard demonstration: r = 3.8283, x0 in {0.3, 1/r, 300/341, 1904/6365}");
    add_common_options(*preset, preset_config);

    RunConfig verify_config;
    CLI::App* verify = app.add_subcommand(
        "verify", "Oracle validation only: per-index lower-bound check up to the oracle horizon");
    verify->add_option("--r", verify_config.r_text, "Map parameter as a decimal literal")->required();
    verify->add_option("--x0", verify_config.x0_texts,
                       "Initial condition: decimal, fraction p/q, or the token 1/r (repeatable)")
        ->required();
    verify->add_option("--digit-floor", verify_config.digit_floor,
                       "Reliability floor in surviving decimal digits")
        ->capture_default_str();
    verify->add_option("--oracle-horizon", verify_config.oracle_horizon,
                       "Exact-arithmetic horizon for the validation oracle")
        ->capture_default_str();
    verify->add_option("--oracle-digit-budget", verify_config.oracle_digit_budget,
                       "Abort the oracle once a denominator exceeds this many decimal digits")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the usage error
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return execute_run(run_config);
        if (preset->parsed()) return execute_run(preset_config);
        if (verify->parsed()) return execute_verify(verify_config);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
