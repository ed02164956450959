// Command-line front end: ties the shooting solver, the uniform-beam
// reference, the finite-difference oracle, and the serialization helpers
// into the subcommands `optimal`, `cylinder`, `sweep`, `verify`, `eigen`.
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure (the failure is
// also emitted as a one-object JSON record on stdout so callers can parse it).

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "javelin/cylinder.hpp"
#include "javelin/error.hpp"
#include "javelin/io.hpp"
#include "javelin/linearization.hpp"
#include "javelin/log.hpp"
#include "javelin/model.hpp"
#include "javelin/oracle.hpp"
#include "javelin/shooting.hpp"

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run_optimal(const javelin::ShootingConfig& config, const std::string& out_csv,
                const std::string& out_summary) {
    const javelin::SolveResult result = javelin::solve(config);
    const std::string summary = javelin::summary_json(result);
    if (!out_csv.empty()) {
        javelin::save_profile(result.profile, out_csv);
        javelin::log::info("profile written to " + out_csv);
    }
    if (!out_summary.empty()) {
        javelin::write_text(summary, out_summary);
        javelin::log::info("summary written to " + out_summary);
    }
    std::cout << summary;
    javelin::log::info("theta_star = " + fmt(result.theta_star) + " (equivalently " +
                       fmt(result.theta_star - 2.0 * std::numbers::pi) + ")");
    return 0;
}

int run_cylinder(std::size_t samples, const std::string& out_csv) {
    const javelin::CylinderMode mode = javelin::cylinder_mode(samples);
    if (!out_csv.empty()) {
        javelin::write_mode_csv(mode, out_csv);
        javelin::log::info("mode written to " + out_csv);
    }
    std::cout << "{\n"
              << "  \"k\": " << fmt(mode.k) << ",\n"
              << "  \"lambda\": " << fmt(mode.lambda) << ",\n"
              << "  \"boundary_residual\": " << fmt(mode.boundary_residual()) << "\n"
              << "}\n";
    return 0;
}

int run_sweep(std::size_t samples, const std::string& out_csv,
              const javelin::ShootingConfig& config) {
    std::vector<double> thetas(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        thetas[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(samples);
    }
    const std::vector<javelin::ShotOutcome> outcomes = javelin::sweep(thetas, config);
    javelin::write_sweep_csv(outcomes, out_csv);
    std::size_t diverged = 0, matched_g1 = 0, matched_g2 = 0;
    for (const javelin::ShotOutcome& o : outcomes) {
        diverged += o.diverged ? 1 : 0;
        matched_g1 += o.g1_times.empty() ? 0 : 1;
        matched_g2 += o.g2_times.empty() ? 0 : 1;
    }
    std::cout << "{\n"
              << "  \"samples\": " << samples << ",\n"
              << "  \"diverged\": " << diverged << ",\n"
              << "  \"with_g1_crossing\": " << matched_g1 << ",\n"
              << "  \"with_g2_crossing\": " << matched_g2 << ",\n"
              << "  \"out\": \"" << out_csv << "\"\n"
              << "}\n";
    return 0;
}

int run_verify(const std::string& profile_csv, std::size_t grid, double tip_cut,
               double lambda_override) {
    std::optional<double> lambda_opt;
    if (lambda_override > 0.0) lambda_opt = lambda_override;
    const javelin::BeamProfile profile = javelin::load_profile(profile_csv, lambda_opt);
    const javelin::DiscreteBeam beam = javelin::discretize(profile, grid, tip_cut);
    const javelin::SpectralResult spec = javelin::spectrum(beam);
    if (spec.rigid_count != 2) {
        throw javelin::numerical_error(
            "rigid-mode-count",
            "expected exactly 2 rigid-body modes, found " + std::to_string(spec.rigid_count),
            javelin::make_error_record("rigid-mode-count", std::to_string(spec.rigid_count)));
    }
    double lambda_oracle = -1.0;
    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
        if (spec.eigenvalues[k] >= spec.rigid_threshold && spec.center_participation[k] > 0.1) {
            lambda_oracle = std::sqrt(spec.eigenvalues[k]);
            break;
        }
    }
    if (lambda_oracle < 0.0) {
        throw javelin::numerical_error(
            "no-global-mode", "all computed modes are localized tip artifacts",
            javelin::make_error_record("no-global-mode", "raise the mode count"));
    }
    std::cout << javelin::verify_json(lambda_oracle, profile.lambda, spec.rigid_count);
    return 0;
}

int run_eigen() {
    const std::array<double, 6> qs = javelin::eigenvalues();
    std::string json = "{\n  \"eigenvalues\": [";
    for (std::size_t i = 0; i < qs.size(); ++i) {
        json += fmt(qs[i]);
        if (i + 1 < qs.size()) json += ", ";
    }
    json += "],\n  \"directions\": [\n";
    for (std::size_t i = 0; i < qs.size(); ++i) {
        std::array<double, 4> dir = javelin::null_direction(qs[i]);
        // The reference normalization keeps the q = 1 direction at integer
        // components (4, 5, 4, -2) rather than delta_Phi = 1.
        if (qs[i] == 1.0) {
            for (double& c : dir) c *= 4.0;
        }
        json += "    {\"q\": " + fmt(qs[i]) + ", \"direction\": [" + fmt(dir[0]) + ", " +
                fmt(dir[1]) + ", " + fmt(dir[2]) + ", " + fmt(dir[3]) + "]}";
        json += (i + 1 < qs.size()) ? ",\n" : "\n";
    }
    json += "  ]\n}\n";
    std::cout << json;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal tapering of a free vibrating beam: stable-manifold solver and checks"};
    app.require_subcommand(1);

    javelin::ShootingConfig config;
    std::string out_csv, out_summary;

    CLI::App* optimal = app.add_subcommand(
        "optimal", "Solve for the frequency-maximizing taper and print a summary JSON");
    optimal->add_option("--epsilon", config.epsilon, "Seed offset from the fixed point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    optimal->add_option("--theta-guess", config.theta_guess, "Initial direction angle (radians)")
        ->capture_default_str();
    optimal->add_option("--t-span", config.t_span, "Backward integration horizon in t = -ln s")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    optimal->add_option("--rtol", config.tolerances.rel, "Integrator relative tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    optimal->add_option("--atol", config.tolerances.abs, "Integrator absolute tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    optimal->add_option("--out", out_csv, "Write the solved profile CSV here");
    optimal->add_option("--summary", out_summary, "Write the summary JSON here as well");

    std::size_t cylinder_samples = 2001;
    std::string cylinder_out;
    CLI::App* cylinder = app.add_subcommand(
        "cylinder", "Fundamental frequency and mode of the uniform beam");
    cylinder->add_option("--samples", cylinder_samples, "Mode samples over [-1, 1]")
        ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}))
        ->capture_default_str();
    cylinder->add_option("--out", cylinder_out, "Write the mode CSV (s,y) here");

    std::size_t sweep_samples = 720;
    std::string sweep_out = "sweep.csv";
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Classify every shot direction over [0, 2 pi) into a CSV");
    sweep_cmd->add_option("--samples", sweep_samples, "Number of directions")
        ->check(CLI::Range(std::size_t{4}, std::size_t{100000}))
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "Output CSV path")->capture_default_str();
    sweep_cmd->add_option("--epsilon", config.epsilon, "Seed offset from the fixed point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--t-span", config.t_span, "Backward integration horizon")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::string verify_profile;
    std::size_t verify_grid = 4000;
    double verify_tip_cut = 0.02;
    double verify_lambda = -1.0;
    CLI::App* verify = app.add_subcommand(
        "verify", "Cross-check a profile CSV against the finite-difference eigenvalue oracle");
    verify->add_option("--profile", verify_profile, "Profile CSV to check")->required();
    verify->add_option("--grid", verify_grid, "Oracle grid points over the full span")
        ->check(CLI::Range(std::size_t{50}, std::size_t{20000}))
        ->capture_default_str();
    verify->add_option("--tip-cut", verify_tip_cut,
                       "Floor the tapering below this arclength (0 disables)")
        ->check(CLI::Range(0.0, 0.5))
        ->capture_default_str();
    verify->add_option("--lambda", verify_lambda,
                       "Override the profile frequency instead of inferring it from the tip");

    app.add_subcommand("eigen",
                       "Eigenvalues and directions of the linearization at the fixed point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (optimal->parsed()) return run_optimal(config, out_csv, out_summary);
        if (cylinder->parsed()) return run_cylinder(cylinder_samples, cylinder_out);
        if (sweep_cmd->parsed()) return run_sweep(sweep_samples, sweep_out, config);
        if (verify->parsed()) return run_verify(verify_profile, verify_grid, verify_tip_cut,
                                                verify_lambda);
        return run_eigen();
    } catch (const javelin::numerical_error& e) {
        std::cout << e.record_json() << "\n";
        javelin::log::error(std::string("numerical failure: ") + e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        javelin::log::error(std::string("usage error: ") + e.what());
        return 2;
    } catch (const std::exception& e) {
        std::cout << javelin::make_error_record("internal", e.what()) << "\n";
        javelin::log::error(std::string("internal failure: ") + e.what());
        return 3;
    }
}
