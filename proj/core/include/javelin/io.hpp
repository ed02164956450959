#pragma once

#include <optional>
#include <string>
#include <vector>

#include "javelin/cylinder.hpp"
#include "javelin/model.hpp"
#include "javelin/shooting.hpp"

namespace javelin {

/// Writes the profile as CSV with header `s,a,b,phi,y,s2y` (s2y = s^2 * y,
/// the quantity that stays finite at the tip), one row per sample, full
/// double precision (round-trips bitwise).
void save_profile(const BeamProfile& profile, const std::string& path);

/// Parses a profile CSV.  The header must match `s,a,b,phi,y,s2y` exactly;
/// a mismatch reports the first offending column by name.  Validates strictly
/// increasing s and a >= 0.  lambda is not a CSV column: unless an override
/// is given it is inferred from the tip asymptote a ~ (lambda^2/72) s^4 at
/// the innermost sample, which is exact for profiles produced by solve().
BeamProfile load_profile(const std::string& path,
                         std::optional<double> lambda_override = std::nullopt);

/// Solve summary as a JSON object:
///   {lambda, theta_star, theta_star_negative, delta_t, volume,
///    residuals: {as_residual_max, optimality_residual, euler_residual,
///    volume_error, b_end}}
/// theta_star is reported in [0, 2 pi); theta_star_negative is the same
/// direction expressed as a negative angle.
std::string summary_json(const SolveResult& result);

/// Verification result as a JSON object:
///   {lambda_oracle, lambda_input, relative_gap, rigid_modes}
std::string verify_json(double lambda_oracle, double lambda_input, int rigid_modes);

/// Writes the cylinder mode samples as CSV with header `s,y`.
void write_mode_csv(const CylinderMode& mode, const std::string& path);

/// Writes sweep outcomes as CSV with header
/// `theta,dt_g1_first,dt_g2_first,diverged`; missing crossings are written
/// as nan, diverged as 0/1.
void write_sweep_csv(const std::vector<ShotOutcome>& outcomes, const std::string& path);

/// Writes a string to a file, creating parent directories if needed.
void write_text(const std::string& text, const std::string& path);

}  // namespace javelin
