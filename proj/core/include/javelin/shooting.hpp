#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "javelin/dynamics.hpp"
#include "javelin/integrator.hpp"
#include "javelin/model.hpp"

namespace javelin {

/// Parameters of the stable-manifold shooting solve.
struct ShootingConfig {
    double epsilon = 1e-3;        ///< seed offset scale along the stable plane
    double theta_guess = -0.5235987755982988;  ///< -pi/6
    double t_span = 10.0;         ///< backward integration horizon
    Tolerances tolerances{1e-10, 1e-12};
    double max_step = 0.2;        ///< step cap so events are sampled densely
    double event_time_tol = 1e-10;
    double theta_tol = 1e-13;     ///< root tolerance on theta
    /// The seed sits at s = e^{delta_t}; refinement shrinks epsilon (re-rooting
    /// theta each time) until the seed reaches s <= refine_target, so the
    /// integrated trajectory covers all of [refine_target, 1] and the
    /// asymptotic tail is confined to smaller s.
    double refine_target = 0.03;
    int max_refine_stages = 40;
    std::size_t profile_samples = 4000;  ///< trajectory part of the profile
    std::size_t tail_samples = 800;      ///< asymptotic tail part
    double tail_log_depth = 9.0;         ///< tail reaches down to s = e^{-tail_log_depth}
    double y0 = 1.0;                     ///< mode amplitude scale (lambda-neutral)
};

/// Classified result of integrating one direction theta backward from the
/// neighborhood of the fixed point.  Crossing times are negative (relative to
/// the start) and ordered as encountered: the first entry is the crossing at
/// largest t.
struct ShotOutcome {
    double theta = 0.0;
    std::vector<double> g1_times;  ///< zeros of alpha_t - 4 alpha (a_s = 0 at s=1)
    std::vector<double> g2_times;  ///< zeros of zeta_t + 2 zeta  (y_s = 0 at s=1)
    bool diverged = false;         ///< blew up (or became un-integrable) within t_span
};

/// Residual diagnostics attached to a solve, for scriptable acceptance.
struct SolveDiagnostics {
    double as_residual_max = 0.0;      ///< max ODE defect along the matched trajectory
    double optimality_residual = 0.0;  ///< see optimality_residual()
    double euler_residual = 0.0;       ///< see euler_residual()
    double volume = 0.0;               ///< trapezoid + analytic tip volume of a
    double b_end = 0.0;                ///< b at s = 1 (volume constraint, equals 1)
    double epsilon_final = 0.0;        ///< seed scale of the last refinement stage
    double theta_final = 0.0;          ///< matched direction at the last stage
    double delta_t_final = 0.0;        ///< matched crossing time at the last stage
    int refine_stages = 0;             ///< number of epsilon-halving stages run
};

/// Output of solve(): the matched direction at the requested epsilon, the
/// frequency from the refined trajectory, and the reconstructed beam.
struct SolveResult {
    double theta_star = 0.0;  ///< matched direction in [0, 2 pi) at config.epsilon
    double delta_t = 0.0;     ///< common crossing time at config.epsilon (negative)
    double lambda = 0.0;      ///< sqrt(360 / beta) at the matched crossing
    BeamProfile profile;
    SolveDiagnostics diagnostics;
};

/// Seed state on the tangent plane of the stable manifold:
///   x0 = 1 + eps (sin(theta) S3 + cos(theta) S6)
/// in (alpha, beta, Phi, zeta), with the rate components seeded per mode,
/// Phi_t = eps (sin(theta) q3 dPhi3 + cos(theta) q6 dPhi6) and likewise
/// zeta_t, which is exact on the tangent plane.
ASState initial_state(double theta, double epsilon);

/// Integrates one direction backward over [0, -t_span], recording every g1
/// and g2 crossing and the divergence flag.
ShotOutcome shoot(double theta, const ShootingConfig& config);

/// First-crossing time difference t_first(g1) - t_first(g2); zero when both
/// midpoint conditions are met at a common t.  Empty when either crossing is
/// missing (divergent or non-crossing directions).
std::optional<double> mismatch(double theta, const ShootingConfig& config);

/// Full solve: root-find theta from the guess, then refine by halving epsilon
/// (re-rooting theta near the previous root each stage) until the trajectory
/// covers [refine_target, 1], reconstruct the profile from the deepest stage,
/// and attach residual diagnostics.
/// Throws numerical_error("no-bracket") when no sign change of the mismatch
/// is found, and numerical_error("no-refine-bracket") when a refinement stage
/// loses the root.
SolveResult solve(const ShootingConfig& config);

/// Unpeels a matched trajectory into the physical profile.  The trajectory
/// segment [t_match, 0] maps to s in [e^{t_match}, 1] via s = e^{t_match - t};
/// below the seed the profile is continued by the tangent-plane asymptote
///   x(s) = 1 + k3 (s/s0)^4 S3 + k6 (s/s0)^{5.3523...} S6,
/// whose amplitudes k3, k6 are anchored at the seed state (k3 through the
/// combination Phi^2/alpha^3 - zeta^2, to which S6 does not contribute at
/// first order).  Samples are uniform in t = -ln s: log-dense near the tip.
BeamProfile reconstruct(const Integrator<6>::Trajectory& trajectory, double t_match,
                        double lambda, const ShootingConfig& config);

/// First-order optimality measure of a profile: 2 a y_ss^2 - lambda^2 y^2
/// must be the constant C = lambda^2 * integral of a y^2 over [0, 1] for a
/// frequency-maximizing taper (contract the stationarity equation with a and
/// use the Rayleigh identity).  Returns max |lhs - C| / |C| over the samples,
/// excluding the outermost 2% of arclength at the tip.
double optimality_residual(const BeamProfile& profile);

/// Finite-difference residual of the physical beam equation
/// (a^2 y_ss)_ss = lambda^2 a y on s in [s_lo, 1], scaled by
/// lambda^2 max |a y|.  Second derivatives are taken in t = -ln s (where the
/// samples are uniformly spaced) and mapped back by the chain rule.
double euler_residual(const BeamProfile& profile, double s_lo = 0.05);

/// One shot per direction; classification of the global structure (divergent
/// windows, multi-crossing windows, the unique matched intersection).
std::vector<ShotOutcome> sweep(const std::vector<double>& theta_samples,
                               const ShootingConfig& config);

}  // namespace javelin
