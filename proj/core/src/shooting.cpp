#include "javelin/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "javelin/error.hpp"
#include "javelin/linearization.hpp"
#include "javelin/log.hpp"

namespace javelin {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct StablePlane {
    std::array<double, 4> s3, s6;
    double q3, q6;
};

const StablePlane& plane() {
    static const StablePlane p = [] {
        const auto [m3, m6] = stable_directions();
        return StablePlane{m3.direction, m6.direction, m3.q, m6.q};
    }();
    return p;
}

double wrap_to_2pi(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

Integrator<6> make_integrator(const ShootingConfig& config) {
    Integrator<6> integ;
    integ.max_step = config.max_step;
    integ.event_time_tol = config.event_time_tol;
    return integ;
}

Integrator<6>::Result run_shot(double theta, const ShootingConfig& config) {
    const Integrator<6> integ = make_integrator(config);
    const std::vector<Integrator<6>::EventFn> events = {
        [](double, const ASState& x) { return event_values(x)[0]; },
        [](double, const ASState& x) { return x[5] + 2.0 * x[4]; },
    };
    return integ.integrate([](const ASState& x) { return rhs(x); },
                           initial_state(theta, config.epsilon), 0.0, -config.t_span, events,
                           config.tolerances);
}

ShotOutcome classify(double theta, const Integrator<6>::Result& run) {
    ShotOutcome out;
    out.theta = theta;
    for (const EventRecord& ev : run.events) {
        (ev.event_id == 0 ? out.g1_times : out.g2_times).push_back(ev.t);
    }
    out.diverged = run.trajectory.blew_up() || run.failure.has_value();
    return out;
}

std::optional<double> mismatch_of(const ShotOutcome& out) {
    if (out.g1_times.empty() || out.g2_times.empty()) return std::nullopt;
    return out.g1_times.front() - out.g2_times.front();
}

/// Bisection on the mismatch between two defined samples of opposite sign.
/// An undefined midpoint (the defined window's edge intruding into the
/// bracket) shrinks the bracket toward the nearest defined interior point
/// instead of aborting.
double refine_root(double lo, double m_lo, double hi, double m_hi,
                   const ShootingConfig& config) {
    double a = lo, fa = m_lo;
    double b = hi, fb = m_hi;
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    for (int it = 0; it < 200 && std::abs(b - a) > config.theta_tol; ++it) {
        double m = 0.5 * (a + b);
        std::optional<double> fm = mismatch(m, config);
        if (!fm) {
            bool found = false;
            for (int k = 1; k <= 8 && !found; ++k) {
                for (double cand : {m - k * (b - a) / 32.0, m + k * (b - a) / 32.0}) {
                    if ((cand - a) * (cand - b) >= 0.0) continue;  // outside bracket
                    fm = mismatch(cand, config);
                    if (fm) {
                        m = cand;
                        found = true;
                        break;
                    }
                }
            }
            if (!found) {
                throw numerical_error("no-bracket",
                                      "mismatch undefined across the bracket interior",
                                      make_error_record("no-bracket", "bracket degenerated"));
            }
        }
        if (*fm == 0.0) return m;
        if ((*fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = *fm;
        } else {
            b = m;
            fb = *fm;
        }
    }
    return 0.5 * (a + b);
}

/// Hunts for a root between an undefined sample at a and a defined sample of
/// value fb at b.  The defined window's edge lies somewhere in between; as a
/// crossing disappears at the edge the mismatch typically runs away in one
/// direction, so the root can hide between the edge and b closer than any
/// fixed scan step.  Bisects on definedness, shrinking toward b, and hands a
/// sign change straight to refine_root.
std::optional<double> edge_bracket(double a, double b, double fb, const ShootingConfig& config) {
    if (fb == 0.0) return b;
    for (int it = 0; it < 80 && std::abs(b - a) > config.theta_tol; ++it) {
        const double m = 0.5 * (a + b);
        const std::optional<double> fm = mismatch(m, config);
        if (!fm) {
            a = m;
            continue;
        }
        if (*fm == 0.0) return m;
        if ((*fm < 0.0) != (fb < 0.0)) return refine_root(m, *fm, b, fb, config);
        b = m;
        fb = *fm;
    }
    return std::nullopt;  // mismatch keeps its sign all the way to the edge
}

/// Finds a mismatch root by sampling outward from a center direction and
/// refining between the first adjacent pair of defined samples with a sign
/// change; pairs straddling a window edge are probed with edge_bracket.
/// Step/count give the scan granularity and half-width.
double scan_for_root(double center, double step, int half_count, const ShootingConfig& config) {
    std::map<int, std::optional<double>> samples;
    auto theta_at = [&](int i) { return center + i * step; };
    auto try_pair = [&](int i) -> std::optional<double> {
        auto lo = samples.find(i), hi = samples.find(i + 1);
        if (lo == samples.end() || hi == samples.end()) return std::nullopt;
        const bool lo_defined = lo->second.has_value();
        const bool hi_defined = hi->second.has_value();
        if (lo_defined && hi_defined) {
            const double fa = *lo->second, fb = *hi->second;
            if (fa == 0.0) return theta_at(i);
            if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) {
                return refine_root(theta_at(i), fa, theta_at(i + 1), fb, config);
            }
            return std::nullopt;
        }
        if (lo_defined != hi_defined) {
            const double defined = lo_defined ? theta_at(i) : theta_at(i + 1);
            const double undefined = lo_defined ? theta_at(i + 1) : theta_at(i);
            const double f = lo_defined ? *lo->second : *hi->second;
            return edge_bracket(undefined, defined, f, config);
        }
        return std::nullopt;
    };

    for (int k = 0; k <= 2 * half_count; ++k) {
        // 0, +1, -1, +2, -2, ... outward from the center
        const int i = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
        if (std::abs(i) > half_count) continue;
        samples[i] = mismatch(theta_at(i), config);
        if (log::enabled(log::Level::debug)) {
            std::ostringstream msg;
            msg << "scan theta=" << theta_at(i) << " mismatch=";
            if (samples[i]) {
                msg << *samples[i];
            } else {
                msg << "undefined";
            }
            log::debug(msg.str());
        }
        for (int j : {i - 1, i}) {
            if (auto root = try_pair(j)) return *root;
        }
    }
    throw numerical_error("no-bracket",
                          "no sign change of the crossing mismatch within the scanned window",
                          make_error_record("no-bracket", "scan exhausted"));
}

struct MatchedShot {
    double theta = 0.0;
    double t_match = 0.0;
    double lambda = 0.0;
    Integrator<6>::Result run;
};

MatchedShot matched_shot(double theta, const ShootingConfig& config) {
    MatchedShot shot;
    shot.theta = theta;
    shot.run = run_shot(theta, config);
    const ShotOutcome out = classify(theta, shot.run);
    if (out.g1_times.empty()) {
        throw numerical_error("no-crossing", "matched direction lost its boundary crossing",
                              make_error_record("no-crossing", "g1 never crossed"));
    }
    shot.t_match = out.g1_times.front();
    const ASState at_match = shot.run.trajectory.state(shot.t_match);
    const double beta = at_match[1];
    if (!(beta > 0.0)) {
        throw numerical_error("negative-volume-scale",
                              "beta at the matched crossing must be positive",
                              make_error_record("negative-volume-scale", std::to_string(beta)));
    }
    shot.lambda = std::sqrt(360.0 / beta);
    return shot;
}

/// Max ODE defect of the dense trajectory over [t_lo, t_hi], sampled inside
/// every accepted step, relative to the local state magnitude.
double trajectory_defect(const Integrator<6>::Trajectory& traj, double t_lo, double t_hi) {
    double worst = 0.0;
    for (const auto& step : traj.steps()) {
        for (double frac : {0.25, 0.5, 0.75}) {
            const double t = step.t + frac * step.h;
            if (t < t_lo || t > t_hi) continue;
            const ASState x = traj.state(t);
            const ASDerivative d = traj.derivative(t);
            ASDerivative f;
            try {
                f = rhs(x);
            } catch (const numerical_error&) {
                continue;
            }
            double scale = 1.0;
            for (double v : x) scale = std::max(scale, std::abs(v));
            for (std::size_t i = 0; i < 6; ++i) {
                worst = std::max(worst, std::abs(d[i] - f[i]) / scale);
            }
        }
    }
    return worst;
}

}  // namespace

ASState initial_state(double theta, double epsilon) {
    const StablePlane& p = plane();
    const double sn = std::sin(theta), cs = std::cos(theta);
    ASState x{};
    // (alpha, beta, Phi, zeta) offsets along the tangent plane
    const std::array<double, 4> v = {
        sn * p.s3[0] + cs * p.s6[0],
        sn * p.s3[1] + cs * p.s6[1],
        sn * p.s3[2] + cs * p.s6[2],
        sn * p.s3[3] + cs * p.s6[3],
    };
    x[0] = 1.0 + epsilon * v[0];
    x[1] = 1.0 + epsilon * v[1];
    x[2] = 1.0 + epsilon * v[2];
    x[4] = 1.0 + epsilon * v[3];
    // Rates per mode: along an eigendirection the deviation evolves like
    // e^{q t}, so each mode contributes q times its component.
    x[3] = epsilon * (sn * p.q3 * p.s3[2] + cs * p.q6 * p.s6[2]);
    x[5] = epsilon * (sn * p.q3 * p.s3[3] + cs * p.q6 * p.s6[3]);
    return x;
}

ShotOutcome shoot(double theta, const ShootingConfig& config) {
    return classify(theta, run_shot(theta, config));
}

std::optional<double> mismatch(double theta, const ShootingConfig& config) {
    return mismatch_of(shoot(theta, config));
}

std::vector<ShotOutcome> sweep(const std::vector<double>& theta_samples,
                               const ShootingConfig& config) {
    std::vector<ShotOutcome> out;
    out.reserve(theta_samples.size());
    for (double theta : theta_samples) {
        out.push_back(shoot(theta, config));
    }
    return out;
}

SolveResult solve(const ShootingConfig& config) {
    if (!(config.epsilon > 0.0) || !(config.t_span > 0.0)) {
        throw std::invalid_argument("epsilon and t_span must be positive");
    }

    // Stage 1: root of the mismatch at the requested seed scale.  The scan
    // covers the full circle outward from the guess (the guess may sit in a
    // window where one boundary condition never fires).
    const int half_count = 72;
    const double theta1 = scan_for_root(config.theta_guess, kTwoPi / (2 * half_count),
                                        half_count, config);
    const MatchedShot stage1 = matched_shot(theta1, config);
    {
        std::ostringstream msg;
        msg << "matched direction theta=" << wrap_to_2pi(theta1) << " dt=" << stage1.t_match
            << " lambda=" << stage1.lambda;
        log::info(msg.str());
    }

    // Stage 2: halve the seed scale (re-rooting theta nearby each time) until
    // the seed reaches s = e^{t_match} <= refine_target, so the profile's
    // trajectory part covers everything outside the asymptotic tail.
    ShootingConfig stage_cfg = config;
    MatchedShot best = stage1;
    int stages = 0;
    while (std::exp(best.t_match) > config.refine_target &&
           stages < config.max_refine_stages) {
        stage_cfg.epsilon *= 0.5;
        ++stages;
        double theta_next = 0.0;
        try {
            theta_next = scan_for_root(best.theta, 0.6 / 15.0, 8, stage_cfg);
        } catch (const numerical_error&) {
            throw numerical_error(
                "no-refine-bracket",
                "lost the matched direction while shrinking the seed scale",
                make_error_record("no-refine-bracket",
                                  "epsilon = " + std::to_string(stage_cfg.epsilon)));
        }
        best = matched_shot(theta_next, stage_cfg);
        if (log::enabled(log::Level::debug)) {
            std::ostringstream msg;
            msg << "refine stage " << stages << ": epsilon=" << stage_cfg.epsilon
                << " theta=" << best.theta << " dt=" << best.t_match
                << " lambda=" << best.lambda;
            log::debug(msg.str());
        }
    }

    SolveResult result;
    result.theta_star = wrap_to_2pi(theta1);
    result.delta_t = stage1.t_match;
    result.lambda = best.lambda;
    result.profile = reconstruct(best.run.trajectory, best.t_match, best.lambda, config);

    SolveDiagnostics& diag = result.diagnostics;
    diag.as_residual_max = trajectory_defect(best.run.trajectory, best.t_match, 0.0);
    diag.optimality_residual = optimality_residual(result.profile);
    diag.euler_residual = euler_residual(result.profile);
    diag.volume = volume_check(result.profile);
    diag.b_end = result.profile.samples.back().b;
    diag.epsilon_final = stage_cfg.epsilon;
    diag.theta_final = wrap_to_2pi(best.theta);
    diag.delta_t_final = best.t_match;
    diag.refine_stages = stages;
    return result;
}

BeamProfile reconstruct(const Integrator<6>::Trajectory& trajectory, double t_match,
                        double lambda, const ShootingConfig& config) {
    if (!(t_match < 0.0)) {
        throw std::invalid_argument("matched crossing time must be negative");
    }
    const double l2 = lambda * lambda;
    const double y0 = config.y0;
    const double s0 = std::exp(t_match);  // seed arclength; trajectory covers [s0, 1]

    BeamProfile profile;
    profile.lambda = lambda;
    profile.samples.reserve(config.tail_samples + config.profile_samples);

    // Tangent-plane tail below the seed.  The mode amplitudes are anchored at
    // the seed state: the combination w - zeta^2 = Phi^2/alpha^3 - zeta^2
    // isolates the q = -4 mode (the other stable direction contributes zero
    // to it at first order, while S3 contributes 189 per unit amplitude),
    // and the Phi component then fixes the remaining amplitude.
    const StablePlane& p = plane();
    const ASState seed = trajectory.state(0.0);
    const double w_seed = seed[2] * seed[2] / (seed[0] * seed[0] * seed[0]);
    const double comb = w_seed - seed[4] * seed[4];
    const double k3 = comb / 189.0;
    const double k6 = (seed[2] - 1.0 - k3 * p.s3[2]) / p.s6[2];
    const double p6 = -p.q6;  // tail decay exponent of the slow mode, ~5.3523

    const double tau_splice = -t_match + 0.002;  // just below the seed
    for (std::size_t j = 0; j < config.tail_samples; ++j) {
        // descending tau: deepest sample first so s comes out ascending
        const double frac = static_cast<double>(j) / static_cast<double>(config.tail_samples - 1);
        const double tau = config.tail_log_depth + frac * (tau_splice - config.tail_log_depth);
        const double s = std::exp(-tau);
        const double r = s / s0;
        const double g3 = k3 * std::pow(r, 4.0);
        const double g6 = k6 * std::pow(r, p6);
        const double alpha = 1.0 + g3 * p.s3[0] + g6 * p.s6[0];
        const double beta = 1.0 + g3 * p.s3[1] + g6 * p.s6[1];
        const double Phi = 1.0 + g3 * p.s3[2] + g6 * p.s6[2];
        const double zeta = 1.0 + g3 * p.s3[3] + g6 * p.s6[3];
        const double s4 = s * s * s * s;
        profile.samples.push_back({s, (l2 / 72.0) * s4 * alpha, (l2 / 360.0) * s4 * s * beta,
                                   y0 * (l2 * l2 / 864.0) * s4 * Phi, y0 * zeta / (s * s)});
    }

    // Trajectory part: uniform in tau = t - t_match, so s = e^{-tau} runs
    // from the seed up to the matched midpoint s = 1.
    for (std::size_t j = 0; j < config.profile_samples; ++j) {
        const double frac =
            static_cast<double>(j) / static_cast<double>(config.profile_samples - 1);
        const double tau = -t_match * (1.0 - frac);
        const ASState x = trajectory.state(t_match + tau);
        const double s = std::exp(-tau);
        const double s4 = s * s * s * s;
        profile.samples.push_back({s, (l2 / 72.0) * s4 * x[0], (l2 / 360.0) * s4 * s * x[1],
                                   y0 * (l2 * l2 / 864.0) * s4 * x[2], y0 * x[4] / (s * s)});
    }

    profile.validate();
    return profile;
}

double optimality_residual(const BeamProfile& profile) {
    profile.validate();
    const std::size_t n = profile.samples.size();
    const double lambda = profile.lambda;
    const double l2 = lambda * lambda;

    // C = lambda^2 * integral of a y^2 over [0, 1]: trapezoid over the samples
    // plus the analytic similarity contribution below the innermost sample,
    // where a y^2 -> (lambda^2/72) y0^2 is constant.
    double integral = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const ProfileSample& lo = profile.samples[i - 1];
        const ProfileSample& hi = profile.samples[i];
        integral += 0.5 * (lo.a * lo.y * lo.y + hi.a * hi.y * hi.y) * (hi.s - lo.s);
    }
    const ProfileSample& tip = profile.samples.front();
    const double y0 = tip.s * tip.s * tip.y;
    integral += (l2 / 72.0) * y0 * y0 * tip.s;
    const double C = l2 * integral;

    double worst = 0.0;
    for (const ProfileSample& q : profile.samples) {
        if (q.s < 0.02) continue;  // outermost 2% of arclength at the tip
        const double y_ss = q.phi / (q.a * q.a);
        const double lhs = 2.0 * q.a * y_ss * y_ss - l2 * q.y * q.y;
        worst = std::max(worst, std::abs(lhs - C));
    }
    return worst / std::abs(C);
}

double euler_residual(const BeamProfile& profile, double s_lo) {
    profile.validate();
    const std::size_t n = profile.samples.size();
    const double l2 = profile.lambda * profile.lambda;

    double scale = 0.0;
    for (const ProfileSample& q : profile.samples) {
        if (q.s < s_lo) continue;
        scale = std::max(scale, std::abs(q.a * q.y));
    }
    scale *= l2;

    // phi_ss = (phi_tt + phi_t) / s^2 in t = -ln s, with a three-point
    // divided-difference stencil that is exact for the uniform-in-t samples
    // the solver writes and second-order for any smooth spacing.
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const ProfileSample& q = profile.samples[i];
        if (q.s < s_lo) continue;
        const double t0 = -std::log(profile.samples[i - 1].s);
        const double t1 = -std::log(q.s);
        const double t2 = -std::log(profile.samples[i + 1].s);
        const double f0 = profile.samples[i - 1].phi;
        const double f1 = q.phi;
        const double f2 = profile.samples[i + 1].phi;
        const double d01 = t1 - t0, d12 = t2 - t1, d02 = t2 - t0;
        const double phi_t =
            -d12 / (d01 * d02) * f0 + (d12 - d01) / (d01 * d12) * f1 + d01 / (d12 * d02) * f2;
        const double phi_tt =
            2.0 * (f0 / (d01 * d02) - f1 / (d01 * d12) + f2 / (d12 * d02));
        const double phi_ss = (phi_tt + phi_t) / (q.s * q.s);
        worst = std::max(worst, std::abs(phi_ss - l2 * q.a * q.y));
    }
    return worst / scale;
}

}  // namespace javelin
