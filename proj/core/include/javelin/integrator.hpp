#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "javelin/error.hpp"

namespace javelin {

/// Relative/absolute local error tolerances for the adaptive integrator.
struct Tolerances {
    double rel = 1e-9;
    double abs = 1e-11;
};

/// A located zero crossing of an event function along a trajectory.
struct EventRecord {
    std::size_t event_id = 0;
    double t = 0.0;
    int direction = 0;  ///< +1 rising, -1 falling
};

/// Dormand-Prince 5(4) adaptive Runge-Kutta integration with a quartic dense
/// interpolant and root-resolved event detection, for autonomous systems of
/// fixed dimension N.  Supports forward and backward time.  A state whose
/// max-norm exceeds blow_up_threshold stops the integration with a flag (not
/// an error): divergent shots are classified, not crashed on.
template <std::size_t N>
class Integrator {
public:
    using Vec = std::array<double, N>;
    using Rhs = std::function<Vec(const Vec&)>;
    using EventFn = std::function<double(double, const Vec&)>;

    /// One accepted step with the dense-output coefficients of the quartic
    /// interpolant on [t, t + h].
    struct Step {
        double t = 0.0;
        double h = 0.0;  ///< signed step
        Vec y{};         ///< state at t
        Vec f{};         ///< derivative at t
        std::array<Vec, 5> rcont{};  ///< interpolant coefficients
    };

    /// Integration result: accepted mesh plus dense-output data.
    class Trajectory {
    public:
        /// State at t0 plus every accepted step end; t strictly monotone.
        const std::vector<Step>& steps() const { return steps_; }
        double t_begin() const { return t0_; }
        double t_end() const { return t_end_; }
        bool blew_up() const { return blew_up_; }
        const Vec& final_state() const { return y_end_; }

        /// Dense evaluation anywhere inside [t_begin, t_end].
        Vec state(double t) const {
            const Step& s = locate(t);
            const double th = (t - s.t) / s.h;
            return eval_interp(s, th);
        }

        /// Time derivative of the dense interpolant (analytic in the
        /// interpolation parameter, so it is smooth inside each step).
        Vec derivative(double t) const {
            const Step& s = locate(t);
            const double th = (t - s.t) / s.h;
            Vec d{};
            for (std::size_t i = 0; i < N; ++i) {
                const double r2 = s.rcont[1][i], r3 = s.rcont[2][i];
                const double r4 = s.rcont[3][i], r5 = s.rcont[4][i];
                // P(th) = r1 + th r2 + th(1-th) r3 + th^2(1-th) r4 + th^2(1-th)^2 r5
                d[i] = (r2 + (1.0 - 2.0 * th) * r3 + th * (2.0 - 3.0 * th) * r4 +
                        th * (2.0 - 6.0 * th + 4.0 * th * th) * r5) /
                       s.h;
            }
            return d;
        }

    private:
        friend class Integrator;
        static Vec eval_interp(const Step& s, double th) {
            Vec y{};
            const double th1 = 1.0 - th;
            for (std::size_t i = 0; i < N; ++i) {
                y[i] = s.rcont[0][i] +
                       th * (s.rcont[1][i] +
                             th1 * (s.rcont[2][i] +
                                    th * (s.rcont[3][i] + th1 * s.rcont[4][i])));
            }
            return y;
        }
        const Step& locate(double t) const {
            // Steps are monotone in t (sign of h); binary search for the
            // containing step, clamping to the ends.
            auto cmp = [this](double a, double b) { return forward_ ? a < b : a > b; };
            std::size_t lo = 0, hi = steps_.size();
            while (hi - lo > 1) {
                std::size_t mid = (lo + hi) / 2;
                if (cmp(t, steps_[mid].t)) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return steps_[lo];
        }

        std::vector<Step> steps_;
        double t0_ = 0.0;
        double t_end_ = 0.0;
        Vec y_end_{};
        bool blew_up_ = false;
        bool forward_ = true;
    };

    struct Result {
        Trajectory trajectory;
        std::vector<EventRecord> events;
        /// Set when integration could not continue (step size underflow,
        /// typically because the right-hand side became singular along a
        /// degenerate direction).  The partial trajectory and the events
        /// found so far are kept, so callers can classify such shots.
        std::optional<std::string> failure;
    };

    double blow_up_threshold = 1e8;
    double event_time_tol = 1e-10;
    double max_step = 0.2;  ///< cap so event functions are sampled densely

    /// Integrates rhs from (t0, x0) to t_end (t_end < t0 integrates
    /// backward), locating every sign change of every event function by
    /// bisection on the dense interpolant.  Event functions may return NaN
    /// where they are undefined; NaN samples never produce a crossing.
    Result integrate(const Rhs& rhs, const Vec& x0, double t0, double t_end,
                     const std::vector<EventFn>& events, const Tolerances& tol) const {
        if (!(tol.rel > 0.0) || !(tol.abs > 0.0)) {
            throw std::invalid_argument("integrator tolerances must be positive");
        }
        Result res;
        Trajectory& traj = res.trajectory;
        traj.t0_ = t0;
        traj.forward_ = t_end >= t0;
        const double dir = traj.forward_ ? 1.0 : -1.0;
        const double span = std::abs(t_end - t0);

        Vec y = x0;
        Vec f{};
        try {
            f = rhs(y);
        } catch (const numerical_error& err) {
            traj.t_end_ = t0;
            traj.y_end_ = y;
            res.failure = std::string("right-hand side undefined at the start: ") + err.what();
            return res;
        }
        double t = t0;
        double h = dir * std::min(initial_step(y, f, tol), std::min(max_step, span));

        std::vector<double> ev_prev(events.size());
        for (std::size_t j = 0; j < events.size(); ++j) {
            ev_prev[j] = safe_event(events[j], t, y);
        }

        const double hmin = 16.0 * std::numeric_limits<double>::epsilon() *
                            std::max(std::abs(t0), std::abs(t_end));
        std::size_t accepted = 0;
        while (dir * (t_end - t) > 0.0) {
            if (std::abs(h) > max_step) h = dir * max_step;
            if (dir * (t + h - t_end) > 0.0) h = t_end - t;
            if (std::abs(h) < std::max(hmin, 1e-14)) {
                // The controller drove the step to zero (singular right-hand
                // side ahead); classify instead of crashing.
                res.failure = "step size underflow at t = " + std::to_string(t);
                break;
            }

            Step step;
            Vec y_new, f_new;
            const double err = attempt(rhs, t, y, f, h, step, y_new, f_new, tol);
            if (!(err <= 1.0)) {  // rejects NaN/inf error estimates too
                const double shrink =
                    std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
                h *= shrink;
                continue;
            }

            traj.steps_.push_back(step);
            ++accepted;

            // Event detection on the accepted interval via dense bisection.
            for (std::size_t j = 0; j < events.size(); ++j) {
                const double ga = ev_prev[j];
                const double gb = safe_event(events[j], t + h, y_new);
                if (std::isfinite(ga) && std::isfinite(gb) &&
                    ((ga < 0.0 && gb >= 0.0) || (ga > 0.0 && gb <= 0.0))) {
                    double ta = t, tb = t + h;
                    double va = ga;
                    while (std::abs(tb - ta) > event_time_tol) {
                        const double tm = 0.5 * (ta + tb);
                        const double th = (tm - step.t) / step.h;
                        const double vm = safe_event(events[j], tm,
                                                     Trajectory::eval_interp(step, th));
                        if (!std::isfinite(vm)) break;
                        if ((va < 0.0) == (vm < 0.0)) {
                            ta = tm;
                            va = vm;
                        } else {
                            tb = tm;
                        }
                    }
                    EventRecord rec;
                    rec.event_id = j;
                    rec.t = 0.5 * (ta + tb);
                    rec.direction = gb > ga ? +1 : -1;
                    res.events.push_back(rec);
                }
                ev_prev[j] = gb;
            }

            t += h;
            y = y_new;
            f = f_new;

            double norm = 0.0;
            for (double v : y) norm = std::max(norm, std::abs(v));
            if (norm > blow_up_threshold) {
                traj.blew_up_ = true;
                break;
            }

            const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 10.0);
            h *= factor;
        }

        traj.t_end_ = t;
        traj.y_end_ = y;
        return res;
    }

private:
    static double safe_event(const EventFn& g, double t, const Vec& y) {
        try {
            return g(t, y);
        } catch (const numerical_error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    }

    static double initial_step(const Vec& y, const Vec& f, const Tolerances& tol) {
        // Conservative starting step from the state/derivative scales; the
        // controller adapts within a few steps.
        double dy = 0.0, df = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = tol.abs + tol.rel * std::abs(y[i]);
            dy = std::max(dy, std::abs(y[i]) / sc);
            df = std::max(df, std::abs(f[i]) / sc);
        }
        if (df <= 0.0) return 1e-4;
        return std::max(1e-8, 0.01 * std::max(dy, 1.0) / df);
    }

    /// One trial step from (t, y).  Fills the Step record and the proposed
    /// endpoint state/derivative; returns the scaled error estimate.
    double attempt(const Rhs& rhs, double t, const Vec& y, const Vec& f, double h,
                   Step& step, Vec& y_new, Vec& f_new, const Tolerances& tol) const {
        // Dormand-Prince coefficients.
        static constexpr double a21 = 1.0 / 5.0;
        static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
        static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
        static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                                a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
        static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                                a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                                a65 = -5103.0 / 18656.0;
        static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                                b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
        static constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0,
                                e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                                e4 = 125.0 / 192.0 - 393.0 / 640.0,
                                e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                                e6 = 11.0 / 84.0 - 187.0 / 2100.0, e7 = -1.0 / 40.0;
        // Dense-output weights.
        static constexpr double d1 = -12715105075.0 / 11282082432.0,
                                d3 = 87487479700.0 / 32700410799.0,
                                d4 = -10690763975.0 / 1880347072.0,
                                d5 = 701980252875.0 / 199316789632.0,
                                d6 = -1453857185.0 / 822651844.0,
                                d7 = 69997945.0 / 29380423.0;

        const Vec& k1 = f;
        Vec k2, k3, k4, k5, k6, k7, tmp;

        auto axpy = [&](const auto&... terms) {
            for (std::size_t i = 0; i < N; ++i) {
                tmp[i] = y[i] + h * (... + (terms.first * terms.second[i]));
            }
        };
        using P = std::pair<double, const Vec&>;
        try {
            axpy(P{a21, k1});
            k2 = rhs(tmp);
            axpy(P{a31, k1}, P{a32, k2});
            k3 = rhs(tmp);
            axpy(P{a41, k1}, P{a42, k2}, P{a43, k3});
            k4 = rhs(tmp);
            axpy(P{a51, k1}, P{a52, k2}, P{a53, k3}, P{a54, k4});
            k5 = rhs(tmp);
            axpy(P{a61, k1}, P{a62, k2}, P{a63, k3}, P{a64, k4}, P{a65, k5});
            k6 = rhs(tmp);
            axpy(P{b1, k1}, P{b3, k3}, P{b4, k4}, P{b5, k5}, P{b6, k6});
            y_new = tmp;
            k7 = rhs(y_new);  // FSAL stage
        } catch (const numerical_error&) {
            // A stage left the right-hand side's domain: reject the step so
            // the controller shrinks toward the singularity.
            return std::numeric_limits<double>::infinity();
        }
        f_new = k7;

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = tol.abs + tol.rel * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (err <= 1.0) {
            step.t = t;
            step.h = h;
            step.y = y;
            step.f = f;
            for (std::size_t i = 0; i < N; ++i) {
                const double dy = y_new[i] - y[i];
                const double bspl = h * k1[i] - dy;
                step.rcont[0][i] = y[i];
                step.rcont[1][i] = dy;
                step.rcont[2][i] = bspl;
                step.rcont[3][i] = dy - h * k7[i] - bspl;
                step.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                                        d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
        }
        return err;
    }
};

}  // namespace javelin
