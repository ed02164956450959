#include "javelin/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace javelin {

double cylinder_dispersion(double k) { return std::tan(k) + std::tanh(k); }

double cylinder_lambda() {
    // tan k runs from -inf to 0 over (pi/2, pi) while tanh k ~ 1, so the
    // bracket holds exactly one root.  Start just inside the tan pole.
    constexpr double pi = std::numbers::pi;
    double lo = std::nextafter(pi / 2.0, pi);
    double hi = pi;
    double flo = cylinder_dispersion(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = cylinder_dispersion(mid);
        if ((flo < 0.0) == (fmid < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    const double k = 0.5 * (lo + hi);
    return k * k;
}

double CylinderMode::eval(double p) const { return A * std::cos(k * p) + B * std::cosh(k * p); }

double CylinderMode::eval_s(double p) const {
    return k * (-A * std::sin(k * p) + B * std::sinh(k * p));
}

double CylinderMode::eval_ss(double p) const {
    return k * k * (-A * std::cos(k * p) + B * std::cosh(k * p));
}

double CylinderMode::eval_sss(double p) const {
    return k * k * k * (A * std::sin(k * p) + B * std::sinh(k * p));
}

double CylinderMode::boundary_residual() const {
    const double scale = std::max(std::abs(A) + std::abs(B), 1e-300);
    const double k3 = std::max(k * k * k, 1.0);
    double worst = 0.0;
    for (double end : {-1.0, 1.0}) {
        worst = std::max(worst, std::abs(eval_ss(end)) / (k * k * scale));
        worst = std::max(worst, std::abs(eval_sss(end)) / (k3 * scale));
    }
    return worst;
}

CylinderMode cylinder_mode(std::size_t n_samples) {
    if (n_samples < 2) throw std::invalid_argument("cylinder mode needs at least 2 samples");
    CylinderMode mode;
    mode.lambda = cylinder_lambda();
    mode.k = std::sqrt(mode.lambda);
    // y_ss(1) = 0 fixes the coefficient ratio; y_sss(1) = 0 then holds
    // identically because k solves the frequency equation.
    mode.A = 1.0;
    mode.B = std::cos(mode.k) / std::cosh(mode.k);

    // Normalize to max |y| = 1.  y is even and its extrema over [0, 1] are at
    // s = 0 and s = 1 plus interior zeros of y_s; a fine scan locates the
    // magnitude well past double rounding, then the coefficients are rescaled.
    double peak = 0.0;
    constexpr int kScan = 4096;
    for (int i = 0; i <= kScan; ++i) {
        peak = std::max(peak, std::abs(mode.eval(static_cast<double>(i) / kScan)));
    }
    mode.A /= peak;
    mode.B /= peak;

    mode.s.resize(n_samples);
    mode.y.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double p = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n_samples - 1);
        mode.s[i] = p;
        mode.y[i] = mode.eval(p);
    }
    return mode;
}

double improvement_ratio(double lambda_opt) {
    if (!(lambda_opt > 0.0)) throw std::invalid_argument("lambda_opt must be positive");
    return lambda_opt / cylinder_lambda();
}

}  // namespace javelin
