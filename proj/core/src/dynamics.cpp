#include "javelin/dynamics.hpp"

#include <cmath>
#include <string>

#include "javelin/error.hpp"

namespace javelin {

ASState fixed_point() { return {1.0, 1.0, 1.0, 0.0, 1.0, 0.0}; }

ASDerivative rhs(const ASState& x) {
    const double alpha = x[0], beta = x[1];
    const double Phi = x[2], Phi_t = x[3];
    const double zeta = x[4], zeta_t = x[5];

    if (!(alpha > 0.0) || Phi == 0.0) {
        throw numerical_error(
            "singular-state",
            "autonomous system undefined at alpha = " + std::to_string(alpha) +
                ", Phi = " + std::to_string(Phi),
            make_error_record("singular-state", "alpha <= 0 or Phi == 0"));
    }

    const double a3 = alpha * alpha * alpha;
    const double zeta_tt = 6.0 * Phi / (alpha * alpha) - 5.0 * zeta_t - 6.0 * zeta;
    const double Phi_tt = 7.0 * Phi_t - 12.0 * Phi + 12.0 * alpha * zeta;
    const double beta_t = 5.0 * (beta - alpha);
    // alpha_t from differentiating the energy density w = Phi^2 / alpha^3:
    // w_t = 4 zeta^2 + 2 zeta zeta_t - 4 w, so
    // alpha_t = (2 Phi Phi_t / alpha^3 - w_t) alpha^4 / (3 Phi^2).
    const double w = Phi * Phi / a3;
    const double w_t = 4.0 * zeta * zeta + 2.0 * zeta * zeta_t - 4.0 * w;
    const double alpha_t = (2.0 * Phi * Phi_t / a3 - w_t) * (a3 * alpha) / (3.0 * Phi * Phi);

    return {alpha_t, beta_t, Phi_t, Phi_tt, zeta_t, zeta_tt};
}

std::array<double, 4> residual(const ASState& x, const ASDerivative& d) {
    const ASDerivative f = rhs(x);
    // Governing-equation residuals: the two second-order equations (using the
    // supplied rates), the beta equation, and the alpha equation.
    return {
        d[5] - f[5],  // zeta_tt equation
        d[3] - f[3],  // Phi_tt equation
        d[1] - f[1],  // beta_t equation
        d[0] - f[0],  // alpha_t equation
    };
}

std::array<double, 2> event_values(const ASState& x) {
    const ASDerivative f = rhs(x);
    return {f[0] - 4.0 * x[0], x[5] + 2.0 * x[4]};
}

}  // namespace javelin
