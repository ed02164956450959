#pragma once

#include <array>

namespace javelin {

/// State of the autonomous system obtained by peeling the similarity solution
/// off the beam equations and switching to t = -ln s.  The system is second
/// order in Phi and zeta and first order in alpha and beta, giving six
/// degrees of freedom.
///
/// Component order (used consistently by the integrator):
///   0: alpha    peeled area
///   1: beta     peeled cumulative volume
///   2: Phi      peeled torque
///   3: Phi_t    d(Phi)/dt
///   4: zeta     peeled deflection
///   5: zeta_t   d(zeta)/dt
using ASState = std::array<double, 6>;
using ASDerivative = std::array<double, 6>;

/// The fixed point (alpha, beta, Phi, zeta) = (1,1,1,1) with zero rates;
/// it represents the pure similarity solution.
ASState fixed_point();

/// Right-hand side of the autonomous system in explicit first-order form:
///   zeta_tt = 6 Phi / alpha^2 - 5 zeta_t - 6 zeta
///   Phi_tt  = 7 Phi_t - 12 Phi + 12 alpha zeta
///   beta_t  = 5 (beta - alpha)
///   alpha_t = [2 Phi Phi_t/alpha^3 + 4 Phi^2/alpha^3 - 4 zeta^2
///              - 2 zeta zeta_t] * alpha^4 / (3 Phi^2)
/// The alpha equation comes from differentiating w = Phi^2/alpha^3, which is
/// only possible for alpha > 0 and Phi != 0; violations throw
/// javelin::numerical_error("singular-state", ...) rather than returning NaN.
ASDerivative rhs(const ASState& x);

/// Residuals of the four governing equations at a given (state, derivative)
/// pair; all zero exactly when the pair satisfies the system.  Uses the
/// derivative argument (not rhs) so trajectory output can be validated
/// independently.
std::array<double, 4> residual(const ASState& x, const ASDerivative& d);

/// Boundary event functions whose simultaneous zero at a common t encodes the
/// midpoint symmetry conditions of the physical beam (a_s = 0 and y_s = 0 at
/// s = 1 after un-peeling):
///   g1 = alpha_t - 4 alpha   (computed via rhs)
///   g2 = zeta_t + 2 zeta
/// At the fixed point g1 = -4 and g2 = +2 (never zero: the pure similarity
/// solution does not satisfy the midpoint conditions).
std::array<double, 2> event_values(const ASState& x);

}  // namespace javelin
