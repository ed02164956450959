#pragma once

#include <cstddef>
#include <vector>

namespace javelin {

/// Fundamental even bending mode of the uniform (untapered) free-free beam on
/// s in [-1, 1].  With a == 1 the even solutions of y'''' = lambda^2 y are
/// y = A cos(k s) + B cosh(k s) with k = sqrt(lambda); the free-end conditions
/// y_ss = y_sss = 0 at s = +-1 reduce to the frequency equation
///   tan k + tanh k = 0,
/// whose smallest positive root lies in (pi/2, pi).
struct CylinderMode {
    double k = 0.0;        ///< sqrt(lambda), root of tan k + tanh k = 0
    double lambda = 0.0;   ///< nondimensional frequency, k^2
    double A = 0.0;        ///< cosine coefficient
    double B = 0.0;        ///< hyperbolic-cosine coefficient, B = A cos k / cosh k
    std::vector<double> s; ///< sample abscissae on [-1, 1]
    std::vector<double> y; ///< mode samples, normalized so max |y| = 1

    /// Mode shape and derivatives at any s (independent of the stored samples).
    double eval(double s) const;
    double eval_s(double s) const;
    double eval_ss(double s) const;
    double eval_sss(double s) const;

    /// Largest of |y_ss(+-1)|, |y_sss(+-1)| relative to the mode amplitude;
    /// y_ss(1) = 0 fixes B/A and y_sss(1) = 0 then holds identically at a root
    /// of the frequency equation, so this is ~1e-16 for a converged mode.
    double boundary_residual() const;
};

/// Frequency equation tan k + tanh k; the bracket (pi/2, pi) contains exactly
/// one sign change (tan runs from -inf to 0 while tanh stays near +1).
double cylinder_dispersion(double k);

/// Smallest positive nondimensional frequency of the uniform beam, from
/// bisection on k in (pi/2, pi) to machine precision; lambda = k^2 ~ 5.5933.
double cylinder_lambda();

/// Fundamental mode sampled on n_samples uniform points over [-1, 1],
/// normalized so max |y| = 1.  Requires n_samples >= 2.
CylinderMode cylinder_mode(std::size_t n_samples);

/// Frequency gain of an optimized design over the uniform beam:
/// lambda_opt / cylinder_lambda().
double improvement_ratio(double lambda_opt);

}  // namespace javelin
