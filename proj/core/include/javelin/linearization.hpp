#pragma once

#include <array>
#include <utility>
#include <vector>

namespace javelin {

/// Eigenvalue q and direction (d_alpha, d_beta, d_Phi, d_zeta) of the
/// autonomous system linearized about its fixed point (1,1,1,1).
/// Perturbations evolve like e^{q t} along the direction.
struct EigenPair {
    double q;
    std::array<double, 4> direction;  ///< (d_alpha, d_beta, d_Phi, d_zeta)
};

/// The 4x4 linearization matrix at growth exponent q; a direction is an
/// eigen-direction exactly when this matrix is singular.
/// Rows (acting on (d_alpha, d_beta, d_Phi, d_zeta)):
///   [-12,       0,          6,        -(2+q)(3+q)]
///   [-12,       0,  (q-4)(q-3),               -12]
///   [-3(4+q),   0,     2(4+q),            -2(4+q)]
///   [-5,      5-q,          0,                  0]
std::array<std::array<double, 4>, 4> linearization_matrix(double q);

/// Determinant of linearization_matrix(q); a degree-6 polynomial in q whose
/// roots are the growth exponents.
double char_det(double q);

/// All six growth exponents, sorted ascending.  Four are exact integers
/// {-4, 0, 1, 5} (deflated analytically); the remaining quadratic
/// q^2 - q - 34 gives (1 +- sqrt(137))/2 ~ 6.3523 and -5.3523.
std::array<double, 6> eigenvalues();

/// A null vector of linearization_matrix(q), normalized to the tabulated
/// convention: the q=-4 direction is the exact rational vector
/// (9, 5, -27, -135) (scaled so d_Phi = -27); all other directions are scaled
/// so d_Phi = 1, except the pure volume-shift mode at q=5, which is (0,1,0,0).
/// Throws std::invalid_argument when the matrix is not singular at q.
std::array<double, 4> null_direction(double q);

/// Residual max-norm of M(q) * v; zero exactly when v is a null vector.
double null_residual(double q, const std::array<double, 4>& v);

/// The two stable directions (q < 0) spanning the tangent plane of the
/// stable manifold, ordered with q = -4 first.
std::pair<EigenPair, EigenPair> stable_directions();

}  // namespace javelin
