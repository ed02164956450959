#pragma once

#include <cstddef>
#include <vector>

#include "javelin/model.hpp"

namespace javelin {

/// Uniform discretization of the full beam on [0, 2] (both tips included, the
/// midpoint at s = 1) with the tapering mirrored about the midpoint.  The
/// oracle works on the full domain so it is independent of the symmetry
/// assumption built into the shooting solver.
struct DiscreteBeam {
    std::vector<double> grid;      ///< n uniform points, grid[0] = 0, grid[n-1] = 2
    std::vector<double> a_values;  ///< tapering at the grid points, >= a_min > 0
    double a_min = 0.0;            ///< tip regularization floor actually applied
};

/// Samples a profile onto n uniform points of [0, 2], mirroring s > 1 to
/// 2 - s and flooring the area at a(tip_cut) (tip_cut = 0 disables the
/// floor).  The true optimum has a ~ s^4 tips whose unregularized spectrum is
/// continuous; any small rounding removes that.
DiscreteBeam discretize(const BeamProfile& profile, std::size_t n, double tip_cut);

/// The uniform beam a == 1 on n points (reference case).
DiscreteBeam uniform_beam(std::size_t n);

/// Symmetric pentadiagonal matrix in lower-band storage: d0 is the diagonal
/// (length n), d1 the first subdiagonal (n-1), d2 the second (n-2).
struct BandedMatrix {
    std::size_t n = 0;
    std::vector<double> d0, d1, d2;
};

/// y = A x for the banded matrix.
std::vector<double> banded_multiply(const BandedMatrix& A, const std::vector<double>& x);

/// Weak-form discretization of the eigenproblem (a^2 y_ss)_ss = lambda^2 a y
/// with free ends: stiffness K = D2^T diag(h a_i^2) D2 built from interior
/// second differences only (omitting boundary rows is exactly the natural
/// free-end condition), and diagonal mass M = diag(w_i a_i) with trapezoid
/// weights.  K is symmetric positive-semidefinite with the two rigid-body
/// modes (constant and linear in s) in its null space.
struct AssembledSystem {
    BandedMatrix stiffness;
    std::vector<double> mass;  ///< diagonal of M
};
AssembledSystem assemble(const DiscreteBeam& beam);

/// Lowest eigenpairs of the generalized problem K y = lambda^2 M y, computed
/// from the symmetric similarity transform B = M^{-1/2} K M^{-1/2} (banded)
/// and classified:
///   - noise_floor: 64 eps * (Gershgorin bound of B) — eigenvalues below it
///     are pure roundoff and excluded from the threshold reference;
///   - rigid modes: eigenvalues below max(noise_floor, 1e-6 * third
///     above-noise eigenvalue), scale-free across grids;
///   - center_participation: mass-weighted share of each mode's norm inside
///     s in (0.5, 1.5), separating global bending modes from artifacts
///     localized at a regularized tip.
struct SpectralResult {
    std::vector<double> eigenvalues;           ///< lambda^2, ascending
    std::vector<std::vector<double>> modes;    ///< physical shapes y_k = M^{-1/2} u_k
    std::vector<double> center_participation;  ///< one entry per mode
    double noise_floor = 0.0;
    double rigid_threshold = 0.0;
    int rigid_count = 0;
};
SpectralResult spectrum(const DiscreteBeam& beam, std::size_t n_modes = 8);

/// sqrt of the smallest non-rigid eigenvalue whose mode is a global bending
/// mode (center participation > 0.1).  Throws numerical_error
/// ("rigid-mode-count") unless exactly two rigid modes are present, and
/// ("no-global-mode") when all computed modes are tip artifacts.
double lowest_frequency(const DiscreteBeam& beam);

/// lowest_frequency of the beam perturbed to a + eps * perturbation for each
/// eps.  The perturbation must be volume-neutral: trapezoid integral below
/// 1e-10 relative to the beam volume (throws numerical_error otherwise).
/// At a frequency-maximizing design the response |lambda(eps) - lambda(0)|
/// is quadratic in eps; at a non-stationary design it is linear.
std::vector<double> stationarity_probe(const DiscreteBeam& beam,
                                       const std::vector<double>& perturbation,
                                       const std::vector<double>& eps_list);

/// A smooth volume-neutral probe direction on the beam's grid: even about the
/// midpoint, compactly supported on |s-1| < 0.8 (vanishing at the tips), with
/// the zero-integral balance coefficient fitted on the grid's own trapezoid
/// rule so the drift is at roundoff.
std::vector<double> probe_bump(const std::vector<double>& grid);

/// Least-squares slope of log |lambda(eps) - lambda0| against log eps.
double fitted_exponent(const std::vector<double>& eps_list,
                       const std::vector<double>& lambdas, double lambda0);

}  // namespace javelin
