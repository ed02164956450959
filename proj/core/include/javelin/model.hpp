#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace javelin {

/// Physical description of a beam with geometrically similar cross-sections:
/// density rho, Young's modulus E, section shape constant c, volume V and
/// length L.  Only the combination 16 c E V / (rho L^4) enters the frequency
/// map.
struct DimensionalBeam {
    double rho;  ///< mass density [kg/m^3]
    double E;    ///< Young's modulus [Pa]
    double c;    ///< cross-section shape constant [-]
    double V;    ///< volume [m^3]
    double L;    ///< half-length scale used in the nondimensionalization [m]

    /// All parameters must be strictly positive.
    void validate() const;
};

/// Constants of the tip similarity solution.  The deflection behaves like
/// y ~ s^p at the tip; the physically admissible exponent is p = -2, for
/// which the area prefactor gamma = lambda^2 / a0 equals 72.
struct SimilarityConstants {
    double p = -2.0;
    double gamma = 72.0;
    double lambda = 0.0;  ///< nondimensional frequency
    double y0 = 1.0;      ///< free mode-amplitude scale; lambda does not depend on it
};

/// One sample of the reconstructed beam: arclength s in (0, 1], area a,
/// cumulative volume b, bending torque phi = a^2 y_ss, and deflection y.
struct ProfileSample {
    double s;
    double a;
    double b;
    double phi;
    double y;
};

/// Sampled physical solution on (0, 1] together with its frequency.
/// Samples are stored with strictly increasing s, log-dense near the tip
/// because every field is a power law there.
struct BeamProfile {
    std::vector<ProfileSample> samples;
    double lambda = 0.0;

    /// Throws std::invalid_argument when s is not strictly increasing,
    /// a <= 0 somewhere, or b decreases.
    void validate() const;
};

/// All real roots of the tip indicial equation
///   p (p-1) (p+6) (p+5) = 2 p^2 (p-1)^2,
/// sorted ascending.  The two nontrivial roots come from deflating the known
/// factors p and (p-1) and solving the remaining quadratic exactly.
std::array<double, 4> indicial_roots();

/// Residual of the indicial equation at p (zero at a root).
double indicial_residual(double p);

/// Selects the physically admissible exponent (-2) from the root list:
/// 0 and 1 produce a vanishing area prefactor, and +15 is incompatible with
/// the sign of the optimality condition.  Throws std::invalid_argument when
/// -2 is missing.
double select_physical_root(const std::array<double, 4>& roots);

/// Pointwise values of the tip similarity solution at arclength s:
///   a = (lambda^2/72) s^4,  b = (lambda^2/360) s^5,
///   phi = y0 (lambda^4/864) s^4,  y = y0 s^-2.
struct SimilarityValues {
    double a;
    double b;
    double phi;
    double y;
};
SimilarityValues similarity_eval(double s, double lambda, double y0);

/// Dimensional angular frequency omega [rad/s] for a nondimensional lambda:
/// lambda^2 = rho L^4 omega^2 / (16 c E V).
double to_dimensional_frequency(double lambda, const DimensionalBeam& beam);

/// Inverse map: nondimensional lambda for a dimensional omega.
double from_dimensional_frequency(double omega, const DimensionalBeam& beam);

/// Trapezoidal integral of a over the stored samples plus the analytic tip
/// contribution of the similarity solution on [0, s_min].  Equals 1 for a
/// correctly normalized solution (unit nondimensional volume).
double volume_check(const BeamProfile& profile);

}  // namespace javelin
