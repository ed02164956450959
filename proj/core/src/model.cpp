#include "javelin/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace javelin {

void DimensionalBeam::validate() const {
    auto require_positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string(name) + " must be positive and finite");
        }
    };
    require_positive(rho, "rho");
    require_positive(E, "E");
    require_positive(c, "c");
    require_positive(V, "V");
    require_positive(L, "L");
}

void BeamProfile::validate() const {
    if (samples.size() < 2) {
        throw std::invalid_argument("profile needs at least two samples");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const ProfileSample& p = samples[i];
        if (!(p.s > 0.0)) {
            throw std::invalid_argument("profile arclength must be positive");
        }
        if (i > 0 && !(p.s > samples[i - 1].s)) {
            throw std::invalid_argument("profile arclength must be strictly increasing");
        }
        if (p.a < 0.0) {
            throw std::invalid_argument("profile area must be non-negative");
        }
        if (i > 0 && p.b < samples[i - 1].b - 1e-12) {
            throw std::invalid_argument("cumulative volume must be non-decreasing");
        }
    }
}

std::array<double, 4> indicial_roots() {
    // p(p-1)(p+6)(p+5) = 2 p^2 (p-1)^2 shares the factors p and (p-1);
    // deflating them leaves (p+6)(p+5) = 2p(p-1), i.e. p^2 - 13p - 30 = 0,
    // with the exact integer roots -2 and 15.
    return {-2.0, 0.0, 1.0, 15.0};
}

double indicial_residual(double p) {
    return p * (p - 1.0) * (p + 6.0) * (p + 5.0) - 2.0 * p * p * (p - 1.0) * (p - 1.0);
}

double select_physical_root(const std::array<double, 4>& roots) {
    // p = 0 and p = 1 describe rigid-body motion (no bending energy), and the
    // p = 15 branch bends the wrong way to maximize frequency at fixed volume;
    // the tip must carry the p = -2 deflection growth.
    for (double p : roots) {
        if (p == -2.0) return p;
    }
    throw std::invalid_argument("physical indicial root -2 not present");
}

SimilarityValues similarity_eval(double s, double lambda, double y0) {
    if (!(s > 0.0)) throw std::invalid_argument("similarity solution requires s > 0");
    const double l2 = lambda * lambda;
    SimilarityValues v;
    const double s2 = s * s;
    const double s4 = s2 * s2;
    v.a = (l2 / 72.0) * s4;
    v.b = (l2 / 360.0) * s4 * s;
    v.phi = y0 * (l2 * l2 / 864.0) * s4;
    v.y = y0 / s2;
    return v;
}

double to_dimensional_frequency(double lambda, const DimensionalBeam& beam) {
    beam.validate();
    // lambda^2 = rho L^4 omega^2 / (16 c E V)
    return lambda * std::sqrt(16.0 * beam.c * beam.E * beam.V / (beam.rho * std::pow(beam.L, 4)));
}

double from_dimensional_frequency(double omega, const DimensionalBeam& beam) {
    beam.validate();
    return omega / std::sqrt(16.0 * beam.c * beam.E * beam.V / (beam.rho * std::pow(beam.L, 4)));
}

double volume_check(const BeamProfile& profile) {
    profile.validate();
    double integral = 0.0;
    for (std::size_t i = 1; i < profile.samples.size(); ++i) {
        const ProfileSample& lo = profile.samples[i - 1];
        const ProfileSample& hi = profile.samples[i];
        integral += 0.5 * (hi.a + lo.a) * (hi.s - lo.s);
    }
    // Below the innermost sample the area follows the similarity law
    // a = (lambda^2/72) s^4, contributing (lambda^2/360) s_min^5.
    const double s_min = profile.samples.front().s;
    const double l2 = profile.lambda * profile.lambda;
    integral += (l2 / 360.0) * std::pow(s_min, 5);
    return integral;
}

}  // namespace javelin
