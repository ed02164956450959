#include "javelin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>

#include <lapacke.h>

#include "javelin/error.hpp"

namespace javelin {
namespace {

/// Linear interpolation of the profile's tapering at arclength s in [0, 1],
/// clamped to the end samples (below the innermost sample the area continues
/// with the similarity law; the clamp only matters when a floor is applied
/// anyway).
double interp_area(const BeamProfile& profile, double s) {
    const auto& ps = profile.samples;
    if (s <= ps.front().s) return ps.front().a;
    if (s >= ps.back().s) return ps.back().a;
    auto hi = std::lower_bound(ps.begin(), ps.end(), s,
                               [](const ProfileSample& p, double v) { return p.s < v; });
    const auto lo = hi - 1;
    const double f = (s - lo->s) / (hi->s - lo->s);
    return lo->a + f * (hi->a - lo->a);
}

std::vector<double> trapezoid_weights(std::size_t n, double h) {
    std::vector<double> w(n, h);
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
}

double grid_spacing(const DiscreteBeam& beam) {
    return (beam.grid.back() - beam.grid.front()) / static_cast<double>(beam.grid.size() - 1);
}

void validate_beam(const DiscreteBeam& beam) {
    if (beam.grid.size() < 50 || beam.grid.size() != beam.a_values.size()) {
        throw std::invalid_argument("discrete beam needs >= 50 matching grid/area points");
    }
    for (double a : beam.a_values) {
        if (!(a > 0.0)) throw std::invalid_argument("discrete beam area must be positive");
    }
}

}  // namespace

DiscreteBeam discretize(const BeamProfile& profile, std::size_t n, double tip_cut) {
    profile.validate();
    if (n < 50) throw std::invalid_argument("oracle grid needs at least 50 points");
    DiscreteBeam beam;
    beam.grid.resize(n);
    beam.a_values.resize(n);
    const double floor_value = tip_cut > 0.0 ? interp_area(profile, tip_cut) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        const double half = s <= 1.0 ? s : 2.0 - s;
        beam.grid[i] = s;
        beam.a_values[i] = std::max(interp_area(profile, half), floor_value);
    }
    beam.a_min = *std::min_element(beam.a_values.begin(), beam.a_values.end());
    return beam;
}

DiscreteBeam uniform_beam(std::size_t n) {
    if (n < 50) throw std::invalid_argument("oracle grid needs at least 50 points");
    DiscreteBeam beam;
    beam.grid.resize(n);
    beam.a_values.assign(n, 1.0);
    beam.a_min = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        beam.grid[i] = 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return beam;
}

std::vector<double> banded_multiply(const BandedMatrix& A, const std::vector<double>& x) {
    if (x.size() != A.n) throw std::invalid_argument("banded multiply: size mismatch");
    std::vector<double> y(A.n, 0.0);
    for (std::size_t i = 0; i < A.n; ++i) {
        double acc = A.d0[i] * x[i];
        if (i >= 1) acc += A.d1[i - 1] * x[i - 1];
        if (i + 1 < A.n) acc += A.d1[i] * x[i + 1];
        if (i >= 2) acc += A.d2[i - 2] * x[i - 2];
        if (i + 2 < A.n) acc += A.d2[i] * x[i + 2];
        y[i] = acc;
    }
    return y;
}

AssembledSystem assemble(const DiscreteBeam& beam) {
    validate_beam(beam);
    const std::size_t n = beam.grid.size();
    const double h = grid_spacing(beam);

    AssembledSystem sys;
    sys.stiffness.n = n;
    sys.stiffness.d0.assign(n, 0.0);
    sys.stiffness.d1.assign(n - 1, 0.0);
    sys.stiffness.d2.assign(n - 2, 0.0);

    // K = D2^T diag(h a_i^2) D2 over interior second differences: each
    // interior node contributes the 5-point biharmonic pattern scaled by
    // v = a_i^2 / h^3 (one power of h is the quadrature weight, four are the
    // divided differences).  Tips appear only through their neighbors, which
    // is exactly the natural (free) boundary condition of the weak form.
    const double inv_h3 = 1.0 / (h * h * h);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double v = beam.a_values[i] * beam.a_values[i] * inv_h3;
        sys.stiffness.d0[i - 1] += v;
        sys.stiffness.d0[i] += 4.0 * v;
        sys.stiffness.d0[i + 1] += v;
        sys.stiffness.d1[i - 1] += -2.0 * v;
        sys.stiffness.d1[i] += -2.0 * v;
        sys.stiffness.d2[i - 1] += v;
    }

    sys.mass.resize(n);
    const std::vector<double> w = trapezoid_weights(n, h);
    for (std::size_t i = 0; i < n; ++i) sys.mass[i] = w[i] * beam.a_values[i];
    return sys;
}

SpectralResult spectrum(const DiscreteBeam& beam, std::size_t n_modes) {
    const AssembledSystem sys = assemble(beam);
    const std::size_t n = beam.grid.size();
    const lapack_int nev = static_cast<lapack_int>(std::min(n_modes, n));

    // Similarity transform to a standard symmetric banded problem:
    // B = M^{-1/2} K M^{-1/2} has the same eigenvalues as K y = lambda^2 M y,
    // and the physical shapes are recovered as y = M^{-1/2} u.
    std::vector<double> inv_sqrt_m(n);
    for (std::size_t i = 0; i < n; ++i) inv_sqrt_m[i] = 1.0 / std::sqrt(sys.mass[i]);

    std::vector<double> b0(n), b1(n > 1 ? n - 1 : 0), b2(n > 2 ? n - 2 : 0);
    for (std::size_t i = 0; i < n; ++i) b0[i] = sys.stiffness.d0[i] * inv_sqrt_m[i] * inv_sqrt_m[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        b1[i] = sys.stiffness.d1[i] * inv_sqrt_m[i] * inv_sqrt_m[i + 1];
    }
    for (std::size_t i = 0; i + 2 < n; ++i) {
        b2[i] = sys.stiffness.d2[i] * inv_sqrt_m[i] * inv_sqrt_m[i + 2];
    }

    // Gershgorin bound of B: reference scale for the roundoff noise floor.
    double gersh = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = std::abs(b0[i]);
        if (i >= 1) radius += std::abs(b1[i - 1]);
        if (i + 1 < n) radius += std::abs(b1[i]);
        if (i >= 2) radius += std::abs(b2[i - 2]);
        if (i + 2 < n) radius += std::abs(b2[i]);
        gersh = std::max(gersh, radius);
    }

    // Lower-band column storage for dsbevx: ab(i - j, j) = B(i, j).
    constexpr lapack_int kd = 2, ldab = 3;
    std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        ab[3 * j] = b0[j];
        if (j + 1 < n) ab[3 * j + 1] = b1[j];
        if (j + 2 < n) ab[3 * j + 2] = b2[j];
    }

    std::vector<double> q(n * n), w_out(n), z(n * static_cast<std::size_t>(nev));
    std::vector<lapack_int> ifail(n, 0);
    lapack_int found = 0;
    const double abstol = 2.0 * LAPACKE_dlamch('S');
    const lapack_int info = LAPACKE_dsbevx(
        LAPACK_COL_MAJOR, 'V', 'I', 'L', static_cast<lapack_int>(n), kd, ab.data(), ldab,
        q.data(), static_cast<lapack_int>(n), 0.0, 0.0, 1, nev, abstol, &found, w_out.data(),
        z.data(), static_cast<lapack_int>(n), ifail.data());
    if (info != 0 || found != nev) {
        throw numerical_error(
            "eigensolver",
            "banded symmetric eigensolver failed (info = " + std::to_string(info) + ")",
            make_error_record("eigensolver", "info = " + std::to_string(info)));
    }

    SpectralResult res;
    res.eigenvalues.assign(w_out.begin(), w_out.begin() + nev);
    res.noise_floor = 64.0 * std::numeric_limits<double>::epsilon() * gersh;

    const double h = grid_spacing(beam);
    const std::vector<double> w = trapezoid_weights(n, h);
    res.modes.resize(nev);
    res.center_participation.resize(nev);
    for (lapack_int k = 0; k < nev; ++k) {
        std::vector<double>& mode = res.modes[k];
        mode.resize(n);
        double total = 0.0, center = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mode[i] = z[static_cast<std::size_t>(k) * n + i] * inv_sqrt_m[i];
            const double cell = w[i] * beam.a_values[i] * mode[i] * mode[i];
            total += cell;
            if (beam.grid[i] > 0.5 && beam.grid[i] < 1.5) center += cell;
        }
        res.center_participation[k] = center / total;
    }

    // Rigid-mode threshold, scale-free across grids: relative to the third
    // above-noise eigenvalue but never below the roundoff floor.
    std::vector<double> above_noise;
    for (double v : res.eigenvalues) {
        if (v > res.noise_floor) above_noise.push_back(v);
    }
    if (above_noise.size() < 3) {
        throw numerical_error("eigensolver",
                              "fewer than three eigenvalues above the roundoff floor",
                              make_error_record("eigensolver", "degenerate spectrum"));
    }
    res.rigid_threshold = std::max(res.noise_floor, 1e-6 * above_noise[2]);
    res.rigid_count = 0;
    for (double v : res.eigenvalues) {
        if (v < res.rigid_threshold) ++res.rigid_count;
    }
    return res;
}

double lowest_frequency(const DiscreteBeam& beam) {
    const SpectralResult res = spectrum(beam);
    if (res.rigid_count != 2) {
        throw numerical_error(
            "rigid-mode-count",
            "expected exactly 2 rigid-body modes, found " + std::to_string(res.rigid_count),
            make_error_record("rigid-mode-count", std::to_string(res.rigid_count)));
    }
    for (std::size_t k = 0; k < res.eigenvalues.size(); ++k) {
        if (res.eigenvalues[k] >= res.rigid_threshold && res.center_participation[k] > 0.1) {
            return std::sqrt(res.eigenvalues[k]);
        }
    }
    throw numerical_error("no-global-mode",
                          "all computed modes are localized tip artifacts",
                          make_error_record("no-global-mode", "raise the mode count"));
}

std::vector<double> stationarity_probe(const DiscreteBeam& beam,
                                       const std::vector<double>& perturbation,
                                       const std::vector<double>& eps_list) {
    validate_beam(beam);
    if (perturbation.size() != beam.grid.size()) {
        throw std::invalid_argument("perturbation must live on the beam grid");
    }
    const double h = grid_spacing(beam);
    const std::vector<double> w = trapezoid_weights(beam.grid.size(), h);
    double drift = 0.0, volume = 0.0;
    for (std::size_t i = 0; i < beam.grid.size(); ++i) {
        drift += w[i] * perturbation[i];
        volume += w[i] * beam.a_values[i];
    }

    for (double eps : eps_list) {
        if (std::abs(eps * drift) > 1e-10 * volume) {
            throw numerical_error(
                "volume-drift",
                "perturbation is not volume-neutral on this grid",
                make_error_record("volume-drift", std::to_string(eps * drift)));
        }
    }

    // The perturbed eigensolves are independent; run them concurrently.
    std::vector<std::future<double>> jobs;
    jobs.reserve(eps_list.size());
    for (double eps : eps_list) {
        jobs.push_back(std::async(std::launch::async, [&beam, &perturbation, eps] {
            DiscreteBeam perturbed = beam;
            for (std::size_t i = 0; i < beam.grid.size(); ++i) {
                perturbed.a_values[i] = beam.a_values[i] + eps * perturbation[i];
            }
            perturbed.a_min =
                *std::min_element(perturbed.a_values.begin(), perturbed.a_values.end());
            return lowest_frequency(perturbed);
        }));
    }
    std::vector<double> lambdas;
    lambdas.reserve(eps_list.size());
    for (std::future<double>& job : jobs) lambdas.push_back(job.get());
    return lambdas;
}

std::vector<double> probe_bump(const std::vector<double>& grid) {
    // Even about the midpoint and compactly supported away from the tips;
    // two nested bump shapes are balanced so the grid's own trapezoid
    // integral vanishes, making the volume drift pure roundoff.
    const std::size_t n = grid.size();
    std::vector<double> base(n), hollow(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = std::abs(grid[i] - 1.0) / 0.8;
        if (u < 1.0) {
            const double core = (1.0 - u * u);
            base[i] = core * core * core;
            hollow[i] = u * u * base[i];
        }
    }
    const double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);
    const std::vector<double> w = trapezoid_weights(n, h);
    double ib = 0.0, ih = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ib += w[i] * base[i];
        ih += w[i] * hollow[i];
    }
    const double c = ib / ih;
    std::vector<double> bump(n);
    for (std::size_t i = 0; i < n; ++i) bump[i] = base[i] - c * hollow[i];
    return bump;
}

double fitted_exponent(const std::vector<double>& eps_list, const std::vector<double>& lambdas,
                       double lambda0) {
    if (eps_list.size() != lambdas.size() || eps_list.size() < 2) {
        throw std::invalid_argument("exponent fit needs matching lists of >= 2 points");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(eps_list.size());
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        const double x = std::log(eps_list[i]);
        const double y = std::log(std::abs(lambdas[i] - lambda0));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace javelin
