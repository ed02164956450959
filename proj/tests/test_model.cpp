#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "javelin/model.hpp"

using namespace javelin;

TEST_CASE("indicial roots of the tip expansion") {
    // Substituting a ~ s^p into the leading balance of the beam equation
    // factors into four roots; only p = -2 keeps the tip force finite while
    // bending the beam.
    const auto roots = indicial_roots();
    CHECK(roots[0] == -2.0);
    CHECK(roots[1] == 0.0);
    CHECK(roots[2] == 1.0);
    CHECK(roots[3] == 15.0);
    for (double p : roots) {
        CHECK(indicial_residual(p) == doctest::Approx(0.0).epsilon(1e-14));
    }
    CHECK(select_physical_root(roots) == -2.0);
}

TEST_CASE("similarity constants") {
    const SimilarityConstants c;
    CHECK(c.p == -2.0);
    CHECK(c.gamma == 72.0);
}

TEST_CASE("similarity evaluation matches the closed forms") {
    const double lambda = 27.0;
    const double l2 = lambda * lambda;
    for (double s : {1e-4, 1e-2, 0.3, 1.0}) {
        const SimilarityValues v = similarity_eval(s, lambda, 1.0);
        CHECK(v.a == doctest::Approx(l2 / 72.0 * std::pow(s, 4)).epsilon(1e-14));
        CHECK(v.b == doctest::Approx(l2 / 360.0 * std::pow(s, 5)).epsilon(1e-14));
        CHECK(v.phi == doctest::Approx(l2 * l2 / 864.0 * std::pow(s, 4)).epsilon(1e-14));
        CHECK(v.y == doctest::Approx(std::pow(s, -2)).epsilon(1e-14));
    }
}

TEST_CASE("similarity values scale linearly with the mode amplitude") {
    const SimilarityValues v1 = similarity_eval(0.5, 27.0, 1.0);
    const SimilarityValues v2 = similarity_eval(0.5, 27.0, 3.0);
    CHECK(v2.y == doctest::Approx(3.0 * v1.y).epsilon(1e-14));
    CHECK(v2.phi == doctest::Approx(3.0 * v1.phi).epsilon(1e-14));
    CHECK(v2.a == v1.a);  // the tapering does not depend on the amplitude
    CHECK(v2.b == v1.b);
}

TEST_CASE("dimensional frequency maps are mutually inverse") {
    DimensionalBeam beam;
    beam.rho = 1200.0;
    beam.E = 3.2e9;
    beam.c = 1.0 / (4.0 * 3.14159265358979323846);
    beam.V = 2.2e-4;
    beam.L = 1.35;
    beam.validate();

    const double lambda = 27.071;
    const double omega = to_dimensional_frequency(lambda, beam);
    CHECK(from_dimensional_frequency(omega, beam) == doctest::Approx(lambda).epsilon(1e-13));
    // omega^2 = 16 c E V lambda^2 / (rho L^4)
    const double omega2 = 16.0 * beam.c * beam.E * beam.V * lambda * lambda /
                          (beam.rho * std::pow(beam.L, 4));
    CHECK(omega * omega == doctest::Approx(omega2).epsilon(1e-13));
}

TEST_CASE("dimensional parameters are validated") {
    DimensionalBeam beam;
    beam.rho = -1.0;
    CHECK_THROWS_AS(beam.validate(), std::invalid_argument);
    beam.rho = 1200.0;
    beam.E = 0.0;
    CHECK_THROWS_AS(beam.validate(), std::invalid_argument);
}

TEST_CASE("profile validation rejects broken sample sets") {
    BeamProfile profile;
    profile.lambda = 27.0;

    SUBCASE("monotone samples pass") {
        profile.samples = {{0.1, 1.0, 0.1, 0.2, 3.0}, {0.5, 1.2, 0.2, 0.3, 2.0},
                           {1.0, 1.5, 0.9, 0.4, 1.0}};
        CHECK_NOTHROW(profile.validate());
    }
    SUBCASE("non-monotone arclength is rejected") {
        profile.samples = {{0.5, 1.0, 0.1, 0.2, 3.0}, {0.4, 1.2, 0.2, 0.3, 2.0}};
        CHECK_THROWS_AS(profile.validate(), std::invalid_argument);
    }
    SUBCASE("negative tapering is rejected") {
        profile.samples = {{0.1, -1.0, 0.1, 0.2, 3.0}, {0.5, 1.2, 0.2, 0.3, 2.0}};
        CHECK_THROWS_AS(profile.validate(), std::invalid_argument);
    }
    SUBCASE("too few samples are rejected") {
        profile.samples = {{0.5, 1.0, 0.1, 0.2, 3.0}};
        CHECK_THROWS_AS(profile.validate(), std::invalid_argument);
    }
}

TEST_CASE("volume check integrates the tapering with its analytic tip") {
    // A pure similarity profile with lambda chosen so the half-beam volume is
    // exactly 1: integral of (lambda^2/72) s^4 over [0,1] = lambda^2/360.
    const double lambda = std::sqrt(360.0);
    BeamProfile profile;
    profile.lambda = lambda;
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
        const double s = 1e-4 + (1.0 - 1e-4) * static_cast<double>(i) / n;
        const SimilarityValues v = similarity_eval(s, lambda, 1.0);
        profile.samples.push_back({s, v.a, v.b, v.phi, v.y});
    }
    CHECK(volume_check(profile) == doctest::Approx(1.0).epsilon(1e-6));
}
