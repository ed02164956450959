#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "javelin/dynamics.hpp"
#include "javelin/linearization.hpp"
#include "javelin/model.hpp"
#include "javelin/shooting.hpp"

using namespace javelin;

TEST_CASE("seed state sits on the tangent plane") {
    const auto [s3, s6] = stable_directions();

    SUBCASE("zero offset is the fixed point") {
        const ASState x = initial_state(0.7, 0.0);
        const ASState one = fixed_point();
        for (int i = 0; i < 6; ++i) CHECK(x[i] == one[i]);
    }
    SUBCASE("pure fast mode at theta = pi/2") {
        const double eps = 1e-3;
        const ASState x = initial_state(std::numbers::pi / 2.0, eps);
        CHECK(x[0] == doctest::Approx(1.0 + eps * s3.direction[0]).epsilon(1e-12));
        CHECK(x[1] == doctest::Approx(1.0 + eps * s3.direction[1]).epsilon(1e-12));
        CHECK(x[2] == doctest::Approx(1.0 + eps * s3.direction[2]).epsilon(1e-12));
        CHECK(x[4] == doctest::Approx(1.0 + eps * s3.direction[3]).epsilon(1e-12));
        // rate components carry the growth exponent of the mode
        CHECK(x[3] == doctest::Approx(eps * s3.q * s3.direction[2]).epsilon(1e-12));
        CHECK(x[5] == doctest::Approx(eps * s3.q * s3.direction[3]).epsilon(1e-12));
    }
    SUBCASE("pure slow mode at theta = 0") {
        const double eps = 1e-3;
        const ASState x = initial_state(0.0, eps);
        CHECK(x[0] == doctest::Approx(1.0 + eps * s6.direction[0]).epsilon(1e-12));
        CHECK(x[3] == doctest::Approx(eps * s6.q * s6.direction[2]).epsilon(1e-12));
        CHECK(x[5] == doctest::Approx(eps * s6.q * s6.direction[3]).epsilon(1e-12));
    }
}

TEST_CASE("shot classification across the direction circle") {
    const ShootingConfig config;

    SUBCASE("the nominal guess direction never meets the torque condition") {
        // -pi/6: the first boundary condition has no crossing within the
        // horizon, so the mismatch is undefined there.
        const ShotOutcome out = shoot(config.theta_guess, config);
        CHECK(out.g1_times.empty());
        CHECK(!mismatch(config.theta_guess, config).has_value());
    }
    SUBCASE("mismatch brackets the matched direction") {
        const auto lo = mismatch(1.3963, config);
        const auto hi = mismatch(1.4835, config);
        REQUIRE(lo.has_value());
        REQUIRE(hi.has_value());
        CHECK(*lo < 0.0);
        CHECK(*hi > 0.0);
    }
    SUBCASE("multi-crossing directions keep every crossing, ordered") {
        const ShotOutcome out = shoot(std::numbers::pi / 4.0, config);
        REQUIRE(out.g1_times.size() >= 2);
        // encountered earliest = largest t first (backward integration)
        CHECK(out.g1_times[0] > out.g1_times[1]);
        CHECK(out.g1_times[0] == doctest::Approx(-1.2665).epsilon(5e-3));
        CHECK(out.g1_times[1] == doctest::Approx(-1.356).epsilon(5e-3));
    }
    SUBCASE("divergent directions are flagged, not fatal") {
        // scan a few directions; the circle has whole divergent windows
        bool found_divergent = false;
        for (double theta : {3.5, 4.0, 4.5, 5.0, 5.5}) {
            if (shoot(theta, config).diverged) found_divergent = true;
        }
        CHECK(found_divergent);
    }
}

TEST_CASE("full solve reproduces the pinned solution") {
    const ShootingConfig config;
    const SolveResult result = solve(config);

    // matched direction and crossing offset at the default seed scale
    CHECK(result.theta_star == doctest::Approx(1.4264521).epsilon(1e-6));
    CHECK(result.delta_t == doctest::Approx(-0.8775168).epsilon(1e-6));
    // frequency from the refinement cascade
    CHECK(result.lambda == doctest::Approx(27.0714295).epsilon(1e-7));

    const SolveDiagnostics& d = result.diagnostics;
    CHECK(d.b_end == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d.volume == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(d.as_residual_max < 1e-6);
    CHECK(d.optimality_residual < 1e-4);
    CHECK(d.euler_residual < 1e-4);
    CHECK(d.refine_stages >= 10);
    CHECK(std::exp(d.delta_t_final) <= config.refine_target);
    CHECK(d.theta_final == doctest::Approx(1.5853).epsilon(1e-3));

    SUBCASE("profile structure") {
        const BeamProfile& p = result.profile;
        CHECK(p.lambda == result.lambda);
        CHECK(p.samples.size() == config.tail_samples + config.profile_samples);
        CHECK(p.samples.back().s == 1.0);
        CHECK(p.samples.front().s == doctest::Approx(std::exp(-config.tail_log_depth))
                                         .epsilon(1e-12));
        // the tapering grows monotonically from tip to midpoint
        std::size_t violations = 0;
        for (std::size_t i = 1; i < p.samples.size(); ++i) {
            if (!(p.samples[i].a > p.samples[i - 1].a)) ++violations;
        }
        CHECK(violations == 0);
    }
    SUBCASE("tip asymptote pins the frequency") {
        const ProfileSample& tip = result.profile.samples.front();
        const double inferred = std::sqrt(72.0 * tip.a / std::pow(tip.s, 4));
        CHECK(inferred == doctest::Approx(result.lambda).epsilon(1e-8));
    }
    SUBCASE("midpoint values match the matched state") {
        const ProfileSample& mid = result.profile.samples.back();
        CHECK(mid.b == doctest::Approx(1.0).epsilon(1e-10));
        // the matching event makes s = 1 a critical point of the tapering,
        // so its value there is a stable quantity worth pinning
        CHECK(mid.a == doctest::Approx(2.4819486962704502).epsilon(1e-6));
    }
}

TEST_CASE("solve is stable against configuration changes") {
    ShootingConfig config;
    const double lambda0 = solve(config).lambda;

    SUBCASE("guess inside the defined window") {
        config.theta_guess = 1.5;
        CHECK(solve(config).lambda == doctest::Approx(lambda0).epsilon(1e-8));
    }
    SUBCASE("guess on the other side of the circle") {
        config.theta_guess = 4.0;
        CHECK(solve(config).lambda == doctest::Approx(lambda0).epsilon(1e-8));
    }
}

TEST_CASE("solve validates its configuration") {
    ShootingConfig config;
    config.epsilon = 0.0;
    CHECK_THROWS_AS(solve(config), std::invalid_argument);
    config.epsilon = -1e-3;
    CHECK_THROWS_AS(solve(config), std::invalid_argument);
}

TEST_CASE("sweep matches individual shots") {
    const ShootingConfig config;
    const std::vector<double> thetas = {0.9, 1.4264521, 2.1};
    const std::vector<ShotOutcome> outcomes = sweep(thetas, config);
    REQUIRE(outcomes.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const ShotOutcome single = shoot(thetas[i], config);
        CHECK(outcomes[i].theta == thetas[i]);
        CHECK(outcomes[i].diverged == single.diverged);
        REQUIRE(outcomes[i].g1_times.size() == single.g1_times.size());
        for (std::size_t k = 0; k < single.g1_times.size(); ++k) {
            CHECK(outcomes[i].g1_times[k] == single.g1_times[k]);
        }
    }
}

TEST_CASE("residual measures reject a wrong profile") {
    // A pure similarity profile solves the tip equation but is NOT the
    // optimal beam on [0, 1]; the optimality residual must say so loudly.
    BeamProfile fake;
    fake.lambda = 27.0;
    for (int i = 0; i <= 3000; ++i) {
        const double s = 1e-3 + (1.0 - 1e-3) * static_cast<double>(i) / 3000.0;
        const SimilarityValues v = similarity_eval(s, fake.lambda, 1.0);
        fake.samples.push_back({s, v.a, v.b, v.phi, v.y});
    }
    // the similarity profile does satisfy the ODE pointwise...
    CHECK(euler_residual(fake) < 1e-3);
    // ...but it is not a stationary design
    CHECK(optimality_residual(fake) > 0.1);
}
