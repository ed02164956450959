#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "javelin/error.hpp"
#include "javelin/integrator.hpp"

using namespace javelin;

namespace {

using State1 = std::array<double, 1>;
using State2 = std::array<double, 2>;

}  // namespace

TEST_CASE("exponential decay to tight tolerance") {
    Integrator<1> integ;
    const auto res = integ.integrate([](const State1& y) { return State1{-y[0]}; }, State1{1.0},
                                     0.0, 5.0, {}, Tolerances{1e-10, 1e-12});
    REQUIRE(!res.failure.has_value());
    CHECK(!res.trajectory.blew_up());
    CHECK(res.trajectory.final_state()[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-8));
}

TEST_CASE("dense output interpolates between accepted steps") {
    Integrator<1> integ;
    const auto res = integ.integrate([](const State1& y) { return State1{-y[0]}; }, State1{1.0},
                                     0.0, 5.0, {}, Tolerances{1e-10, 1e-12});
    for (double t : {0.1, 0.37, 1.23, 2.0, 3.1, 4.99}) {
        CHECK(res.trajectory.state(t)[0] == doctest::Approx(std::exp(-t)).epsilon(1e-8));
        CHECK(res.trajectory.derivative(t)[0] ==
              doctest::Approx(-std::exp(-t)).epsilon(1e-6));
    }
}

TEST_CASE("backward integration") {
    Integrator<1> integ;
    const auto res = integ.integrate([](const State1& y) { return State1{-y[0]}; }, State1{1.0},
                                     0.0, -2.0, {}, Tolerances{1e-10, 1e-12});
    REQUIRE(!res.failure.has_value());
    CHECK(res.trajectory.t_end() == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(res.trajectory.final_state()[0] == doctest::Approx(std::exp(2.0)).epsilon(1e-8));
    // dense output works on the reversed orientation too
    CHECK(res.trajectory.state(-1.0)[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-8));
}

TEST_CASE("event detection on the harmonic oscillator") {
    // y'' = -y from (1, 0): y = cos t, crossing zero at pi/2 + k pi.
    Integrator<2> integ;
    const std::vector<Integrator<2>::EventFn> events = {
        [](double, const State2& y) { return y[0]; }};
    const auto res = integ.integrate(
        [](const State2& y) { return State2{y[1], -y[0]}; }, State2{1.0, 0.0}, 0.0, 10.0, events,
        Tolerances{1e-12, 1e-14});
    REQUIRE(!res.failure.has_value());
    REQUIRE(res.events.size() == 3);
    const double pi = std::numbers::pi;
    CHECK(res.events[0].t == doctest::Approx(pi / 2.0).epsilon(1e-9));
    CHECK(res.events[1].t == doctest::Approx(3.0 * pi / 2.0).epsilon(1e-9));
    CHECK(res.events[2].t == doctest::Approx(5.0 * pi / 2.0).epsilon(1e-9));
    CHECK(res.events[0].event_id == 0);
    // falling through zero first, then rising, then falling again
    CHECK(res.events[0].direction == -1);
    CHECK(res.events[1].direction == +1);
    CHECK(res.events[2].direction == -1);
}

TEST_CASE("finite-time blow-up is flagged, not fatal") {
    // y' = y^2 from 1.1 blows up at t = 1/1.1 ~ 0.909.
    Integrator<1> integ;
    const auto res = integ.integrate([](const State1& y) { return State1{y[0] * y[0]}; },
                                     State1{1.1}, 0.0, 2.0, {}, Tolerances{1e-9, 1e-11});
    CHECK(res.trajectory.blew_up());
    CHECK(std::abs(res.trajectory.t_end() - 1.0 / 1.1) < 0.1);
}

TEST_CASE("a throwing vector field ends the trajectory as a failure") {
    // The field becomes un-evaluable at y = 0.5; the integrator must shrink
    // onto the barrier and record a failure rather than crash or loop.
    Integrator<1> integ;
    auto guarded = [](const State1& y) {
        if (y[0] < 0.5) {
            throw numerical_error("singular-state", "left the admissible region",
                                  "{\"error\": \"singular-state\"}");
        }
        return State1{-1.0};
    };
    const auto res = integ.integrate(guarded, State1{1.0}, 0.0, 2.0, {}, Tolerances{1e-9, 1e-11});
    REQUIRE(res.failure.has_value());
    // y(t) = 1 - t hits the barrier at t = 0.5
    CHECK(res.trajectory.t_end() == doctest::Approx(0.5).epsilon(0.05));
    CHECK(res.trajectory.final_state()[0] == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("step cap is honored") {
    Integrator<1> integ;
    integ.max_step = 0.05;
    const auto res = integ.integrate([](const State1& y) { return State1{-y[0]}; }, State1{1.0},
                                     0.0, 1.0, {}, Tolerances{1e-6, 1e-9});
    REQUIRE(!res.failure.has_value());
    for (const auto& step : res.trajectory.steps()) {
        CHECK(std::abs(step.h) <= 0.05 + 1e-12);
    }
}

TEST_CASE("accuracy follows the tolerance") {
    Integrator<1> integ;
    const auto loose = integ.integrate([](const State1& y) { return State1{-y[0]}; },
                                       State1{1.0}, 0.0, 5.0, {}, Tolerances{1e-5, 1e-7});
    const auto tight = integ.integrate([](const State1& y) { return State1{-y[0]}; },
                                       State1{1.0}, 0.0, 5.0, {}, Tolerances{1e-11, 1e-13});
    const double truth = std::exp(-5.0);
    const double err_loose = std::abs(loose.trajectory.final_state()[0] - truth);
    const double err_tight = std::abs(tight.trajectory.final_state()[0] - truth);
    CHECK(err_tight < err_loose);
    CHECK(err_tight < 1e-11);
    CHECK(err_loose < 1e-4);
}

TEST_CASE("nonlinear system accuracy: the Brusselator-like oscillator") {
    // Two-dimensional nonlinear check with an energy invariant:
    // y'' = -y^3 conserves E = y'^2/2 + y^4/4.
    Integrator<2> integ;
    const auto res = integ.integrate(
        [](const State2& y) { return State2{y[1], -y[0] * y[0] * y[0]}; }, State2{1.0, 0.0}, 0.0,
        20.0, {}, Tolerances{1e-11, 1e-13});
    REQUIRE(!res.failure.has_value());
    const State2 yf = res.trajectory.final_state();
    const double energy = yf[1] * yf[1] / 2.0 + std::pow(yf[0], 4) / 4.0;
    CHECK(energy == doctest::Approx(0.25).epsilon(1e-8));
}
