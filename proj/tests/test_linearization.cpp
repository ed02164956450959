#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>

#include "javelin/linearization.hpp"

using namespace javelin;

namespace {

// Plain 4x4 determinant by Gaussian elimination with partial pivoting, as an
// independent check on the hand-expanded characteristic polynomial.
double numeric_det(std::array<std::array<double, 4>, 4> m) {
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (m[pivot][col] == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

}  // namespace

TEST_CASE("characteristic determinant matches the matrix determinant") {
    for (double q : {-7.3, -5.0, -2.5, -0.7, 0.4, 1.9, 3.3, 4.6, 6.1, 7.8}) {
        const double expanded = char_det(q);
        const double direct = numeric_det(linearization_matrix(q));
        CHECK(expanded ==
              doctest::Approx(direct).epsilon(1e-10).scale(std::max(1.0, std::abs(direct))));
    }
}

TEST_CASE("characteristic determinant pinned values") {
    CHECK(char_det(2.0) == 3456.0);  // hand-expanded spot value
    CHECK(char_det(0.0) == 0.0);
    CHECK(char_det(1.0) == 0.0);
    CHECK(char_det(-4.0) == 0.0);
    CHECK(char_det(5.0) == 0.0);
}

TEST_CASE("degree-6 structure: 7-point interpolation reproduces the polynomial") {
    // Lagrange interpolation through 7 nodes determines any degree-6
    // polynomial; agreement at off-node points confirms char_det has no
    // higher-order or non-polynomial content.
    const std::array<double, 7> nodes = {-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
    std::array<double, 7> values{};
    for (int i = 0; i < 7; ++i) values[i] = char_det(nodes[i]);

    auto interpolate = [&](double q) {
        double sum = 0.0;
        for (int i = 0; i < 7; ++i) {
            double basis = 1.0;
            for (int j = 0; j < 7; ++j) {
                if (j != i) basis *= (q - nodes[j]) / (nodes[i] - nodes[j]);
            }
            sum += values[i] * basis;
        }
        return sum;
    };

    const std::array<double, 20> points = {-7.5, -6.8, -6.1, -5.4, -4.7, -3.9, -3.2, -2.4, -1.7,
                                           -0.9, 0.6,  1.4,  2.1,  2.9,  3.6,  4.4,  5.1,  5.9,
                                           6.6,  7.4};
    for (double q : points) {
        const double truth = char_det(q);
        CHECK(interpolate(q) ==
              doctest::Approx(truth).epsilon(1e-8).scale(std::max(1.0, std::abs(truth))));
    }
}

TEST_CASE("growth exponents") {
    const auto q = eigenvalues();
    // sorted ascending, exact integer members exact
    CHECK(q[0] == doctest::Approx((1.0 - std::sqrt(137.0)) / 2.0).epsilon(1e-15));
    CHECK(q[1] == -4.0);
    CHECK(q[2] == 0.0);
    CHECK(q[3] == 1.0);
    CHECK(q[4] == 5.0);
    CHECK(q[5] == doctest::Approx((1.0 + std::sqrt(137.0)) / 2.0).epsilon(1e-15));

    int negative = 0;
    for (double v : q) negative += v < 0.0 ? 1 : 0;
    CHECK(negative == 2);
}

TEST_CASE("null directions satisfy the linear system") {
    for (double q : eigenvalues()) {
        const auto v = null_direction(q);
        CHECK(null_residual(q, v) < 1e-9);
    }
}

TEST_CASE("pinned null directions") {
    SUBCASE("q = -4: exact rational direction") {
        const auto v = null_direction(-4.0);
        CHECK(v[0] == 9.0);
        CHECK(v[1] == 5.0);
        CHECK(v[2] == -27.0);
        CHECK(v[3] == -135.0);
    }
    SUBCASE("q = 5: pure volume-shift mode") {
        const auto v = null_direction(5.0);
        CHECK(v[0] == 0.0);
        CHECK(v[1] == 1.0);
        CHECK(v[2] == 0.0);
        CHECK(v[3] == 0.0);
    }
    SUBCASE("q = 0: neutral direction along the fixed-point family") {
        const auto v = null_direction(0.0);
        CHECK(v[0] == 0.0);
        CHECK(v[1] == 0.0);
        CHECK(v[2] == 1.0);
        CHECK(v[3] == 1.0);
    }
    SUBCASE("q = 1 matches the reference values after integer scaling") {
        const auto v = null_direction(1.0);
        CHECK(4.0 * v[0] == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(4.0 * v[1] == doctest::Approx(5.0).epsilon(1e-14));
        CHECK(4.0 * v[2] == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(4.0 * v[3] == doctest::Approx(-2.0).epsilon(1e-14));
    }
    SUBCASE("slow stable direction matches the reference table to 1e-3") {
        const auto v = null_direction((1.0 - std::sqrt(137.0)) / 2.0);
        CHECK(v[0] == doctest::Approx(-11.019).epsilon(1e-3));
        CHECK(v[1] == doctest::Approx(-5.3220).epsilon(1e-3));
        CHECK(v[2] == 1.0);
        CHECK(v[3] == doctest::Approx(17.529).epsilon(1e-3));
    }
    SUBCASE("fast unstable direction matches the reference table to 1e-3") {
        const auto v = null_direction((1.0 + std::sqrt(137.0)) / 2.0);
        CHECK(v[0] == doctest::Approx(0.68568).epsilon(1e-3));
        CHECK(v[1] == doctest::Approx(-2.5352).epsilon(1e-3));
        CHECK(v[2] == 1.0);
        CHECK(v[3] == doctest::Approx(-0.028525).epsilon(1e-3));
    }
}

TEST_CASE("null direction demands a singular matrix") {
    CHECK_THROWS_AS(null_direction(2.0), std::invalid_argument);
    CHECK_THROWS_AS(null_direction(-100.0), std::invalid_argument);
}

TEST_CASE("stable tangent plane") {
    const auto [s3, s6] = stable_directions();
    CHECK(s3.q == -4.0);
    CHECK(s6.q == doctest::Approx((1.0 - std::sqrt(137.0)) / 2.0).epsilon(1e-15));
    CHECK(null_residual(s3.q, s3.direction) < 1e-9);
    CHECK(null_residual(s6.q, s6.direction) < 1e-9);
}
