#include "javelin/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace javelin {

std::array<std::array<double, 4>, 4> linearization_matrix(double q) {
    return {{
        {-12.0, 0.0, 6.0, -(2.0 + q) * (3.0 + q)},
        {-12.0, 0.0, (q - 4.0) * (q - 3.0), -12.0},
        {-3.0 * (4.0 + q), 0.0, 2.0 * (4.0 + q), -2.0 * (4.0 + q)},
        {-5.0, 5.0 - q, 0.0, 0.0},
    }};
}

double char_det(double q) {
    // 3 q (q - 1) (q + 4) (q - 5) (q^2 - q - 34), expanded so the evaluation
    // is a plain polynomial: 3q^6 - 9q^5 - 153q^4 + 321q^3 + 1878q^2 - 2040q.
    return q * (q * (q * (q * (q * (3.0 * q - 9.0) - 153.0) + 321.0) + 1878.0) - 2040.0);
}

std::array<double, 6> eigenvalues() {
    const double r = std::sqrt(137.0);
    std::array<double, 6> q = {(1.0 - r) / 2.0, -4.0, 0.0, 1.0, 5.0, (1.0 + r) / 2.0};
    std::sort(q.begin(), q.end());
    return q;
}

std::array<double, 4> null_direction(double q) {
    if (std::abs(char_det(q)) > 1e-6 * std::max(1.0, std::pow(std::abs(q), 6))) {
        throw std::invalid_argument("linearization matrix is not singular at q = " +
                                    std::to_string(q));
    }
    if (q == -4.0) {
        // The third row vanishes identically at q = -4; the remaining rows
        // have the exact rational null vector (9, 5, -27, -135) (d_Phi = -27).
        return {9.0, 5.0, -27.0, -135.0};
    }
    if (q == 5.0) {
        // Pure volume-shift mode: only the beta equation is active.
        return {0.0, 1.0, 0.0, 0.0};
    }
    // Generic case from rows 1, 3, 4 with the convention d_Phi = 1.
    const double d_Phi = 1.0;
    const double d_zeta = 2.0 / (2.0 - 5.0 * q - q * q);
    const double d_alpha = (2.0 * d_Phi - 2.0 * d_zeta) / 3.0;
    const double d_beta = 5.0 * d_alpha / (5.0 - q);
    return {d_alpha, d_beta, d_Phi, d_zeta};
}

double null_residual(double q, const std::array<double, 4>& v) {
    const auto M = linearization_matrix(q);
    double worst = 0.0;
    for (const auto& row : M) {
        double acc = 0.0;
        for (std::size_t j = 0; j < 4; ++j) acc += row[j] * v[j];
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

std::pair<EigenPair, EigenPair> stable_directions() {
    const double q6 = (1.0 - std::sqrt(137.0)) / 2.0;
    EigenPair s3{-4.0, null_direction(-4.0)};
    EigenPair s6{q6, null_direction(q6)};
    return {s3, s6};
}

}  // namespace javelin
