/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
// Independent numerical oracles used by the tests. These integrate the
// raw branch-current circuit equations directly and never call the
// closed-form or stepping code under test.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

struct TwoCellOde {
    double q1, q2, r1, r2;
    std::function<double(double)> u1, u2;

    std::array<double, 2> rhs(const std::array<double, 2>& z, double i_app) const {
        const double du = u2(z[1]) - u1(z[0]);
        const double rt = r1 + r2;
        const double i1 = (-du + r2 * i_app) / rt;
        const double i2 = (+du + r1 * i_app) / rt;
        return {-i1 / q1, -i2 / q2};
    }
};

inline std::array<double, 2> rk4_step(const TwoCellOde& f, const std::array<double, 2>& z,
                                      double i_app, double dt) {
    const auto k1 = f.rhs(z, i_app);
    const auto k2 = f.rhs({z[0] + 0.5 * dt * k1[0], z[1] + 0.5 * dt * k1[1]}, i_app);
    const auto k3 = f.rhs({z[0] + 0.5 * dt * k2[0], z[1] + 0.5 * dt * k2[1]}, i_app);
    const auto k4 = f.rhs({z[0] + dt * k3[0], z[1] + dt * k3[1]}, i_app);
    return {z[0] + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            z[1] + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

inline std::array<double, 2> rk4_integrate(const TwoCellOde& f, std::array<double, 2> z,
                                           double i_app, double dt, double t_end) {
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    for (std::size_t k = 0; k < steps; ++k) z = rk4_step(f, z, i_app, dt);
    return z;
}

/// Runs RK4 alongside a closed-form reference, returning the largest
/// per-component SOC deviation seen at any step.
inline double rk4_max_error(const TwoCellOde& f, std::array<double, 2> z0, double i_app,
                            double dt, double t_end,
                            const std::function<std::array<double, 2>(double)>& reference) {
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    std::array<double, 2> z = z0;
    double worst = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        z = rk4_step(f, z, i_app, dt);
        const auto ref = reference(static_cast<double>(k) * dt);
        worst = std::max({worst, std::abs(z[0] - ref[0]), std::abs(z[1] - ref[1])});
    }
    return worst;
}

struct ParamDraw {
    double q1, q2, r1, r2, alpha, beta, z1_0, z2_0, i_app;
};

inline ParamDraw draw_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> q_ah(1.5, 6.0), r_ohm(0.03, 0.3), a(0.5, 1.5),
        z(0.1, 0.9), i(-5.0, 5.0);
    return {q_ah(rng) * 3600.0, q_ah(rng) * 3600.0, r_ohm(rng), r_ohm(rng),
            a(rng),             3.0,                z(rng),     z(rng),     i(rng)};
}

}  // namespace oracle
