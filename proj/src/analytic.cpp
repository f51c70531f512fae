/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "pcsim/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace pcsim {

void validate(const CellParams& cell) {
    if (!(cell.q > 0.0) || !std::isfinite(cell.q))
        throw std::invalid_argument("cell capacity must be > 0");
    if (!(cell.r > 0.0) || !std::isfinite(cell.r))
        throw std::invalid_argument("cell resistance must be > 0");
}

void validate(const AffineSystem& system) {
    validate(system.cell1);
    validate(system.cell2);
}

AffineDerived derived(const AffineSystem& s) {
    const double tau = s.r_tot() / s.ocv.alpha * (s.cell1.q * s.cell2.q / s.q_tot());
    const double kappa =
        (s.cell2.r * s.cell2.q - s.cell1.r * s.cell1.q) / (s.ocv.alpha * s.q_tot());
    return {tau, kappa};
}

SocPair soc_trajectory(const AffineSystem& s, SocPair z0, double i_applied, double t) {
    // Split into the conserved weighted sum y = q1 z1 + q2 z2 (which
    // integrates the applied current) and the relaxing imbalance.
    const double y = s.cell1.q * z0.z1 + s.cell2.q * z0.z2 - i_applied * t;
    const double dz = soc_imbalance(s, z0.z2 - z0.z1, i_applied, t);
    const double z1 = (y - s.cell2.q * dz) / s.q_tot();
    const double z2 = (y + s.cell1.q * dz) / s.q_tot();
    return {z1, z2};
}

double soc_imbalance(const AffineSystem& s, double dz0, double i_applied, double t) {
    const auto [tau, kappa] = derived(s);
    const double decay = std::exp(-t / tau);
    return dz0 * decay + kappa * (1.0 - decay) * i_applied;
}

BranchSolution branch_currents(const AffineSystem& s, SocPair z0, double i_applied, double t) {
    const double dz = soc_imbalance(s, z0.z2 - z0.z1, i_applied, t);
    const double rt = s.r_tot();
    const double rebalance = s.ocv.alpha / rt * dz;
    BranchSolution out{};
    out.i1_rebalance = -rebalance;
    out.i2_rebalance = +rebalance;
    out.i1_ohmic = s.cell2.r / rt * i_applied;
    out.i2_ohmic = s.cell1.r / rt * i_applied;
    out.i1 = out.i1_rebalance + out.i1_ohmic;
    out.i2 = i_applied - out.i1;  // Kirchhoff, exact
    const SocPair z = soc_trajectory(s, z0, i_applied, t);
    out.terminal_voltage = s.ocv.eval(z.z1) - out.i1 * s.cell1.r;
    return out;
}

double current_imbalance(const AffineSystem& s, double dz0, double i_applied, double t) {
    const double dz = soc_imbalance(s, dz0, i_applied, t);
    return 2.0 * s.ocv.alpha / s.r_tot() * dz - s.dr() / s.r_tot() * i_applied;
}

CvSolution cv_solution(const AffineSystem& s, SocPair z0_cv, double t) {
    const double tau1 = s.cell1.q * s.cell1.r / s.ocv.alpha;
    const double tau2 = s.cell2.q * s.cell2.r / s.ocv.alpha;
    CvSolution out{};
    out.z1 = 1.0 + (z0_cv.z1 - 1.0) * std::exp(-t / tau1);
    out.z2 = 1.0 + (z0_cv.z2 - 1.0) * std::exp(-t / tau2);
    out.i1 = s.ocv.alpha / s.cell1.r * (out.z1 - 1.0);
    out.i2 = s.ocv.alpha / s.cell2.r * (out.z2 - 1.0);
    return out;
}

SteadyState steady_state(const AffineSystem& s, double i_applied) {
    const auto [tau, kappa] = derived(s);
    (void)tau;
    return {kappa * i_applied, s.dq() / s.q_tot() * i_applied};
}

MaxImbalance max_imbalance(const AffineSystem& s, double dz0, double i_applied) {
    const auto ss = steady_state(s, i_applied);
    const double di0 = 2.0 * s.ocv.alpha / s.r_tot() * dz0;
    return {std::max(std::abs(dz0), std::abs(ss.dz_ss)),
            std::max(std::abs(di0), std::abs(ss.di_ss))};
}

std::vector<SweepPoint> sweep_steady_state(const CellParams& cell2,
                                           std::span<const double> q_ratios,
                                           std::span<const double> r_ratios, double i_applied,
                                           double alpha, unsigned workers) {
    validate(cell2);
    if (q_ratios.empty() || r_ratios.empty())
        throw std::invalid_argument("sweep: ratio grids must be non-empty");
    for (double q : q_ratios)
        if (!(q > 0.0)) throw std::invalid_argument("sweep: q_ratio must be > 0");
    for (double r : r_ratios)
        if (!(r > 0.0)) throw std::invalid_argument("sweep: r_ratio must be > 0");

    std::vector<SweepPoint> grid(q_ratios.size() * r_ratios.size());
    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const double q_ratio = q_ratios[idx / r_ratios.size()];
            const double r_ratio = r_ratios[idx % r_ratios.size()];
            const CellParams cell1{cell2.q / q_ratio, cell2.r / r_ratio};
            const AffineSystem system{cell1, cell2, AffineOcv(alpha, 1.0)};
            const auto ss = steady_state(system, i_applied);
            grid[idx] = {q_ratio,           r_ratio, ss.dz_ss, ss.di_ss, ss.di_ss < 0.0,
                         ss.dz_ss > 0.0};
        }
    };

    workers = std::max(1u, workers);
    if (workers == 1 || grid.size() < 2 * workers) {
        fill(0, grid.size());
        return grid;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (grid.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(grid.size(), begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(fill, begin, end);
    }
    for (auto& th : pool) th.join();
    return grid;
}

}  // namespace pcsim
