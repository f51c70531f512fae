/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "pcsim/degradation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pcsim {

void validate(const DegradationParams& params) {
    if (!(params.p >= 0.5))
        throw std::invalid_argument("degradation: p must be >= 0.5");
    const double p_max = params.allow_accelerating ? 2.0 : 1.0;
    if (!(params.p <= p_max))
        throw std::invalid_argument(
            params.allow_accelerating
                ? "degradation: accelerating p capped at 2.0"
                : "degradation: p above 1.0 requires allow_accelerating");
    if (params.lambda1 < 0.0 || params.lambda2 < 0.0)
        throw std::invalid_argument("degradation: lambda factors must be >= 0");
    if (!(params.rate_law.gamma > 0.0) && params.rate_law.kind != RateLaw::Kind::constant)
        throw std::invalid_argument("degradation: rate-law gamma must be > 0");
    if (params.rate_law.kind == RateLaw::Kind::constant && params.rate_law.gamma < 0.0)
        throw std::invalid_argument("degradation: constant rate must be >= 0");
}

double incremental_loss_const(double r, double p, double l_prev, double dt) {
    if (r < 0.0) throw std::invalid_argument("incremental loss: rate must be >= 0");
    if (l_prev < 0.0) throw std::invalid_argument("incremental loss: l_prev must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("incremental loss: dt must be > 0");
    const double inv_p = 1.0 / p;
    return std::pow(std::pow(r, inv_p) * dt + std::pow(l_prev, inv_p), p) - l_prev;
}

double incremental_loss_varying(std::span<const double> t, std::span<const double> r, double p,
                                double l_prev, const CycleWindow& window) {
    if (t.size() != r.size() || t.size() < 2)
        throw std::invalid_argument("incremental loss: need matching t/r samples (>= 2)");
    if (!(window.t_end > window.t_start))
        throw std::invalid_argument("incremental loss: window must have t_end > t_start");
    constexpr double tol = 1e-9;
    if (std::abs(t.front() - window.t_start) > tol || std::abs(t.back() - window.t_end) > tol)
        throw std::invalid_argument("incremental loss: rate signal must span the cycle window");
    if (l_prev < 0.0) throw std::invalid_argument("incremental loss: l_prev must be >= 0");

    const double inv_p = 1.0 / p;
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        if (r[k] < 0.0 || r[k + 1] < 0.0)
            throw std::invalid_argument("incremental loss: negative rate sample at index " +
                                        std::to_string(r[k] < 0.0 ? k : k + 1));
        if (!(t[k + 1] >= t[k]))
            throw std::invalid_argument("incremental loss: time samples must be nondecreasing");
        integral +=
            0.5 * (std::pow(r[k], inv_p) + std::pow(r[k + 1], inv_p)) * (t[k + 1] - t[k]);
    }
    return std::pow(integral + std::pow(l_prev, inv_p), p) - l_prev;
}

DegradationState apply_cycle(const DegradationState& state, double delta_l,
                             const DegradationParams& params) {
    if (delta_l < 0.0) throw std::invalid_argument("apply_cycle: delta_l must be >= 0");
    DegradationState next = state;
    next.cycle += 1;
    next.l_total += delta_l;
    next.g_total = params.lambda1 * next.l_total + params.lambda2 * next.cycle;
    return next;
}

double rate_from_current(double gamma1, double i_ss) {
    if (!(gamma1 > 0.0)) throw std::invalid_argument("rate_from_current: gamma1 must be > 0");
    return gamma1 * std::abs(i_ss);
}

double rate_from_dod(double gamma2, double z_min) {
    if (!(gamma2 > 0.0)) throw std::invalid_argument("rate_from_dod: gamma2 must be > 0");
    if (z_min < 0.0) throw std::invalid_argument("rate_from_dod: z_min must be >= 0");
    return gamma2 / (z_min + 1.0);
}

}  // namespace pcsim
