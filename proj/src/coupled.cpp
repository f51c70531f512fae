/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "pcsim/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pcsim {

void validate(const AgingConfig& config) {
    validate(config.cell1);
    validate(config.cell2);
    validate(config.deg1);
    validate(config.deg2);
    if (config.q_min < 0.0) throw std::invalid_argument("aging: q_min must be >= 0");
    if (config.max_cycles < 1) throw std::invalid_argument("aging: max_cycles must be >= 1");
    if (config.mode == AgingMode::fast && !(config.i_applied != 0.0))
        throw std::invalid_argument("aging: fast mode needs a nonzero applied current");
    if (config.mode == AgingMode::high_fidelity && !config.hifi)
        throw std::invalid_argument("aging: high-fidelity mode needs a hifi block");
}

const char* to_string(TrendVerdict verdict) {
    switch (verdict) {
        case TrendVerdict::converging: return "converging";
        case TrendVerdict::diverging: return "diverging";
        case TrendVerdict::neutral: return "neutral";
    }
    return "?";
}

namespace {

struct CycleInputs {
    double i_ss1 = 0.0, i_ss2 = 0.0;
    double z_min1 = 0.0, z_min2 = 0.0;
    double loss_window = 0.0;  // s
    SocPair carry{1.0, 1.0};   // hifi: state at end of cycle
};

// Fast mode: steady-state branch currents of the affine system and
// end-of-discharge SOCs of a full drain started from (1,1), floored at
// zero. The drain duration tracks the current capacities.
CycleInputs fast_inputs(const AgingConfig& cfg, double q1, double q2, double r1, double r2,
                        double loss_window) {
    CycleInputs in;
    in.loss_window = loss_window;
    const double i_mag = std::abs(cfg.i_applied);
    const double q_tot = q1 + q2;
    if (q_tot <= 0.0) return in;
    if (q1 > 0.0 && q2 > 0.0) {
        in.i_ss1 = q1 / q_tot * i_mag;
        in.i_ss2 = q2 / q_tot * i_mag;
        const AffineSystem sys{{q1, r1}, {q2, r2}, cfg.affine};
        const double t_d = q_tot / i_mag;
        const SocPair z_end = soc_trajectory(sys, {1.0, 1.0}, i_mag, t_d);
        in.z_min1 = std::max(z_end.z1, 0.0);
        in.z_min2 = std::max(z_end.z2, 0.0);
    } else if (q1 > 0.0) {
        in.i_ss1 = i_mag;
    } else if (q2 > 0.0) {
        in.i_ss2 = i_mag;
    }
    return in;
}

CycleInputs hifi_inputs(const AgingConfig& cfg, double q1, double q2, double r1, double r2,
                        SocPair z_start) {
    SimConfig sc;
    sc.system = {{q1, r1}, {q2, r2}, cfg.hifi->ocv1, cfg.hifi->ocv2};
    sc.dt = cfg.hifi->dt;
    sc.protocol = {cfg.hifi->protocol.phases, 1};
    sc.initial_soc = z_start;
    const Trace trace = run(sc);

    CycleInputs in;
    in.z_min1 = 1.0;
    in.z_min2 = 1.0;
    for (const auto& s : trace.samples) {
        in.i_ss1 = std::max(in.i_ss1, std::abs(s.i1));
        in.i_ss2 = std::max(in.i_ss2, std::abs(s.i2));
        in.z_min1 = std::min(in.z_min1, s.z1);
        in.z_min2 = std::min(in.z_min2, s.z2);
    }
    in.z_min1 = std::max(in.z_min1, 0.0);
    in.z_min2 = std::max(in.z_min2, 0.0);
    in.loss_window = trace.samples.back().t - trace.samples.front().t;
    in.carry = {trace.samples.back().z1, trace.samples.back().z2};
    return in;
}

double rate_for(const DegradationParams& deg, double i_input, double z_min, bool alive) {
    if (!alive) return 0.0;
    switch (deg.rate_law.kind) {
        case RateLaw::Kind::current: return rate_from_current(deg.rate_law.gamma, i_input);
        case RateLaw::Kind::dod: return rate_from_dod(deg.rate_law.gamma, z_min);
        case RateLaw::Kind::constant: return deg.rate_law.gamma;
    }
    return 0.0;
}

AgingTrace run_loop(const AgingConfig& cfg, std::optional<double> control_current) {
    validate(cfg);
    if (control_current &&
        (cfg.deg1.rate_law.kind == RateLaw::Kind::dod ||
         cfg.deg2.rate_law.kind == RateLaw::Kind::dod))
        throw std::invalid_argument("control run: dod rate law has no control-current analogue");

    const double q1_0 = cfg.cell1.q;
    const double q2_0 = cfg.cell2.q;
    const double i_mag = std::abs(cfg.i_applied);
    // Loss-integration window implied by the nominal C-rate; kept at
    // its initial-capacity value so every cycle books the same span.
    const double fast_window = cfg.mode == AgingMode::fast ? (q1_0 + q2_0) / i_mag : 0.0;

    DegradationState st1, st2;
    SocPair carry = cfg.hifi ? cfg.hifi->initial_soc : SocPair{1.0, 1.0};
    AgingTrace trace;
    trace.records.reserve(std::min(cfg.max_cycles, 1 << 20));

    for (int n = 1; n <= cfg.max_cycles; ++n) {
        const double q1 = std::max(q1_0 - st1.l_total, 0.0);
        const double q2 = std::max(q2_0 - st2.l_total, 0.0);
        const double r1 = cfg.cell1.r + st1.g_total;
        const double r2 = cfg.cell2.r + st2.g_total;

        CycleInputs in = cfg.mode == AgingMode::fast
                             ? fast_inputs(cfg, q1, q2, r1, r2, fast_window)
                             : hifi_inputs(cfg, q1, q2, r1, r2, carry);
        carry = in.carry;

        const double i_in1 = control_current ? std::abs(*control_current) : in.i_ss1;
        const double i_in2 = control_current ? std::abs(*control_current) : in.i_ss2;
        const double rate1 = rate_for(cfg.deg1, i_in1, in.z_min1, q1 > 0.0);
        const double rate2 = rate_for(cfg.deg2, i_in2, in.z_min2, q2 > 0.0);

        double dl1 = rate1 > 0.0
                         ? incremental_loss_const(rate1, cfg.deg1.p, st1.l_total, in.loss_window)
                         : 0.0;
        double dl2 = rate2 > 0.0
                         ? incremental_loss_const(rate2, cfg.deg2.p, st2.l_total, in.loss_window)
                         : 0.0;
        dl1 = std::min(dl1, q1);  // cannot lose more than remains
        dl2 = std::min(dl2, q2);
        st1 = apply_cycle(st1, dl1, cfg.deg1);
        st2 = apply_cycle(st2, dl2, cfg.deg2);

        AgingRecord rec{};
        rec.cycle = n;
        rec.q1 = std::max(q1_0 - st1.l_total, 0.0);
        rec.q2 = std::max(q2_0 - st2.l_total, 0.0);
        rec.r1 = cfg.cell1.r + st1.g_total;
        rec.r2 = cfg.cell2.r + st2.g_total;
        rec.rate1 = rate1;
        rec.rate2 = rate2;
        rec.delta_l1 = dl1;
        rec.delta_l2 = dl2;
        rec.i_ss1 = in.i_ss1;
        rec.i_ss2 = in.i_ss2;
        rec.z_min1 = in.z_min1;
        rec.z_min2 = in.z_min2;

        if (!std::isfinite(rec.q1) || !std::isfinite(rec.q2) || !std::isfinite(rec.r1) ||
            !std::isfinite(rec.r2) || !std::isfinite(dl1) || !std::isfinite(dl2))
            throw std::runtime_error("aging: non-finite update at cycle " + std::to_string(n));

        trace.records.push_back(rec);

        if (!trace.floor_cycle1 && rec.q1 <= cfg.q_min) trace.floor_cycle1 = n;
        if (!trace.floor_cycle2 && rec.q2 <= cfg.q_min) trace.floor_cycle2 = n;
        const bool stop = cfg.stop_at_first_floor
                              ? (trace.floor_cycle1 || trace.floor_cycle2)
                              : (trace.floor_cycle1 && trace.floor_cycle2);
        if (stop) {
            trace.termination = AgingTermination::capacity_floor;
            return trace;
        }
    }
    trace.termination = AgingTermination::max_cycles;
    return trace;
}

}  // namespace

AgingTrace run_aging(const AgingConfig& config) { return run_loop(config, std::nullopt); }

AgingTrace control_run(const AgingConfig& config, double fixed_current) {
    return run_loop(config, fixed_current);
}

ConvergenceMetrics convergence_metrics(const AgingTrace& trace, int trailing_window) {
    const std::size_t n = trace.records.size();
    if (n < 2)
        throw std::invalid_argument("convergence_metrics: need at least 2 recorded cycles");
    ConvergenceMetrics out;
    out.abs_dq.reserve(n);
    out.q_ratio.reserve(n);
    out.r_ratio.reserve(n);
    std::vector<double> abs_dr;
    abs_dr.reserve(n);
    for (const auto& rec : trace.records) {
        out.abs_dq.push_back(std::abs(rec.q2 - rec.q1));
        abs_dr.push_back(std::abs(rec.r2 - rec.r1));
        out.q_ratio.push_back(rec.q1 != 0.0 ? rec.q2 / rec.q1 : 0.0);
        out.r_ratio.push_back(rec.r1 != 0.0 ? rec.r2 / rec.r1 : 0.0);
    }

    const auto verdict = [&](const std::vector<double>& metric) {
        const std::size_t w =
            std::min<std::size_t>(std::max(trailing_window, 1), metric.size() - 1);
        const double slope = metric.back() - metric[metric.size() - 1 - w];
        const double tol = 1e-12 * std::max(1.0, std::abs(metric.back()));
        if (std::abs(slope) <= tol) return TrendVerdict::neutral;
        return slope < 0.0 ? TrendVerdict::converging : TrendVerdict::diverging;
    };
    out.capacity = verdict(out.abs_dq);
    out.resistance = verdict(abs_dr);
    out.cycles_to_floor1 = trace.floor_cycle1;
    out.cycles_to_floor2 = trace.floor_cycle2;
    return out;
}

}  // namespace pcsim
