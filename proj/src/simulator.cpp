/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "pcsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pcsim {

void validate(const Protocol& protocol) {
    if (protocol.cycles < 1) throw std::invalid_argument("protocol: cycle count must be >= 1");
    if (protocol.phases.empty()) throw std::invalid_argument("protocol: no phases");
    for (const Phase& phase : protocol.phases) {
        if (const auto* cc = std::get_if<CcPhase>(&phase)) {
            if (!cc->v_limit && !cc->duration)
                throw std::invalid_argument("protocol: cc phase needs v_limit or duration");
            if (cc->duration && !(*cc->duration > 0.0))
                throw std::invalid_argument("protocol: cc duration must be > 0");
        } else if (const auto* cv = std::get_if<CvPhase>(&phase)) {
            if (!(cv->i_cutoff > 0.0))
                throw std::invalid_argument("protocol: cv cutoff must be > 0");
        } else if (const auto* rest = std::get_if<RestPhase>(&phase)) {
            if (!(rest->duration > 0.0))
                throw std::invalid_argument("protocol: rest duration must be > 0");
        }
    }
}

const char* to_string(PhaseKind kind) {
    switch (kind) {
        case PhaseKind::cc: return "cc";
        case PhaseKind::cv: return "cv";
        case PhaseKind::rest: return "rest";
    }
    return "?";
}

namespace {

// Tabulated curves are only defined on [0, 1]; sub-guard integration
// overshoot is evaluated at the clamped boundary instead of faulting.
double eval_clamped(const OcvCurve& curve, double z) {
    if (const auto* tab = std::get_if<TabulatedOcv>(&curve))
        return tab->eval(std::clamp(z, tab->z_min(), tab->z_max()));
    return std::get<AffineOcv>(curve).eval(z);
}

void check_guard(SocPair z, bool enforce, double tol, double t) {
    if (!enforce) return;
    if (z.z1 < -tol || z.z1 > 1.0 + tol || z.z2 < -tol || z.z2 > 1.0 + tol)
        throw protocol_fault("SOC left [0,1] guard band at t=" + std::to_string(t) +
                             " (z1=" + std::to_string(z.z1) + ", z2=" + std::to_string(z.z2) +
                             "); protocol is missing a termination condition");
}

SocPair advance(SocPair z, const NonlinearSystem& sys, const StepCurrents& c, double dt) {
    return {z.z1 - dt * c.i1 / sys.cell1.q, z.z2 - dt * c.i2 / sys.cell2.q};
}

}  // namespace

StepCurrents cc_currents(const NonlinearSystem& sys, SocPair z, double i_applied) {
    const double u1 = eval_clamped(sys.ocv1, z.z1);
    const double u2 = eval_clamped(sys.ocv2, z.z2);
    const double du = u2 - u1;
    const double rt = sys.cell1.r + sys.cell2.r;
    StepCurrents out{};
    out.i1 = (-du + sys.cell2.r * i_applied) / rt;
    out.i2 = (+du + sys.cell1.r * i_applied) / rt;
    out.v_t = u1 - out.i1 * sys.cell1.r;
    return out;
}

StepCurrents cv_currents(const NonlinearSystem& sys, SocPair z, double v_set) {
    const double u1 = eval_clamped(sys.ocv1, z.z1);
    const double u2 = eval_clamped(sys.ocv2, z.z2);
    StepCurrents out{};
    out.i1 = (u1 - v_set) / sys.cell1.r;
    out.i2 = (u2 - v_set) / sys.cell2.r;
    out.v_t = v_set;
    return out;
}

SimState step_cc(const SimState& state, const NonlinearSystem& sys, double i_applied, double dt,
                 bool enforce_guard, double guard_tol) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    const StepCurrents c = cc_currents(sys, state.z, i_applied);
    SimState next{state.t + dt, advance(state.z, sys, c, dt)};
    check_guard(next.z, enforce_guard, guard_tol, next.t);
    return next;
}

SimState step_cv(const SimState& state, const NonlinearSystem& sys, double v_set, double dt,
                 bool enforce_guard, double guard_tol) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    const StepCurrents c = cv_currents(sys, state.z, v_set);
    SimState next{state.t + dt, advance(state.z, sys, c, dt)};
    check_guard(next.z, enforce_guard, guard_tol, next.t);
    return next;
}

Trace run(const SimConfig& config) {
    validate(config.system.cell1);
    validate(config.system.cell2);
    validate(config.protocol);
    if (!(config.dt > 0.0)) throw std::invalid_argument("sim: dt must be > 0");
    if (config.initial_soc.z1 < 0.0 || config.initial_soc.z1 > 1.0 ||
        config.initial_soc.z2 < 0.0 || config.initial_soc.z2 > 1.0)
        throw std::invalid_argument("sim: initial SOC must lie in [0,1]");

    const NonlinearSystem& sys = config.system;
    Trace trace;
    SimState state{0.0, config.initial_soc};

    for (int cycle = 1; cycle <= config.protocol.cycles; ++cycle) {
        for (std::size_t pi = 0; pi < config.protocol.phases.size(); ++pi) {
            const Phase& phase = config.protocol.phases[pi];
            const double t0 = state.t;
            const PhaseKind kind = std::holds_alternative<CcPhase>(phase) ? PhaseKind::cc
                                   : std::holds_alternative<CvPhase>(phase) ? PhaseKind::cv
                                                                            : PhaseKind::rest;
            for (std::uint64_t n = 0;; ++n) {
                const double elapsed = static_cast<double>(n) * config.dt;
                state.t = t0 + elapsed;

                StepCurrents c{};
                bool stop = false;
                if (kind == PhaseKind::cc) {
                    const auto& cc = std::get<CcPhase>(phase);
                    c = cc_currents(sys, state.z, cc.current);
                    if (cc.v_limit) {
                        if (cc.current < 0.0 && c.v_t >= *cc.v_limit) stop = true;  // charge
                        if (cc.current > 0.0 && c.v_t <= *cc.v_limit) stop = true;  // discharge
                    }
                    if (cc.duration && elapsed >= *cc.duration) stop = true;
                } else if (kind == PhaseKind::cv) {
                    const auto& cv = std::get<CvPhase>(phase);
                    c = cv_currents(sys, state.z, cv.v_set);
                    if (std::abs(c.i1 + c.i2) <= cv.i_cutoff) stop = true;
                } else {
                    const auto& rest = std::get<RestPhase>(phase);
                    c = cc_currents(sys, state.z, 0.0);
                    if (elapsed >= rest.duration) stop = true;
                }

                trace.samples.push_back(
                    {state.t, state.z.z1, state.z.z2, c.i1, c.i2, c.v_t, cycle, kind});
                if (stop) break;
                if (elapsed >= config.max_phase_duration)
                    throw phase_timeout("phase " + std::to_string(pi + 1) + " (" +
                                        to_string(kind) + ") of cycle " + std::to_string(cycle) +
                                        " did not reach its stop condition within " +
                                        std::to_string(config.max_phase_duration) + " s");

                state.z = advance(state.z, sys, c, config.dt);
                check_guard(state.z, config.enforce_soc_guard, config.guard_tol,
                            state.t + config.dt);
            }
        }
    }
    return trace;
}

namespace {

double point_segment_dist2(double px, double py, double ax, double ay, double bx, double by) {
    const double abx = bx - ax;
    const double aby = by - ay;
    const double len2 = abx * abx + aby * aby;
    double s = 0.0;
    if (len2 > 0.0) s = std::clamp(((px - ax) * abx + (py - ay) * aby) / len2, 0.0, 1.0);
    const double dx = px - (ax + s * abx);
    const double dy = py - (ay + s * aby);
    return dx * dx + dy * dy;
}

double directed_hausdorff(const std::vector<std::array<double, 2>>& a,
                          const std::vector<std::array<double, 2>>& b) {
    double worst = 0.0;
    for (const auto& p : a) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k + 1 < b.size(); ++k) {
            best = std::min(best, point_segment_dist2(p[0], p[1], b[k][0], b[k][1], b[k + 1][0],
                                                      b[k + 1][1]));
            if (best == 0.0) break;
        }
        if (b.size() == 1) {
            const double dx = p[0] - b[0][0];
            const double dy = p[1] - b[0][1];
            best = dx * dx + dy * dy;
        }
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

}  // namespace

OrbitAnalysis phase_orbit(const Trace& trace) {
    OrbitAnalysis out;
    std::int32_t max_cycle = 0;
    for (const auto& s : trace.samples) max_cycle = std::max(max_cycle, s.cycle);
    if (max_cycle < 2)
        throw std::invalid_argument("phase_orbit: trace must contain at least 2 complete cycles");

    out.loops.resize(static_cast<std::size_t>(max_cycle));
    for (const auto& s : trace.samples)
        out.loops[static_cast<std::size_t>(s.cycle - 1)].push_back({s.z1, s.z2});

    // Decimate long loops; the closure metric uses point-to-segment
    // distances so the polyline chords keep it accurate.
    constexpr std::size_t max_points = 1500;
    std::vector<std::vector<std::array<double, 2>>> dec(out.loops.size());
    for (std::size_t c = 0; c < out.loops.size(); ++c) {
        const auto& loop = out.loops[c];
        const std::size_t stride = std::max<std::size_t>(1, loop.size() / max_points);
        for (std::size_t k = 0; k < loop.size(); k += stride) dec[c].push_back(loop[k]);
        if (!loop.empty() && dec[c].back() != loop.back()) dec[c].push_back(loop.back());
    }
    for (std::size_t c = 0; c + 1 < dec.size(); ++c)
        out.closure.push_back(
            std::max(directed_hausdorff(dec[c], dec[c + 1]), directed_hausdorff(dec[c + 1], dec[c])));
    return out;
}

double conservation_residual(const Trace& trace, const CellParams& cell1,
                             const CellParams& cell2) {
    if (trace.samples.size() < 2) return 0.0;
    double integral = 0.0;
    double throughput = 0.0;
    for (std::size_t k = 0; k + 1 < trace.samples.size(); ++k) {
        const auto& a = trace.samples[k];
        const double w = trace.samples[k + 1].t - a.t;
        integral += (a.i1 + a.i2) * w;
        throughput += std::abs(a.i1 + a.i2) * w;
    }
    const auto& first = trace.samples.front();
    const auto& last = trace.samples.back();
    const double stored = cell1.q * (first.z1 - last.z1) + cell2.q * (first.z2 - last.z2);
    const double scale = std::max({throughput, std::abs(stored), 1e-30});
    return std::abs(integral - stored) / scale;
}

double voltage_residual(const Trace& trace, const NonlinearSystem& system) {
    double worst = 0.0;
    for (const auto& s : trace.samples) {
        const double v1 = eval_clamped(system.ocv1, s.z1) - s.i1 * system.cell1.r;
        const double v2 = eval_clamped(system.ocv2, s.z2) - s.i2 * system.cell2.r;
        worst = std::max(worst, std::abs(v1 - v2));
    }
    return worst;
}

}  // namespace pcsim
