/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <span>

namespace pcsim {

/// How the per-cycle reaction rate is coupled to the intra-cycle
/// dynamics. `gamma` is the proportionality constant of the selected
/// law (or the fixed rate itself for `constant`).
struct RateLaw {
    enum class Kind { current, dod, constant };
    Kind kind = Kind::constant;
    double gamma = 1.0;
};

/// Parameters of the incremental SEI-style loss model. p spans 0.5
/// (diffusion-limited) to 1.0 (reaction-limited); values above 1.0
/// model accelerating fade and must be opted into explicitly.
struct DegradationParams {
    double p = 0.5;
    double lambda1 = 0.0;  // Ohm per amp-second of loss
    double lambda2 = 0.0;  // Ohm per cycle
    RateLaw rate_law;
    bool allow_accelerating = false;
};

void validate(const DegradationParams& params);

/// Cumulative degradation of one cell: capacity lost (amp-seconds,
/// nondecreasing) and resistance growth (ohms), with the completed
/// cycle count.
struct DegradationState {
    double l_total = 0.0;
    double g_total = 0.0;
    int cycle = 0;
};

struct CycleWindow {
    double t_start;
    double t_end;
};

/// Incremental loss over one cycle of duration dt at constant reaction
/// rate r, continuing from cumulative loss l_prev:
///   (r^(1/p) dt + l_prev^(1/p))^p - l_prev.
/// Chaining these updates reproduces r * t^p with no inter-cycle jump.
double incremental_loss_const(double r, double p, double l_prev, double dt);

/// Time-varying-rate form: the rate signal (t[i], r[i]) must span the
/// cycle window; the integral of r^(1/p) is taken by the trapezoid
/// rule on the given grid.
double incremental_loss_varying(std::span<const double> t, std::span<const double> r, double p,
                                double l_prev, const CycleWindow& window);

/// Books one cycle's loss into the state: l_total accumulates,
/// g_total = lambda1 * l_total + lambda2 * cycles.
DegradationState apply_cycle(const DegradationState& state, double delta_l,
                             const DegradationParams& params);

/// r = gamma1 * |i_ss|.
double rate_from_current(double gamma1, double i_ss);

/// r = gamma2 / (z_min + 1), largest at full depth of discharge.
double rate_from_dod(double gamma2, double z_min);

}  // namespace pcsim
