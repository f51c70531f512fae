/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <vector>

#include "pcsim/analytic.hpp"
#include "pcsim/degradation.hpp"
#include "pcsim/simulator.hpp"

namespace pcsim {

/// Intra-cycle model used by the aging loop.
///
/// fast: analytic steady-state values of the affine system drive the
/// rate laws; each cycle costs O(1). high_fidelity: the full nonlinear
/// simulator runs one protocol repetition per cycle and the rate
/// inputs (max branch current, min SOC) are read off the trace.
enum class AgingMode { fast, high_fidelity };

struct HighFidelityConfig {
    OcvCurve ocv1;
    OcvCurve ocv2;
    Protocol protocol;  // one cycle's phases; cycles field ignored
    double dt = 1.0;
    SocPair initial_soc{0.5, 0.5};
};

struct AgingConfig {
    CellParams cell1;
    CellParams cell2;
    AffineOcv affine{1.0, 3.0};  // fast-mode OCV
    DegradationParams deg1;
    DegradationParams deg2;
    double i_applied = 0.0;  // A, CC magnitude assumed by fast mode
    double q_min = 0.0;      // As, capacity floor
    int max_cycles = 1;
    AgingMode mode = AgingMode::fast;
    /// When false the loop continues (capacities floored at zero)
    /// until both cells have crossed q_min or max_cycles is hit, so
    /// both floor-crossing cycles are observable.
    bool stop_at_first_floor = true;
    std::optional<HighFidelityConfig> hifi;
};

void validate(const AgingConfig& config);

struct AgingRecord {
    int cycle;
    double q1, q2;        // As, at end of cycle
    double r1, r2;        // Ohm, at end of cycle
    double rate1, rate2;  // reaction rates used this cycle
    double delta_l1, delta_l2;
    double i_ss1, i_ss2;    // rate-law current inputs (current law)
    double z_min1, z_min2;  // rate-law SOC inputs (dod law)
};

enum class AgingTermination { capacity_floor, max_cycles };

struct AgingTrace {
    std::vector<AgingRecord> records;
    AgingTermination termination = AgingTermination::max_cycles;
    std::optional<int> floor_cycle1;
    std::optional<int> floor_cycle2;
};

/// Successive update scheme: intra-cycle imbalance feeds the per-cycle
/// degradation update, which feeds the next cycle's dynamics.
AgingTrace run_aging(const AgingConfig& config);

/// Decoupled baseline: the rate law is fed `fixed_current` instead of
/// the cell's own branch current, so each cell ages independently of
/// its partner. Only meaningful for the current and constant laws.
AgingTrace control_run(const AgingConfig& config, double fixed_current);

enum class TrendVerdict { converging, diverging, neutral };

const char* to_string(TrendVerdict verdict);

struct ConvergenceMetrics {
    std::vector<double> abs_dq;   // |q2 - q1| per recorded cycle
    std::vector<double> q_ratio;  // q2 / q1
    std::vector<double> r_ratio;  // r2 / r1
    TrendVerdict capacity = TrendVerdict::neutral;
    TrendVerdict resistance = TrendVerdict::neutral;
    std::optional<int> cycles_to_floor1;
    std::optional<int> cycles_to_floor2;
};

/// Trend verdicts from the sign of the |dQ| (and |dR|) slope over a
/// trailing window of cycles. Requires at least 2 recorded cycles.
ConvergenceMetrics convergence_metrics(const AgingTrace& trace, int trailing_window = 50);

}  // namespace pcsim
