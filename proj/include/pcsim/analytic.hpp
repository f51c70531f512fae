/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <span>
#include <vector>

#include "pcsim/ocv.hpp"

namespace pcsim {

/// Per-cell equivalent-circuit parameters in canonical units:
/// capacity in amp-seconds, resistance in ohms.
struct CellParams {
    double q;  // As, > 0
    double r;  // Ohm, > 0
};

void validate(const CellParams& cell);

/// Two cells in parallel behind a shared affine OCV.
///
/// Sign convention used throughout: applied current is positive on
/// discharge and dz/dt = -I_i / Q_i.
struct AffineSystem {
    CellParams cell1;
    CellParams cell2;
    AffineOcv ocv;

    double r_tot() const { return cell1.r + cell2.r; }
    double q_tot() const { return cell1.q + cell2.q; }
    double dr() const { return cell2.r - cell1.r; }
    double dq() const { return cell2.q - cell1.q; }
};

void validate(const AffineSystem& system);

/// Derived constants of the coupled SOC dynamics: tau is the
/// relaxation time constant of the imbalance, kappa the steady-state
/// SOC imbalance per ampere of applied current. kappa vanishes exactly
/// when q1*r1 == q2*r2 ("QR matching").
struct AffineDerived {
    double tau;    // s
    double kappa;  // 1/A
};

AffineDerived derived(const AffineSystem& system);

struct SocPair {
    double z1;
    double z2;
};

/// Closed-form SOC trajectories under constant applied current. The
/// solution is the unconstrained LTI response: SOCs are not clamped to
/// [0, 1]; protocol-level termination owns physical limits.
SocPair soc_trajectory(const AffineSystem& system, SocPair z0, double i_applied, double t);

/// dz(t) = dz0 * exp(-t/tau) + kappa * (1 - exp(-t/tau)) * I.
double soc_imbalance(const AffineSystem& system, double dz0, double i_applied, double t);

/// Branch currents split into the SOC-rebalancing component (driven by
/// the OCV difference) and the ohmic component (resistance divider of
/// the applied current). i1 + i2 == i_applied exactly.
struct BranchSolution {
    double i1;
    double i2;
    double i1_rebalance;
    double i1_ohmic;
    double i2_rebalance;
    double i2_ohmic;
    double terminal_voltage;
};

BranchSolution branch_currents(const AffineSystem& system, SocPair z0, double i_applied,
                               double t);

/// di(t) = i2 - i1 = (2 alpha / r_tot) dz(t) - (dr / r_tot) I.
double current_imbalance(const AffineSystem& system, double dz0, double i_applied, double t);

/// Constant-voltage hold at the set-point U(1) = alpha + beta. The
/// cells decouple: each SOC decays toward 1 with its own time constant
/// q_i * r_i / alpha and branch current (alpha / r_i) (z_i - 1).
struct CvSolution {
    double z1;
    double z2;
    double i1;
    double i2;
};

CvSolution cv_solution(const AffineSystem& system, SocPair z0_cv, double t);

struct SteadyState {
    double dz_ss;  // kappa * I
    double di_ss;  // (dq / q_tot) * I
};

SteadyState steady_state(const AffineSystem& system, double i_applied);

/// Envelope of the imbalance magnitudes under constant-current input:
/// the extremes sit at t = 0 or at steady state.
struct MaxImbalance {
    double max_abs_dz;
    double max_abs_di;
};

MaxImbalance max_imbalance(const AffineSystem& system, double dz0, double i_applied);

/// One grid point of the steady-state ratio sweep. Cell 1 is derived
/// from cell 2 and the ratios: q1 = q2 / q_ratio, r1 = r2 / r_ratio.
struct SweepPoint {
    double q_ratio;
    double r_ratio;
    double dz_ss;
    double di_ss;
    bool current_rule_convergent;  // di_ss < 0
    bool dod_rule_convergent;      // dz_ss > 0
};

/// Steady-state imbalance map over capacity/resistance ratio grids.
/// Rows are emitted in grid order (q_ratio outer, r_ratio inner);
/// workers > 1 partitions the grid and merges deterministically.
std::vector<SweepPoint> sweep_steady_state(const CellParams& cell2,
                                           std::span<const double> q_ratios,
                                           std::span<const double> r_ratios, double i_applied,
                                           double alpha, unsigned workers = 1);

}  // namespace pcsim
