/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pcsim/analytic.hpp"
#include "pcsim/ocv.hpp"

namespace pcsim {

/// A protocol mistake surfaced by the integrator (SOC left the guard
/// band, i.e. a missing termination condition).
class protocol_fault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A phase failed to reach its stop condition within the configured
/// maximum duration.
class phase_timeout : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Constant-current phase. Stops when the terminal voltage crosses
/// v_limit (upward on charge, downward on discharge) or after
/// `duration` seconds, whichever comes first; at least one stop must
/// be given.
struct CcPhase {
    double current;  // A, positive on discharge
    std::optional<double> v_limit;
    std::optional<double> duration;
};

/// Constant-voltage hold, terminated when |i1 + i2| <= i_cutoff.
struct CvPhase {
    double v_set;
    double i_cutoff;
};

struct RestPhase {
    double duration;  // s
};

using Phase = std::variant<CcPhase, CvPhase, RestPhase>;

struct Protocol {
    std::vector<Phase> phases;
    int cycles = 1;
};

void validate(const Protocol& protocol);

/// Two cells in parallel with per-cell (possibly nonlinear) OCV curves.
struct NonlinearSystem {
    CellParams cell1;
    CellParams cell2;
    OcvCurve ocv1;
    OcvCurve ocv2;
};

struct SimConfig {
    NonlinearSystem system;
    double dt = 1.0;
    Protocol protocol;
    SocPair initial_soc{1.0, 1.0};
    /// Fault when any SOC leaves [-guard_tol, 1 + guard_tol]. Disable
    /// only for deliberately unconstrained affine studies.
    bool enforce_soc_guard = true;
    double guard_tol = 1e-3;
    double max_phase_duration = 2.0e6;  // s
};

enum class PhaseKind : std::uint8_t { cc, cv, rest };

const char* to_string(PhaseKind kind);

struct TraceSample {
    double t;
    double z1;
    double z2;
    double i1;
    double i2;
    double v_t;
    std::int32_t cycle;
    PhaseKind phase;
};

/// Uniformly sampled record of a simulation run. Phase switches insert
/// a zero-width sample pair at the boundary instant so branch-current
/// jumps are visible and discrete charge bookkeeping stays exact.
struct Trace {
    std::vector<TraceSample> samples;
};

struct SimState {
    double t = 0.0;
    SocPair z{1.0, 1.0};
};

struct StepCurrents {
    double i1;
    double i2;
    double v_t;
};

/// Instantaneous branch currents and terminal voltage for a given
/// total applied current (Kirchhoff solution of the two-branch
/// circuit).
StepCurrents cc_currents(const NonlinearSystem& system, SocPair z, double i_applied);

/// Branch currents under a voltage hold: i_i = (U_i(z_i) - v_set) / r_i.
StepCurrents cv_currents(const NonlinearSystem& system, SocPair z, double v_set);

/// One forward-difference step under constant current / voltage hold.
/// Guard violations throw protocol_fault.
SimState step_cc(const SimState& state, const NonlinearSystem& system, double i_applied,
                 double dt, bool enforce_guard = true, double guard_tol = 1e-3);
SimState step_cv(const SimState& state, const NonlinearSystem& system, double v_set, double dt,
                 bool enforce_guard = true, double guard_tol = 1e-3);

/// Executes the protocol phases in order for the configured number of
/// cycles. Deterministic for a fixed config.
Trace run(const SimConfig& config);

/// Per-cycle (z1, z2) loops plus a closure metric between consecutive
/// cycles: closure[k] is the symmetric Hausdorff distance (point to
/// polyline) between the loops of cycle k+1 and cycle k+2.
struct OrbitAnalysis {
    std::vector<std::vector<std::array<double, 2>>> loops;
    std::vector<double> closure;
};

OrbitAnalysis phase_orbit(const Trace& trace);

/// Exact discrete charge bookkeeping residual of a trace segment:
/// |sum_k (i1+i2) dt_k  -  (q1 dz1 + q2 dz2)| normalised by throughput.
/// Forward-difference traces satisfy this to machine precision.
double conservation_residual(const Trace& trace, const CellParams& cell1,
                             const CellParams& cell2);

/// Largest per-sample violation of voltage consistency
/// U1(z1) - i1 r1 == U2(z2) - i2 r2 over the trace, in volts.
double voltage_residual(const Trace& trace, const NonlinearSystem& system);

}  // namespace pcsim
