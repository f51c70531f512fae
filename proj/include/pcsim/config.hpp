/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "pcsim/analytic.hpp"
#include "pcsim/coupled.hpp"
#include "pcsim/simulator.hpp"

namespace pcsim {

// One JSON document per run, discriminated by a top-level
// "experiment" field. Cell parameters accept either canonical units
// (q_as, r_ohm) or the conventional ones (q_ah, r_mohm); values are
// converted on load. Missing or ill-typed fields raise
// std::invalid_argument naming the field.

struct AnalyticConfig {
    AffineSystem system;
    SocPair initial_soc{0.5, 0.5};
    double i_applied = 0.0;
    double duration = 0.0;
    double dt = 1.0;
    // Optional CV-hold trace at the set-point alpha + beta.
    bool with_cv = false;
    SocPair cv_initial_soc{1.0, 1.0};
    double cv_duration = 0.0;
};

struct SimulateConfig {
    SimConfig sim;
    // Optional affine companion run whose imbalance columns are
    // realigned to the nonlinear trace using the first cycle's CV
    // phase as the reference interval.
    bool with_affine_overlay = false;
    AffineOcv overlay{1.0, 3.0};
};

struct SweepConfig {
    CellParams cell2;
    double alpha = 1.0;
    double i_applied = 0.0;
    std::vector<double> q_ratios;
    std::vector<double> r_ratios;
};

struct BoundsConfig {
    SimConfig sim;       // shared curve in both slots
    double dz0 = 0.0;    // defaults to initial imbalance
    double i_max = 0.0;  // 0 -> take max |i1+i2| from the trace
};

struct DegradeConfig {
    AgingConfig aging;
    bool control = false;
    double control_current = 0.0;
};

struct CompareConfig {
    std::filesystem::path model_csv;
    std::filesystem::path reference_csv;
};

using RunConfig = std::variant<AnalyticConfig, SimulateConfig, SweepConfig, BoundsConfig,
                               DegradeConfig, CompareConfig>;

/// Parses a config file; relative file references inside the document
/// resolve against the document's directory.
RunConfig load_config(const std::filesystem::path& path);

const char* experiment_name(const RunConfig& config);

}  // namespace pcsim
