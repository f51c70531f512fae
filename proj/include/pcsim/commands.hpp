/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pcsim/config.hpp"

namespace pcsim {

// Exit-code contract shared by the CLI:
//   0 success, 2 config error, 4 I/O error, 3 any other runtime fault.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_runtime = 3;
inline constexpr int exit_io = 4;

struct CommandOptions {
    std::filesystem::path out_dir = ".";
    bool plot = false;
    unsigned workers = 1;
    std::uint64_t seed = 0;  // recorded in run metadata
};

int cmd_analytic(const AnalyticConfig& config, const CommandOptions& opts);
int cmd_simulate(const SimulateConfig& config, const CommandOptions& opts);
int cmd_sweep(const SweepConfig& config, const CommandOptions& opts);
int cmd_bounds(const BoundsConfig& config, const CommandOptions& opts);
int cmd_degrade(const DegradeConfig& config, const CommandOptions& opts);

struct ColumnError {
    std::string name;
    double max_abs_error;
};

struct RatioTrend {
    double first = 0.0;
    double last = 0.0;
    TrendVerdict verdict = TrendVerdict::neutral;
};

struct CompareReport {
    bool schema_match = false;
    std::size_t rows_compared = 0;
    std::vector<ColumnError> columns;
    // Populated when the reference carries aging-trace columns.
    bool has_aging_metrics = false;
    RatioTrend capacity_ratio;    // q2/q1
    RatioTrend resistance_ratio;  // r2/r1
};

CompareReport compare_tables(const std::filesystem::path& model_csv,
                             const std::filesystem::path& reference_csv);

int cmd_compare(const CompareConfig& config, const CommandOptions& opts);

/// Dispatches a loaded config to its command, mapping exceptions onto
/// the exit-code contract and printing the failure reason to stderr.
int run_command(const RunConfig& config, const CommandOptions& opts);

}  // namespace pcsim
