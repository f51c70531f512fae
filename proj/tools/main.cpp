/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pcsim/commands.hpp"
#include "pcsim/config.hpp"
#include "pcsim/csv.hpp"

namespace {

struct Cli {
    std::string config_path;
    std::string model_csv;
    std::string reference_csv;
    pcsim::CommandOptions opts;
};

int run_from_config(const Cli& cli, const char* expected_kind) {
    pcsim::RunConfig config;
    try {
        config = pcsim::load_config(cli.config_path);
    } catch (const pcsim::csv::io_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return pcsim::exit_io;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return pcsim::exit_config;
    }
    if (std::string(pcsim::experiment_name(config)) != expected_kind) {
        std::cerr << "config error: config is a '" << pcsim::experiment_name(config)
                  << "' experiment, expected '" << expected_kind << "'\n";
        return pcsim::exit_config;
    }
    return pcsim::run_command(config, cli.opts);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation toolkit for two parallel-connected lithium-ion cells"};
    app.require_subcommand(1);

    Cli cli;
    std::string out_dir = ".";
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_flag("--plot", cli.opts.plot, "Also write static SVG plots");
    app.add_option("--workers", cli.opts.workers, "Worker threads for grid commands")
        ->capture_default_str();
    app.add_option("--seed", cli.opts.seed, "Seed recorded in run metadata")
        ->capture_default_str();

    const char* kinds[] = {"analytic", "simulate", "sweep", "bounds", "degrade"};
    const char* blurbs[] = {
        "Closed-form constant-current / constant-voltage trajectories",
        "Discrete-time nonlinear-OCV protocol simulation",
        "Steady-state imbalance map over capacity/resistance ratios",
        "SOC-imbalance bound curve against a simulated trace",
        "Cycle-by-cycle degradation coupling"};
    for (std::size_t k = 0; k < 5; ++k) {
        auto* sub = app.add_subcommand(kinds[k], blurbs[k]);
        sub->add_option("--config", cli.config_path, "JSON run configuration")->required();
    }

    auto* cmp = app.add_subcommand("compare", "Column-wise comparison of two CSV tables");
    cmp->add_option("--config", cli.config_path, "JSON run configuration");
    cmp->add_option("--model", cli.model_csv, "Model CSV (defaults to the reference)");
    cmp->add_option("--reference", cli.reference_csv, "Reference CSV");

    CLI11_PARSE(app, argc, argv);
    cli.opts.out_dir = out_dir;

    for (std::size_t k = 0; k < 5; ++k)
        if (app.got_subcommand(kinds[k])) return run_from_config(cli, kinds[k]);

    if (app.got_subcommand("compare")) {
        if (!cli.config_path.empty()) return run_from_config(cli, "compare");
        if (cli.reference_csv.empty()) {
            std::cerr << "config error: compare needs --reference (or --config)\n";
            return pcsim::exit_config;
        }
        pcsim::CompareConfig cfg;
        cfg.reference_csv = cli.reference_csv;
        cfg.model_csv = cli.model_csv.empty() ? cli.reference_csv : cli.model_csv;
        return pcsim::run_command(pcsim::RunConfig{cfg}, cli.opts);
    }
    return pcsim::exit_config;
}
