/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "pcsim/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "pcsim/bounds.hpp"
#include "pcsim/csv.hpp"
#include "pcsim/svg.hpp"

namespace pcsim {

namespace {

using nlohmann::json;

void ensure_out_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw csv::io_error("cannot create output directory " + dir.string());
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw csv::io_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

csv::Table trace_table(const Trace& trace) {
    csv::Table t;
    t.header = {"t_s", "cycle", "phase", "z1", "z2", "i1_a", "i2_a", "v_t_v"};
    t.rows.reserve(trace.samples.size());
    for (const auto& s : trace.samples)
        t.rows.push_back({csv::format(s.t), std::to_string(s.cycle), to_string(s.phase),
                          csv::format(s.z1), csv::format(s.z2), csv::format(s.i1),
                          csv::format(s.i2), csv::format(s.v_t)});
    return t;
}

svg::Series series_of(const Trace& trace, double TraceSample::* field, const std::string& name) {
    svg::Series s;
    s.name = name;
    s.x.reserve(trace.samples.size());
    s.y.reserve(trace.samples.size());
    for (const auto& smp : trace.samples) {
        s.x.push_back(smp.t);
        s.y.push_back(smp.*field);
    }
    return s;
}

svg::Series derived_series(const Trace& trace, const std::string& name, bool imbalance_current) {
    svg::Series s;
    s.name = name;
    for (const auto& smp : trace.samples) {
        s.x.push_back(smp.t);
        s.y.push_back(imbalance_current ? smp.i2 - smp.i1 : smp.z2 - smp.z1);
    }
    return s;
}

}  // namespace

int cmd_analytic(const AnalyticConfig& cfg, const CommandOptions& opts) {
    validate(cfg.system);
    if (!(cfg.duration > 0.0) || !(cfg.dt > 0.0))
        throw std::invalid_argument("analytic: duration_s and dt_s must be > 0");
    ensure_out_dir(opts.out_dir);

    csv::Table cc;
    cc.header = {"t_s", "cycle", "phase", "z1", "z2", "i1_a", "i2_a", "v_t_v"};
    const auto steps = static_cast<std::size_t>(cfg.duration / cfg.dt);
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        const auto b = branch_currents(cfg.system, cfg.initial_soc, cfg.i_applied, t);
        const auto z = soc_trajectory(cfg.system, cfg.initial_soc, cfg.i_applied, t);
        cc.rows.push_back({csv::format(t), "1", "cc", csv::format(z.z1), csv::format(z.z2),
                           csv::format(b.i1), csv::format(b.i2),
                           csv::format(b.terminal_voltage)});
    }
    csv::write(opts.out_dir / "cc_trace.csv", cc);

    if (cfg.with_cv) {
        csv::Table cv;
        cv.header = {"t_s", "cycle", "phase", "z1", "z2", "i1_a", "i2_a", "v_t_v"};
        const double v_set = cfg.system.ocv.alpha + cfg.system.ocv.beta;
        const auto cv_steps = static_cast<std::size_t>(cfg.cv_duration / cfg.dt);
        for (std::size_t k = 0; k <= cv_steps; ++k) {
            const double t = static_cast<double>(k) * cfg.dt;
            const auto sol = cv_solution(cfg.system, cfg.cv_initial_soc, t);
            cv.rows.push_back({csv::format(t), "1", "cv", csv::format(sol.z1),
                               csv::format(sol.z2), csv::format(sol.i1), csv::format(sol.i2),
                               csv::format(v_set)});
        }
        csv::write(opts.out_dir / "cv_trace.csv", cv);
    }

    const auto d = derived(cfg.system);
    const auto ss = steady_state(cfg.system, cfg.i_applied);
    const auto mx =
        max_imbalance(cfg.system, cfg.initial_soc.z2 - cfg.initial_soc.z1, cfg.i_applied);
    write_json(opts.out_dir / "steady_state.json",
               json{{"tau_s", d.tau},
                    {"kappa_per_a", d.kappa},
                    {"dz_ss", ss.dz_ss},
                    {"di_ss_a", ss.di_ss},
                    {"max_abs_dz", mx.max_abs_dz},
                    {"max_abs_di_a", mx.max_abs_di},
                    {"seed", opts.seed}});

    if (opts.plot) {
        svg::Series dz;
        dz.name = "dz";
        svg::Series di;
        di.name = "di (A)";
        for (const auto& row : cc.rows) {
            const double t = std::stod(row[0]);
            dz.x.push_back(t);
            dz.y.push_back(std::stod(row[4]) - std::stod(row[3]));
            di.x.push_back(t);
            di.y.push_back(std::stod(row[6]) - std::stod(row[5]));
        }
        svg::write_line_plot(opts.out_dir / "cc_trace_dz.svg", "SOC imbalance", "t (s)", "dz",
                             {dz});
        svg::write_line_plot(opts.out_dir / "cc_trace_di.svg", "current imbalance", "t (s)",
                             "di (A)", {di});
    }
    return exit_ok;
}

namespace {

struct CvSpan {
    double start = 0.0;
    double end = 0.0;
    bool found = false;
};

CvSpan cycle1_cv_span(const Trace& trace) {
    CvSpan span;
    for (const auto& s : trace.samples) {
        if (s.cycle != 1 || s.phase != PhaseKind::cv) continue;
        if (!span.found) span.start = s.t;
        span.end = s.t;
        span.found = true;
    }
    return span;
}

double cycle1_end(const Trace& trace) {
    double end = 0.0;
    for (const auto& s : trace.samples)
        if (s.cycle == 1) end = s.t;
    return end;
}

// Piecewise-linear time warp pinned at t=0, the CV start/end of the
// first cycle, and the first cycle's end.
double warp_time(double t, const std::vector<std::pair<double, double>>& anchors) {
    for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
        const auto [a0, b0] = anchors[k];
        const auto [a1, b1] = anchors[k + 1];
        if (t <= a1 || k + 2 == anchors.size()) {
            if (a1 == a0) return b0;
            return b0 + (t - a0) / (a1 - a0) * (b1 - b0);
        }
    }
    return t;
}

}  // namespace

int cmd_simulate(const SimulateConfig& cfg, const CommandOptions& opts) {
    ensure_out_dir(opts.out_dir);
    const Trace trace = run(cfg.sim);
    csv::write(opts.out_dir / "trace.csv", trace_table(trace));

    if (cfg.with_affine_overlay) {
        SimConfig affine_sim = cfg.sim;
        affine_sim.system.ocv1 = cfg.overlay;
        affine_sim.system.ocv2 = cfg.overlay;
        const Trace affine = run(affine_sim);

        const CvSpan span_nl = cycle1_cv_span(trace);
        const CvSpan span_af = cycle1_cv_span(affine);
        std::vector<std::pair<double, double>> anchors{{0.0, 0.0}};
        if (span_nl.found && span_af.found) {
            anchors.emplace_back(span_af.start, span_nl.start);
            anchors.emplace_back(span_af.end, span_nl.end);
        }
        anchors.emplace_back(cycle1_end(affine), cycle1_end(trace));

        // Affine imbalance samples on the warped time axis.
        std::vector<double> wt, wdz, wdi;
        for (const auto& s : affine.samples) {
            if (s.cycle != 1) break;
            wt.push_back(warp_time(s.t, anchors));
            wdz.push_back(s.z2 - s.z1);
            wdi.push_back(s.i2 - s.i1);
        }
        auto interp = [&](const std::vector<double>& ys, double t) {
            auto it = std::lower_bound(wt.begin(), wt.end(), t);
            if (it == wt.begin()) return ys.front();
            if (it == wt.end()) return ys.back();
            const std::size_t hi = static_cast<std::size_t>(it - wt.begin());
            const double t0 = wt[hi - 1], t1 = wt[hi];
            if (t1 == t0) return ys[hi];
            const double w = (t - t0) / (t1 - t0);
            return ys[hi - 1] * (1.0 - w) + ys[hi] * w;
        };

        csv::Table overlay;
        overlay.header = {"t_s", "dz", "di_a", "dz_affine", "di_affine_a"};
        for (const auto& s : trace.samples) {
            if (s.cycle != 1) break;
            overlay.rows.push_back({csv::format(s.t), csv::format(s.z2 - s.z1),
                                    csv::format(s.i2 - s.i1), csv::format(interp(wdz, s.t)),
                                    csv::format(interp(wdi, s.t))});
        }
        csv::write(opts.out_dir / "overlay.csv", overlay);
    }

    if (opts.plot) {
        svg::write_line_plot(opts.out_dir / "trace_dz.svg", "SOC imbalance", "t (s)", "dz",
                             {derived_series(trace, "dz", false)});
        svg::write_line_plot(opts.out_dir / "trace_di.svg", "current imbalance", "t (s)",
                             "di (A)", {derived_series(trace, "di", true)});
        svg::write_line_plot(opts.out_dir / "trace_soc.svg", "SOC", "t (s)", "z",
                             {series_of(trace, &TraceSample::z1, "z1"),
                              series_of(trace, &TraceSample::z2, "z2")});
    }
    return exit_ok;
}

int cmd_sweep(const SweepConfig& cfg, const CommandOptions& opts) {
    ensure_out_dir(opts.out_dir);
    const auto grid = sweep_steady_state(cfg.cell2, cfg.q_ratios, cfg.r_ratios, cfg.i_applied,
                                         cfg.alpha, opts.workers);
    csv::Table t;
    t.header = {"q_ratio", "r_ratio", "dz_ss", "di_ss", "current_rule_convergent",
                "dod_rule_convergent"};
    t.rows.reserve(grid.size());
    for (const auto& pt : grid)
        t.rows.push_back({csv::format(pt.q_ratio), csv::format(pt.r_ratio),
                          csv::format(pt.dz_ss), csv::format(pt.di_ss),
                          pt.current_rule_convergent ? "1" : "0",
                          pt.dod_rule_convergent ? "1" : "0"});
    csv::write(opts.out_dir / "sweep.csv", t);

    if (opts.plot && !cfg.r_ratios.empty()) {
        std::vector<svg::Series> series;
        const std::size_t picks[] = {0, cfg.r_ratios.size() / 2, cfg.r_ratios.size() - 1};
        for (std::size_t pick : picks) {
            svg::Series s;
            s.name = "r_ratio=" + csv::format(cfg.r_ratios[pick]);
            for (std::size_t qi = 0; qi < cfg.q_ratios.size(); ++qi) {
                s.x.push_back(cfg.q_ratios[qi]);
                s.y.push_back(grid[qi * cfg.r_ratios.size() + pick].dz_ss);
            }
            series.push_back(std::move(s));
        }
        svg::write_line_plot(opts.out_dir / "sweep_dz.svg", "steady-state SOC imbalance",
                             "q2/q1", "dz_ss", series);
    }
    return exit_ok;
}

int cmd_bounds(const BoundsConfig& cfg, const CommandOptions& opts) {
    ensure_out_dir(opts.out_dir);
    const Trace trace = run(cfg.sim);
    const BoundParams bp =
        bound_params(cfg.sim.system.cell1, cfg.sim.system.cell2, cfg.sim.system.ocv1);
    double i_max = cfg.i_max;
    if (i_max <= 0.0)
        for (const auto& s : trace.samples) i_max = std::max(i_max, std::abs(s.i1 + s.i2));
    const double dz0 = cfg.dz0 != 0.0 ? cfg.dz0 : cfg.sim.initial_soc.z2 - cfg.sim.initial_soc.z1;

    csv::Table t;
    t.header = {"t_s", "abs_dz", "bound", "guaranteed"};
    t.rows.reserve(trace.samples.size());
    for (const auto& s : trace.samples) {
        const auto b = imbalance_bound(bp, dz0, i_max, s.t);
        t.rows.push_back({csv::format(s.t), csv::format(std::abs(s.z2 - s.z1)),
                          csv::format(b.value), b.guaranteed ? "1" : "0"});
    }
    csv::write(opts.out_dir / "bounds.csv", t);

    if (opts.plot) {
        svg::Series abs_dz;
        abs_dz.name = "|dz|";
        svg::Series bound;
        bound.name = "bound";
        for (const auto& s : trace.samples) {
            abs_dz.x.push_back(s.t);
            abs_dz.y.push_back(std::abs(s.z2 - s.z1));
            bound.x.push_back(s.t);
            bound.y.push_back(imbalance_bound(bp, dz0, i_max, s.t).value);
        }
        svg::write_line_plot(opts.out_dir / "bounds.svg", "imbalance bound", "t (s)", "dz",
                             {abs_dz, bound});
    }
    return exit_ok;
}

int cmd_degrade(const DegradeConfig& cfg, const CommandOptions& opts) {
    ensure_out_dir(opts.out_dir);
    const AgingTrace trace =
        cfg.control ? control_run(cfg.aging, cfg.control_current) : run_aging(cfg.aging);

    csv::Table t;
    t.header = {"cycle", "q1_as", "q2_as", "r1_ohm", "r2_ohm",
                "dq_as", "q_ratio", "r_ratio", "rate1", "rate2"};
    t.rows.reserve(trace.records.size());
    for (const auto& rec : trace.records)
        t.rows.push_back({std::to_string(rec.cycle), csv::format(rec.q1), csv::format(rec.q2),
                          csv::format(rec.r1), csv::format(rec.r2), csv::format(rec.q2 - rec.q1),
                          csv::format(rec.q1 != 0.0 ? rec.q2 / rec.q1 : 0.0),
                          csv::format(rec.r1 != 0.0 ? rec.r2 / rec.r1 : 0.0),
                          csv::format(rec.rate1), csv::format(rec.rate2)});
    csv::write(opts.out_dir / "aging.csv", t);

    json metrics{{"cycles", trace.records.size()},
                 {"termination", trace.termination == AgingTermination::capacity_floor
                                     ? "capacity_floor"
                                     : "max_cycles"},
                 {"seed", opts.seed}};
    if (trace.records.size() >= 2) {
        const auto m = convergence_metrics(trace);
        metrics["capacity_verdict"] = to_string(m.capacity);
        metrics["resistance_verdict"] = to_string(m.resistance);
        metrics["q_ratio_first"] = m.q_ratio.front();
        metrics["q_ratio_last"] = m.q_ratio.back();
        metrics["r_ratio_first"] = m.r_ratio.front();
        metrics["r_ratio_last"] = m.r_ratio.back();
    }
    if (trace.floor_cycle1) metrics["floor_cycle1"] = *trace.floor_cycle1;
    if (trace.floor_cycle2) metrics["floor_cycle2"] = *trace.floor_cycle2;
    write_json(opts.out_dir / "metrics.json", metrics);

    if (opts.plot) {
        svg::Series q1, q2;
        q1.name = "q1 (As)";
        q2.name = "q2 (As)";
        for (const auto& rec : trace.records) {
            q1.x.push_back(rec.cycle);
            q1.y.push_back(rec.q1);
            q2.x.push_back(rec.cycle);
            q2.y.push_back(rec.q2);
        }
        svg::write_line_plot(opts.out_dir / "aging_capacity.svg", "capacity fade", "cycle",
                             "q (As)", {q1, q2});
    }
    return exit_ok;
}

CompareReport compare_tables(const std::filesystem::path& model_csv,
                             const std::filesystem::path& reference_csv) {
    const csv::Table model = csv::read(model_csv);
    const csv::Table ref = csv::read(reference_csv);
    if (model.header != ref.header) {
        std::string msg = "compare: column schema mismatch (model:";
        for (const auto& h : model.header) msg += " " + h;
        msg += "; reference:";
        for (const auto& h : ref.header) msg += " " + h;
        msg += ")";
        throw std::invalid_argument(msg);
    }
    CompareReport report;
    report.schema_match = true;
    report.rows_compared = std::min(model.rows.size(), ref.rows.size());
    for (std::size_t c = 0; c < ref.header.size(); ++c) {
        double worst = 0.0;
        for (std::size_t r = 0; r < report.rows_compared; ++r) {
            const std::string& a = model.rows[r][c];
            const std::string& b = ref.rows[r][c];
            try {
                worst = std::max(worst, std::abs(csv::to_double(a, r + 2) -
                                                 csv::to_double(b, r + 2)));
            } catch (const std::invalid_argument&) {
                worst = std::max(worst, a == b ? 0.0 : 1.0);
            }
        }
        report.columns.push_back({ref.header[c], worst});
    }

    const int q1c = ref.column("q1_as"), q2c = ref.column("q2_as");
    const int r1c = ref.column("r1_ohm"), r2c = ref.column("r2_ohm");
    if (q1c >= 0 && q2c >= 0 && r1c >= 0 && r2c >= 0 && ref.rows.size() >= 2) {
        AgingTrace trace;
        for (std::size_t r = 0; r < ref.rows.size(); ++r) {
            AgingRecord rec{};
            rec.cycle = static_cast<int>(r);
            rec.q1 = csv::to_double(ref.rows[r][static_cast<std::size_t>(q1c)], r + 2);
            rec.q2 = csv::to_double(ref.rows[r][static_cast<std::size_t>(q2c)], r + 2);
            rec.r1 = csv::to_double(ref.rows[r][static_cast<std::size_t>(r1c)], r + 2);
            rec.r2 = csv::to_double(ref.rows[r][static_cast<std::size_t>(r2c)], r + 2);
            trace.records.push_back(rec);
        }
        const auto m = convergence_metrics(trace);
        report.has_aging_metrics = true;
        report.capacity_ratio = {m.q_ratio.front(), m.q_ratio.back(), m.capacity};
        report.resistance_ratio = {m.r_ratio.front(), m.r_ratio.back(), m.resistance};
    }
    return report;
}

int cmd_compare(const CompareConfig& cfg, const CommandOptions& opts) {
    ensure_out_dir(opts.out_dir);
    const CompareReport report = compare_tables(cfg.model_csv, cfg.reference_csv);

    double worst = 0.0;
    json cols = json::object();
    for (const auto& c : report.columns) {
        cols[c.name] = c.max_abs_error;
        worst = std::max(worst, c.max_abs_error);
    }
    std::cout << "schema: ok (" << report.columns.size() << " columns)\n";
    std::cout << "rows compared: " << report.rows_compared << "\n";
    std::cout << "max |model - reference|: " << csv::format(worst) << "\n";
    json j{{"schema_match", true},
           {"rows_compared", report.rows_compared},
           {"max_abs_error", cols}};
    if (report.has_aging_metrics) {
        char line[160];
        std::snprintf(line, sizeof line, "capacity ratio q2/q1: %.3f -> %.3f (%s)\n",
                      report.capacity_ratio.first, report.capacity_ratio.last,
                      to_string(report.capacity_ratio.verdict));
        std::cout << line;
        std::snprintf(line, sizeof line, "resistance ratio r2/r1: %.3f -> %.3f (%s)\n",
                      report.resistance_ratio.first, report.resistance_ratio.last,
                      to_string(report.resistance_ratio.verdict));
        std::cout << line;
        j["capacity_ratio"] = {{"first", report.capacity_ratio.first},
                               {"last", report.capacity_ratio.last},
                               {"verdict", to_string(report.capacity_ratio.verdict)}};
        j["resistance_ratio"] = {{"first", report.resistance_ratio.first},
                                 {"last", report.resistance_ratio.last},
                                 {"verdict", to_string(report.resistance_ratio.verdict)}};
    }
    write_json(opts.out_dir / "report.json", j);
    return exit_ok;
}

int run_command(const RunConfig& config, const CommandOptions& opts) {
    try {
        if (const auto* c = std::get_if<AnalyticConfig>(&config)) return cmd_analytic(*c, opts);
        if (const auto* c = std::get_if<SimulateConfig>(&config)) return cmd_simulate(*c, opts);
        if (const auto* c = std::get_if<SweepConfig>(&config)) return cmd_sweep(*c, opts);
        if (const auto* c = std::get_if<BoundsConfig>(&config)) return cmd_bounds(*c, opts);
        if (const auto* c = std::get_if<DegradeConfig>(&config)) return cmd_degrade(*c, opts);
        if (const auto* c = std::get_if<CompareConfig>(&config)) return cmd_compare(*c, opts);
        return exit_config;
    } catch (const csv::io_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return exit_io;
    } catch (const protocol_fault& e) {
        std::cerr << "runtime fault: " << e.what() << '\n';
        return exit_runtime;
    } catch (const phase_timeout& e) {
        std::cerr << "runtime fault: " << e.what() << '\n';
        return exit_runtime;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "runtime fault: " << e.what() << '\n';
        return exit_runtime;
    }
}

}  // namespace pcsim
