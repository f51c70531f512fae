/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "pcsim/config.hpp"

#include <fstream>

#include <json.hpp>

#include "pcsim/csv.hpp"
#include "pcsim/curves.hpp"

namespace pcsim {

namespace {

using nlohmann::json;

[[noreturn]] void missing(const std::string& field) {
    throw std::invalid_argument("config: missing or invalid field '" + field + "'");
}

double num(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number()) missing(field);
    return j[field].get<double>();
}

double num_or(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number()) missing(field);
    return j[field].get<double>();
}

bool flag_or(const json& j, const std::string& field, bool fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_boolean()) missing(field);
    return j[field].get<bool>();
}

std::string text(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_string()) missing(field);
    return j[field].get<std::string>();
}

// Cells block: {"q_ah":[a,b],"r_mohm":[a,b]} or {"q_as":[...],"r_ohm":[...]}.
std::pair<CellParams, CellParams> parse_cells(const json& j) {
    if (!j.contains("cells") || !j["cells"].is_object()) missing("cells");
    const json& c = j["cells"];
    auto pair_of = [&](const char* name) -> std::array<double, 2> {
        if (!c.contains(name) || !c[name].is_array() || c[name].size() != 2 ||
            !c[name][0].is_number() || !c[name][1].is_number())
            missing(std::string("cells.") + name);
        return {c[name][0].get<double>(), c[name][1].get<double>()};
    };
    std::array<double, 2> q{};
    if (c.contains("q_as"))
        q = pair_of("q_as");
    else if (c.contains("q_ah")) {
        q = pair_of("q_ah");
        q[0] *= 3600.0;
        q[1] *= 3600.0;
    } else
        missing("cells.q_ah (or q_as)");
    std::array<double, 2> r{};
    if (c.contains("r_ohm"))
        r = pair_of("r_ohm");
    else if (c.contains("r_mohm")) {
        r = pair_of("r_mohm");
        r[0] *= 1e-3;
        r[1] *= 1e-3;
    } else
        missing("cells.r_mohm (or r_ohm)");
    CellParams cell1{q[0], r[0]};
    CellParams cell2{q[1], r[1]};
    validate(cell1);
    validate(cell2);
    return {cell1, cell2};
}

CellParams parse_single_cell(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_object()) missing(field);
    const json& c = j[field];
    double q = 0.0, r = 0.0;
    if (c.contains("q_as"))
        q = num(c, "q_as");
    else
        q = num(c, "q_ah") * 3600.0;
    if (c.contains("r_ohm"))
        r = num(c, "r_ohm");
    else
        r = num(c, "r_mohm") * 1e-3;
    CellParams cell{q, r};
    validate(cell);
    return cell;
}

SocPair parse_soc(const json& j, const std::string& field, std::optional<SocPair> fallback = {}) {
    if (!j.contains(field)) {
        if (fallback) return *fallback;
        missing(field);
    }
    const json& a = j[field];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) missing(field);
    return {a[0].get<double>(), a[1].get<double>()};
}

AffineOcv parse_affine(const json& j) {
    return AffineOcv(num(j, "alpha"), num(j, "beta"));
}

OcvCurve parse_one_curve(const json& j, const std::filesystem::path& base) {
    if (j.contains("affine")) return parse_affine(j["affine"]);
    if (j.contains("builtin")) {
        const std::string name = text(j, "builtin");
        auto curve = builtin_curve(name);
        if (!curve) throw std::invalid_argument("config: unknown builtin curve '" + name + "'");
        return *std::move(curve);
    }
    if (j.contains("path")) {
        std::filesystem::path p = text(j, "path");
        if (p.is_relative()) p = base / p;
        return load_tabulated(p);
    }
    missing("ocv.affine|builtin|path");
}

std::pair<OcvCurve, OcvCurve> parse_ocv(const json& j, const std::filesystem::path& base) {
    if (!j.contains("ocv") || !j["ocv"].is_object()) missing("ocv");
    const json& o = j["ocv"];
    if (o.contains("per_cell")) {
        if (!o["per_cell"].is_array() || o["per_cell"].size() != 2) missing("ocv.per_cell");
        return {parse_one_curve(o["per_cell"][0], base), parse_one_curve(o["per_cell"][1], base)};
    }
    OcvCurve shared = parse_one_curve(o, base);
    return {shared, shared};
}

Protocol parse_protocol(const json& j) {
    if (!j.contains("protocol") || !j["protocol"].is_object()) missing("protocol");
    const json& p = j["protocol"];
    Protocol proto;
    proto.cycles = static_cast<int>(num_or(p, "cycles", 1));
    if (!p.contains("phases") || !p["phases"].is_array() || p["phases"].empty())
        missing("protocol.phases");
    for (const json& ph : p["phases"]) {
        const std::string type = text(ph, "type");
        if (type == "cc") {
            CcPhase cc{};
            cc.current = num(ph, "current_a");
            if (ph.contains("v_limit_v")) cc.v_limit = num(ph, "v_limit_v");
            if (ph.contains("duration_s")) cc.duration = num(ph, "duration_s");
            proto.phases.emplace_back(cc);
        } else if (type == "cv") {
            proto.phases.emplace_back(CvPhase{num(ph, "v_set_v"), num(ph, "i_cutoff_a")});
        } else if (type == "rest") {
            proto.phases.emplace_back(RestPhase{num(ph, "duration_s")});
        } else {
            throw std::invalid_argument("config: unknown phase type '" + type + "'");
        }
    }
    validate(proto);
    return proto;
}

SimConfig parse_sim(const json& j, const std::filesystem::path& base) {
    SimConfig sim;
    auto [c1, c2] = parse_cells(j);
    auto [o1, o2] = parse_ocv(j, base);
    sim.system = {c1, c2, std::move(o1), std::move(o2)};
    sim.dt = num_or(j, "dt_s", 1.0);
    sim.protocol = parse_protocol(j);
    sim.initial_soc = parse_soc(j, "initial_soc");
    sim.enforce_soc_guard = flag_or(j, "soc_guard", true);
    sim.max_phase_duration = num_or(j, "max_phase_duration_s", 2.0e6);
    return sim;
}

DegradationParams parse_degradation(const json& j) {
    if (!j.is_object()) missing("degradation");
    DegradationParams d;
    d.p = num(j, "p");
    d.lambda1 = num_or(j, "lambda1", 0.0);
    d.lambda2 = num_or(j, "lambda2", 0.0);
    d.allow_accelerating = flag_or(j, "allow_accelerating", false);
    if (!j.contains("rate_law") || !j["rate_law"].is_object()) missing("degradation.rate_law");
    const json& rl = j["rate_law"];
    const std::string type = text(rl, "type");
    if (type == "current")
        d.rate_law = {RateLaw::Kind::current, num(rl, "gamma")};
    else if (type == "dod")
        d.rate_law = {RateLaw::Kind::dod, num(rl, "gamma")};
    else if (type == "constant")
        d.rate_law = {RateLaw::Kind::constant, num(rl, "r")};
    else
        throw std::invalid_argument("config: unknown rate law '" + type + "'");
    validate(d);
    return d;
}

AnalyticConfig parse_analytic(const json& j) {
    AnalyticConfig cfg;
    auto [c1, c2] = parse_cells(j);
    if (!j.contains("ocv") || !j["ocv"].contains("affine")) missing("ocv.affine");
    cfg.system = {c1, c2, parse_affine(j["ocv"]["affine"])};
    cfg.initial_soc = parse_soc(j, "initial_soc");
    cfg.i_applied = num(j, "i_applied_a");
    cfg.duration = num(j, "duration_s");
    cfg.dt = num_or(j, "dt_s", 1.0);
    if (j.contains("cv")) {
        cfg.with_cv = true;
        cfg.cv_initial_soc = parse_soc(j["cv"], "initial_soc");
        cfg.cv_duration = num(j["cv"], "duration_s");
    }
    return cfg;
}

SimulateConfig parse_simulate(const json& j, const std::filesystem::path& base) {
    SimulateConfig cfg{parse_sim(j, base), false, AffineOcv(1.0, 3.0)};
    if (j.contains("affine_overlay")) {
        cfg.with_affine_overlay = true;
        cfg.overlay = parse_affine(j["affine_overlay"]);
    }
    return cfg;
}

std::vector<double> parse_grid(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_object()) missing(field);
    const json& g = j[field];
    const double lo = num(g, "min");
    const double hi = num(g, "max");
    const int count = static_cast<int>(num(g, "count"));
    if (count < 1) throw std::invalid_argument("config: " + field + ".count must be >= 1");
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] =
            count == 1 ? lo : lo + (hi - lo) * i / static_cast<double>(count - 1);
    return grid;
}

SweepConfig parse_sweep(const json& j) {
    SweepConfig cfg;
    cfg.cell2 = parse_single_cell(j, "cell2");
    cfg.alpha = num(j, "alpha");
    cfg.i_applied = num(j, "i_applied_a");
    cfg.q_ratios = parse_grid(j, "q_ratio");
    cfg.r_ratios = parse_grid(j, "r_ratio");
    return cfg;
}

BoundsConfig parse_bounds(const json& j, const std::filesystem::path& base) {
    BoundsConfig cfg{parse_sim(j, base), 0.0, 0.0};
    cfg.dz0 = num_or(j, "dz0", cfg.sim.initial_soc.z2 - cfg.sim.initial_soc.z1);
    cfg.i_max = num_or(j, "i_max_a", 0.0);
    return cfg;
}

DegradeConfig parse_degrade(const json& j, const std::filesystem::path& base) {
    DegradeConfig cfg;
    auto [c1, c2] = parse_cells(j);
    cfg.aging.cell1 = c1;
    cfg.aging.cell2 = c2;
    cfg.aging.affine = j.contains("ocv") && j["ocv"].contains("affine")
                           ? parse_affine(j["ocv"]["affine"])
                           : AffineOcv(num(j, "alpha"), num_or(j, "beta", 3.0));
    if (j.contains("degradation_per_cell")) {
        const json& d = j["degradation_per_cell"];
        if (!d.is_array() || d.size() != 2) missing("degradation_per_cell");
        cfg.aging.deg1 = parse_degradation(d[0]);
        cfg.aging.deg2 = parse_degradation(d[1]);
    } else if (j.contains("degradation")) {
        cfg.aging.deg1 = cfg.aging.deg2 = parse_degradation(j["degradation"]);
    } else {
        missing("degradation");
    }
    cfg.aging.i_applied = num(j, "i_applied_a");
    cfg.aging.q_min = num_or(j, "q_min_as", 0.0);
    cfg.aging.max_cycles = static_cast<int>(num(j, "max_cycles"));
    cfg.aging.stop_at_first_floor = flag_or(j, "stop_at_first_floor", true);
    const std::string mode = j.contains("mode") ? text(j, "mode") : "fast";
    if (mode == "fast")
        cfg.aging.mode = AgingMode::fast;
    else if (mode == "high_fidelity") {
        cfg.aging.mode = AgingMode::high_fidelity;
        if (!j.contains("hifi") || !j["hifi"].is_object()) missing("hifi");
        const json& h = j["hifi"];
        auto [o1, o2] = parse_ocv(h, base);
        cfg.aging.hifi = HighFidelityConfig{std::move(o1), std::move(o2), parse_protocol(h),
                                            num_or(h, "dt_s", 1.0),
                                            parse_soc(h, "initial_soc", SocPair{0.5, 0.5})};
    } else {
        throw std::invalid_argument("config: unknown aging mode '" + mode + "'");
    }
    if (j.contains("control")) {
        cfg.control = true;
        cfg.control_current = num(j, "control");
    }
    validate(cfg.aging);
    return cfg;
}

CompareConfig parse_compare(const json& j, const std::filesystem::path& base) {
    CompareConfig cfg;
    std::filesystem::path model = text(j, "model_csv");
    std::filesystem::path ref = text(j, "reference_csv");
    cfg.model_csv = model.is_relative() ? base / model : model;
    cfg.reference_csv = ref.is_relative() ? base / ref : ref;
    return cfg;
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw csv::io_error("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument("config " + path.string() + ": " + e.what());
    }
    const std::filesystem::path base = path.parent_path();
    const std::string kind = text(j, "experiment");
    if (kind == "analytic") return parse_analytic(j);
    if (kind == "simulate") return parse_simulate(j, base);
    if (kind == "sweep") return parse_sweep(j);
    if (kind == "bounds") return parse_bounds(j, base);
    if (kind == "degrade") return parse_degrade(j, base);
    if (kind == "compare") return parse_compare(j, base);
    throw std::invalid_argument("config: unknown experiment '" + kind + "'");
}

const char* experiment_name(const RunConfig& config) {
    struct Visitor {
        const char* operator()(const AnalyticConfig&) const { return "analytic"; }
        const char* operator()(const SimulateConfig&) const { return "simulate"; }
        const char* operator()(const SweepConfig&) const { return "sweep"; }
        const char* operator()(const BoundsConfig&) const { return "bounds"; }
        const char* operator()(const DegradeConfig&) const { return "degrade"; }
        const char* operator()(const CompareConfig&) const { return "compare"; }
    };
    return std::visit(Visitor{}, config);
}

}  // namespace pcsim
