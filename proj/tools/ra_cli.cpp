#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "reachavoid/io.hpp"
#include "reachavoid/svg.hpp"

namespace fs = std::filesystem;
using namespace ra;

namespace {

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
}

fs::path out_dir(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

std::string vec_str(Vec2 v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.6f, %.6f)", v.x, v.y);
    return buf;
}

int cmd_simulate(const std::string& path, const std::string& dir, double dt) {
    ScenarioFile f = load_scenario(path);
    Scenario& s = f.scenario;
    if (dt > 0) {
        s.dt = dt;
        s.validate();
    }
    const GameTrace tr = run(s);
    const fs::path out = out_dir(dir);
    std::ostringstream csv;
    write_trace_csv(csv, tr);
    write_file(out / (s.name + "_trace.csv"), csv.str());
    write_file(out / (s.name + "_trajectories.svg"), svg_trajectories(s, tr));
    write_file(out / (s.name + "_distances.svg"), svg_distances(tr));
    std::printf("%s: %s at t=%.6f, payoff %.6f, attacker at %s\n", s.name.c_str(), outcome_name(tr.outcome), tr.end_time, tr.payoff,
                vec_str(tr.end_point).c_str());
    for (const auto& e : tr.events) std::printf("  event %s\n", e.c_str());
    return 0;
}

int cmd_regions(const std::string& path, const std::string& dir, int resolution, const std::vector<double>& window) {
    ScenarioFile f = load_scenario(path);
    if (resolution > 0) f.render.resolution = resolution;
    if (!window.empty()) f.render.window = {window[0], window[1], window[2], window[3]};
    const Window& w = f.render.window;
    if (!(w.xmax > w.xmin) || !(w.ymax > w.ymin)) throw DomainError("empty window");
    const GameConfig& cfg = f.scenario.cfg;
    const DominanceAnalysis an(cfg);
    const RegionGrid g = region_map(an, w, f.render.resolution, f.render.resolution);
    const BoundaryL L = boundary_L(cfg, f.scenario.l_samples);
    std::optional<MrrBoundary> mrr;
    if (cfg.defender.state.vel.norm2() > 0) mrr = build_mrr_boundary(cfg.defender.state, cfg.defender.params);

    RegionLayers layers{&g, &L, mrr ? &*mrr : nullptr, &an.r3(), {}};
    try {
        layers.markers.push_back(strategy_one(cfg, {f.scenario.l_samples}).point);
    } catch (const std::exception& e) {
        std::printf("strategy I: %s\n", e.what());
    }
    if (auto p = r3_plan(cfg, an.r3())) layers.markers.push_back(p->point);

    const fs::path out = out_dir(dir);
    std::ostringstream csv;
    write_region_csv(csv, g);
    write_file(out / (f.scenario.name + "_regions.csv"), csv.str());
    write_file(out / (f.scenario.name + "_regions.svg"), svg_region_map(cfg, layers));

    std::map<std::string, int> counts;
    for (Region r : g.labels) ++counts[region_name(r)];
    for (const auto& [k, n] : counts) std::printf("%-18s %d\n", k.c_str(), n);
    for (const auto& c : an.r3().components)
        std::printf("R_III component (%s), area %.6g, %zu vertices\n", condition_name(c.tag), area(c.polygon), c.polygon.size());
    for (const auto& n : an.r3().notes) std::printf("note: %s\n", n.c_str());
    return 0;
}

void print_roots(const char* label, const RootSet& r) {
    std::printf("%-13s", label);
    if (r.empty()) std::printf(" none");
    for (std::size_t i = 0; i < r.size(); ++i) std::printf(" %.10f(x%d)", r.times[i], r.multiplicities[i]);
    std::printf("\n");
}

int cmd_scribe(const std::string& path) {
    const ScenarioFile f = load_scenario(path);
    const GameConfig& cfg = f.scenario.cfg;
    print_roots("circumscribe", circumscribe_times(cfg));
    print_roots("inscribe", inscribe_times(cfg));
    return 0;
}

int cmd_mrr(const std::string& path, const std::string& dir) {
    const ScenarioFile f = load_scenario(path);
    const GameConfig& cfg = f.scenario.cfg;
    const fs::path out = out_dir(dir);
    for (auto [who, pl] : {std::pair{"attacker", &cfg.attacker}, std::pair{"defender", &cfg.defender}}) {
        const MrrBoundary m = build_mrr_boundary(pl->state, pl->params);
        if (m.empty()) {
            std::printf("%s: at rest, no multiple reachable region\n", who);
        } else {
            std::printf("%s: t_s %.10f  t_u %.10f  x_s %s  cusps %s %s\n", who, m.t_s, m.t_u, vec_str(m.x_s).c_str(),
                        vec_str(m.cusps[0]).c_str(), vec_str(m.cusps[1]).c_str());
            std::ostringstream csv;
            csv << "branch,t,x,y\n";
            auto dump = [&](const char* name, const std::vector<CurveVertex>& arm) {
                for (const auto& v : arm) csv << name << "," << fmt17(v.t) << "," << fmt17(v.p.x) << "," << fmt17(v.p.y) << "\n";
            };
            dump("I_plus", m.branch_I_plus);
            dump("I_minus", m.branch_I_minus);
            dump("II_plus", m.branch_II_plus);
            dump("II_minus", m.branch_II_minus);
            write_file(out / (f.scenario.name + "_mrr_" + who + ".csv"), csv.str());
        }
        // isochrons spaced up to a little past the barrier time
        const double horizon = m.empty() ? 1.0 / pl->params.mu : 1.5 * m.t_s;
        std::vector<double> times;
        for (int i = 1; i <= 12; ++i) times.push_back(horizon * i / 12.0);
        write_file(out / (f.scenario.name + "_mrr_" + who + ".svg"), svg_isochrones(pl->state, pl->params, times, m));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reach-avoid game toolkit"};
    app.require_subcommand(1);
    std::string scenario, dir = ".";
    double dt = 0;
    int resolution = 0;
    std::vector<double> window;

    auto* sim = app.add_subcommand("simulate", "run a closed-loop game and write trace and figures");
    sim->add_option("scenario", scenario, "scenario JSON")->required();
    sim->add_option("--out", dir, "output directory");
    sim->add_option("--dt", dt, "override the step");

    auto* reg = app.add_subcommand("regions", "classify a grid and write the region map");
    reg->add_option("scenario", scenario, "scenario JSON")->required();
    reg->add_option("--out", dir, "output directory");
    reg->add_option("--resolution", resolution, "cells per axis")->check(CLI::Range(2, 4000));
    reg->add_option("--window", window, "xmin,xmax,ymin,ymax")->expected(4)->delimiter(',');

    auto* scr = app.add_subcommand("scribe", "print circumscribe and inscribe times");
    scr->add_option("scenario", scenario, "scenario JSON")->required();

    auto* mrr = app.add_subcommand("mrr", "print and draw both players' multiple reachable regions");
    mrr->add_option("scenario", scenario, "scenario JSON")->required();
    mrr->add_option("--out", dir, "output directory");

    CLI11_PARSE(app, argc, argv);
    try {
        if (sim->parsed()) return cmd_simulate(scenario, dir, dt);
        if (reg->parsed()) return cmd_regions(scenario, dir, resolution, window);
        if (scr->parsed()) return cmd_scribe(scenario);
        if (mrr->parsed()) return cmd_mrr(scenario, dir);
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
