#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "reachavoid/io.hpp"
#include "reachavoid/svg.hpp"

using namespace ra;
namespace fs = std::filesystem;

namespace {

std::string scenario_path(const std::string& name) { return std::string(RA_SOURCE_DIR) + "/scenarios/" + name + ".json"; }

const char* minimal = R"({
  "mu": 1,
  "players": {
    "attacker": {"pos": [-0.6, 0.1], "u_max": 1},
    "defender": {"pos": [-0.8, -0.2], "u_max": 2}
  }
})";

std::string error_of(const std::string& text) {
    try {
        parse_scenario(text, "doc");
    } catch (const SchemaError& e) {
        return e.what();
    }
    return "";
}

std::string read(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Scenario, MinimalDefaults) {
    const ScenarioFile f = parse_scenario(minimal);
    EXPECT_EQ(f.scenario.cfg.attacker.state.vel.x, 0.0);
    EXPECT_EQ(f.scenario.cfg.target.x, 0.0);
    EXPECT_EQ(f.scenario.attacker, AttackerPolicy::StrategyI);
    EXPECT_EQ(f.scenario.t_max, 10.0);
    EXPECT_EQ(f.render.resolution, 200);
}

TEST(Scenario, RoundTrip) {
    for (const char* name : {"case1", "case2", "case3", "special_case1", "special_case2"}) {
        const ScenarioFile a = load_scenario(scenario_path(name));
        const ScenarioFile b = parse_scenario(dump_scenario(a));
        const Scenario &x = a.scenario, &y = b.scenario;
        EXPECT_EQ(x.name, y.name);
        for (auto [p, q] : {std::pair{&x.cfg.attacker, &y.cfg.attacker}, std::pair{&x.cfg.defender, &y.cfg.defender}}) {
            EXPECT_EQ(p->state.pos.x, q->state.pos.x);
            EXPECT_EQ(p->state.pos.y, q->state.pos.y);
            EXPECT_EQ(p->state.vel.x, q->state.vel.x);
            EXPECT_EQ(p->state.vel.y, q->state.vel.y);
            EXPECT_EQ(p->params.u_max, q->params.u_max);
            EXPECT_EQ(p->params.mu, q->params.mu);
        }
        EXPECT_EQ(x.attacker, y.attacker);
        EXPECT_EQ(x.defender, y.defender);
        EXPECT_EQ(x.dt, y.dt);
        EXPECT_EQ(x.eps_capture, y.eps_capture);
        EXPECT_EQ(a.render.window.xmin, b.render.window.xmin);
        EXPECT_EQ(a.render.window.ymax, b.render.window.ymax);
        EXPECT_EQ(dump_scenario(a), dump_scenario(b));
    }
}

TEST(Scenario, UnknownKeyNamesLine) {
    std::string doc = minimal;
    doc.replace(doc.find("\"u_max\": 2"), 10, "\"u_max\": 2, \"colour\": 3");
    const std::string msg = error_of(doc);
    EXPECT_NE(msg.find("doc:5:"), std::string::npos) << msg;
    EXPECT_NE(msg.find("colour"), std::string::npos) << msg;
}

TEST(Scenario, Rejections) {
    std::string doc = minimal;
    doc.replace(doc.find("\"mu\": 1"), 7, "\"mu\": 0");
    EXPECT_NE(error_of(doc).find("doc:2:"), std::string::npos);

    doc = minimal;
    doc.replace(doc.find("\"u_max\": 1"), 10, "\"u_max\": -1");
    EXPECT_NE(error_of(doc).find("u_max"), std::string::npos);

    // defender slower than the attacker
    doc = minimal;
    doc.replace(doc.find("\"u_max\": 2"), 10, "\"u_max\": 0.5");
    EXPECT_FALSE(error_of(doc).empty());

    doc = minimal;
    doc.replace(doc.find("[-0.6, 0.1]"), 11, "[-0.6]");
    EXPECT_NE(error_of(doc).find("players.attacker.pos"), std::string::npos);

    doc = minimal;
    doc.insert(doc.rfind('}'), ", \"policies\": {\"attacker\": \"Teleport\"}");
    EXPECT_NE(error_of(doc).find("unknown attacker policy"), std::string::npos);

    doc = minimal;
    doc.insert(doc.rfind('}'), ", \"render\": {\"window\": [1, 0, 0, 1]}");
    EXPECT_NE(error_of(doc).find("empty window"), std::string::npos);

    doc = minimal;
    doc.insert(doc.rfind('}'), ", \"sim\": {\"dt\": 0.5}");
    EXPECT_NE(error_of(doc).find("dt"), std::string::npos);

    EXPECT_THROW(load_scenario("/nonexistent/x.json"), SchemaError);
}

TEST(Scenario, MalformedJsonLine) {
    const std::string msg = error_of("{\n  \"mu\": 1,\n  \"players\": [,\n}");
    EXPECT_NE(msg.find("doc:3:"), std::string::npos) << msg;
    EXPECT_NE(msg.find("malformed"), std::string::npos);
}

TEST(Csv, TraceFormat) {
    const Scenario s = load_scenario(scenario_path("case3")).scenario;
    const GameTrace tr = run(s);
    std::ostringstream os;
    write_trace_csv(os, tr);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,xA,yA,vAx,vAy,xD,yD,vDx,vDy,uA,thetaA,uD,thetaD,distAD,distAT");
    std::size_t rows = 0;
    std::string last;
    while (std::getline(in, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 14);
        last = line;
        ++rows;
    }
    EXPECT_EQ(rows, tr.rows.size());
    // every value reads back exactly
    std::vector<double> v;
    std::stringstream ss(last);
    for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::strtod(cell.c_str(), nullptr));
    ASSERT_EQ(v.size(), 15u);
    EXPECT_EQ(v[0], tr.rows.back().t);
    EXPECT_EQ(v[1], tr.rows.back().attacker.pos.x);
    EXPECT_EQ(v[14], tr.rows.back().dist_at);
    EXPECT_NEAR(v[14], 0.330, 0.01);
    EXPECT_EQ(fmt17(0.1), "0.10000000000000001");
}

TEST(Csv, BundledCaseMatchesLibrary) {
    GameConfig c{{{{-2, 3}, {-1, 0}}, {1, 1}}, {{{-3, -2}, {0, 2}}, {2, 1}}, {0, 0}};
    Scenario direct;
    direct.cfg = c;
    const Scenario bundled = load_scenario(scenario_path("case1")).scenario;
    const GameTrace a = run(bundled), b = run(direct);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    EXPECT_EQ(a.rows.back().attacker.pos.x, b.rows.back().attacker.pos.x);
    EXPECT_EQ(a.payoff, b.payoff);
}

TEST(Csv, RegionGrid) {
    const GameConfig cfg = load_scenario(scenario_path("case3")).scenario.cfg;
    const DominanceAnalysis an(cfg);
    const RegionGrid g = region_map(an, {-1, 0, -0.3, 0.7}, 4, 3);
    std::ostringstream os;
    write_region_csv(os, g);
    const std::string s = os.str();
    EXPECT_EQ(s.substr(0, 10), "x,y,label\n");
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 13);
}

TEST(Svg, Deterministic) {
    const Scenario s = load_scenario(scenario_path("case2")).scenario;
    const GameTrace tr = run(s);
    EXPECT_EQ(svg_trajectories(s, tr), svg_trajectories(s, run(s)));
    EXPECT_EQ(svg_distances(tr), svg_distances(tr));
    const std::string svg = svg_trajectories(s, tr);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_EQ(svg.find("nan"), std::string::npos);
}

TEST(Svg, RegionLayers) {
    auto render = [](const std::string& name) {
        const ScenarioFile f = load_scenario(scenario_path(name));
        const GameConfig& cfg = f.scenario.cfg;
        const DominanceAnalysis an(cfg);
        const RegionGrid g = region_map(an, f.render.window, 40, 40);
        const BoundaryL L = boundary_L(cfg);
        return svg_region_map(cfg, {&g, &L, nullptr, &an.r3(), {}});
    };
    auto group = [](const std::string& svg, const std::string& id) {
        const std::size_t a = svg.find("<g id=\"" + id + "\"");
        if (a == std::string::npos) return std::string();
        return svg.substr(a, svg.find("</g>", a) - a);
    };
    const std::string at_rest = render("case3");
    EXPECT_EQ(at_rest, render("case3"));
    EXPECT_NE(group(at_rest, "L").find(" Z\""), std::string::npos);
    EXPECT_EQ(group(at_rest, "R_III").find("<path"), std::string::npos);
    const std::string sp1 = render("special_case1");
    EXPECT_NE(group(sp1, "R_III").find("<path"), std::string::npos);
}

TEST(Svg, EmptyWindow) {
    const GameConfig cfg = load_scenario(scenario_path("case3")).scenario.cfg;
    const DominanceAnalysis an(cfg);
    EXPECT_THROW(region_map(an, {0, 0, 0, 1}, 10, 10), DomainError);
}

#ifdef RA_CLI
TEST(Cli, ExitCodesAndOutputs) {
    const fs::path dir = fs::temp_directory_path() / "ra_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto sh = [&](const std::string& args) {
        const int rc = std::system((std::string(RA_CLI) + " " + args + " > " + (dir / "stdout.txt").string() + " 2>&1").c_str());
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    };
    EXPECT_EQ(sh("simulate " + scenario_path("case3") + " --out " + dir.string()), 0);
    EXPECT_TRUE(fs::exists(dir / "case3_trace.csv"));
    EXPECT_TRUE(fs::exists(dir / "case3_trajectories.svg"));
    EXPECT_TRUE(fs::exists(dir / "case3_distances.svg"));
    EXPECT_NE(read(dir / "stdout.txt").find("Captured"), std::string::npos);

    EXPECT_EQ(sh("regions " + scenario_path("case3") + " --resolution 20 --window -1,0,-0.3,0.7 --out " + dir.string()), 0);
    EXPECT_TRUE(fs::exists(dir / "case3_regions.svg"));
    EXPECT_EQ(sh("regions " + scenario_path("case3") + " --window 0,0,0,1 --out " + dir.string()), 1);

    EXPECT_EQ(sh("scribe " + scenario_path("case2")), 0);
    EXPECT_NE(read(dir / "stdout.txt").find("circumscribe"), std::string::npos);
    EXPECT_EQ(sh("mrr " + scenario_path("special_case1") + " --out " + dir.string()), 0);
    EXPECT_TRUE(fs::exists(dir / "special_case1_mrr_defender.csv"));

    std::ofstream(dir / "bad.json") << "{\"mu\": -1}";
    EXPECT_EQ(sh("simulate " + (dir / "bad.json").string()), 2);
    EXPECT_NE(sh("frobnicate"), 0);
    fs::remove_all(dir);
}
#endif
