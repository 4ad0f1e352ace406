#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "game.hpp"

namespace ra {

// problems with a scenario document; the message names the line where possible
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RenderSpec {
    Window window{-3, 3, -3, 3};
    int resolution = 200;
};

struct ScenarioFile {
    Scenario scenario;
    RenderSpec render;
};

inline const char* policy_name(AttackerPolicy p) {
    switch (p) {
    case AttackerPolicy::StrategyI: return "StrategyI";
    case AttackerPolicy::PurePursuit: return "PurePursuit";
    case AttackerPolicy::MRR: return "MRR";
    case AttackerPolicy::Constant: return "Constant";
    }
    return "?";
}

inline const char* policy_name(DefenderPolicy p) {
    switch (p) {
    case DefenderPolicy::StrategyI: return "StrategyI";
    case DefenderPolicy::PurePursuit: return "PurePursuit";
    case DefenderPolicy::InterceptR3Crossing: return "InterceptR3Crossing";
    case DefenderPolicy::MatchMrr: return "MatchMrr";
    }
    return "?";
}

namespace detail {

using nlohmann::json;

// line of the last key in `path`, found by walking the quoted keys through the text in order
inline int line_of(const std::string& text, const std::vector<std::string>& path) {
    std::size_t pos = 0;
    for (const auto& key : path) {
        const std::size_t hit = text.find("\"" + key + "\"", pos);
        if (hit == std::string::npos) break;
        pos = hit + 1;
    }
    if (pos == 0) return 1;
    return 1 + int(std::count(text.begin(), text.begin() + std::ptrdiff_t(pos), '\n'));
}

class Reader {
public:
    Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& what) const {
        std::string dotted;
        for (const auto& k : path) dotted += (dotted.empty() ? "" : ".") + k;
        throw SchemaError(source_ + ":" + std::to_string(line_of(text_, path)) + ": " + (dotted.empty() ? "" : dotted + ": ") + what);
    }

    void keys(const json& j, const std::vector<std::string>& path, std::set<std::string> allowed) const {
        if (!j.is_object()) fail(path, "expected an object");
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!allowed.count(it.key())) {
                auto p = path;
                p.push_back(it.key());
                fail(p, "unknown key");
            }
    }

    double number(const json& j, const std::vector<std::string>& path) const {
        if (!j.is_number()) fail(path, "expected a number");
        return j.get<double>();
    }

    Vec2 vec(const json& j, const std::vector<std::string>& path) const {
        if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) fail(path, "expected [x, y]");
        return {j[0].get<double>(), j[1].get<double>()};
    }

    template <class F>
    void optional(const json& j, const std::string& key, const std::vector<std::string>& path, F&& f) const {
        if (!j.contains(key)) return;
        auto p = path;
        p.push_back(key);
        f(j.at(key), p);
    }

    const json& required(const json& j, const std::string& key, const std::vector<std::string>& path) const {
        if (!j.contains(key)) fail(path, "missing key \"" + key + "\"");
        return j.at(key);
    }

private:
    const std::string& text_;
    std::string source_;
};

inline json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

} // namespace detail

inline ScenarioFile parse_scenario(const std::string& text, const std::string& source = "<scenario>") {
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line
        const std::size_t at = std::min<std::size_t>(e.byte, text.size());
        const int line = 1 + int(std::count(text.begin(), text.begin() + std::ptrdiff_t(at), '\n'));
        throw SchemaError(source + ":" + std::to_string(line) + ": malformed JSON");
    }
    const detail::Reader rd(text, source);
    rd.keys(j, {}, {"name", "players", "mu", "target", "policies", "sim", "render"});

    ScenarioFile f;
    Scenario& s = f.scenario;
    s.name = j.value("name", std::string("scenario"));
    if (j.contains("name") && !j["name"].is_string()) rd.fail({"name"}, "expected a string");

    const double mu = rd.number(rd.required(j, "mu", {}), {"mu"});
    if (!(mu > 0.0)) rd.fail({"mu"}, "mu must be positive");
    const json& players = rd.required(j, "players", {});
    rd.keys(players, {"players"}, {"attacker", "defender"});
    for (const char* who : {"attacker", "defender"}) {
        const std::vector<std::string> path{"players", who};
        const json& pj = rd.required(players, who, {"players"});
        rd.keys(pj, path, {"pos", "vel", "u_max"});
        Player& pl = std::string(who) == "attacker" ? s.cfg.attacker : s.cfg.defender;
        pl.state.pos = rd.vec(rd.required(pj, "pos", path), {"players", who, "pos"});
        pl.state.vel = {0, 0};
        rd.optional(pj, "vel", path, [&](const json& v, auto p) { pl.state.vel = rd.vec(v, p); });
        pl.params.u_max = rd.number(rd.required(pj, "u_max", path), {"players", who, "u_max"});
        pl.params.mu = mu;
        if (!(pl.params.u_max >= 0.0)) rd.fail({"players", who, "u_max"}, "u_max must be non-negative");
    }
    s.cfg.target = {0, 0};
    rd.optional(j, "target", {}, [&](const json& v, auto p) { s.cfg.target = rd.vec(v, p); });

    rd.optional(j, "policies", {}, [&](const json& pj, auto path) {
        rd.keys(pj, path, {"attacker", "defender", "attacker_constant"});
        rd.optional(pj, "attacker", path, [&](const json& v, auto p) {
            for (auto a : {AttackerPolicy::StrategyI, AttackerPolicy::PurePursuit, AttackerPolicy::MRR, AttackerPolicy::Constant})
                if (v.is_string() && v.get<std::string>() == policy_name(a)) return void(s.attacker = a);
            rd.fail(p, "unknown attacker policy");
        });
        rd.optional(pj, "defender", path, [&](const json& v, auto p) {
            for (auto d : {DefenderPolicy::StrategyI, DefenderPolicy::PurePursuit, DefenderPolicy::InterceptR3Crossing,
                           DefenderPolicy::MatchMrr})
                if (v.is_string() && v.get<std::string>() == policy_name(d)) return void(s.defender = d);
            rd.fail(p, "unknown defender policy");
        });
        rd.optional(pj, "attacker_constant", path, [&](const json& v, auto p) {
            rd.keys(v, p, {"u", "theta"});
            auto pu = p, pt = p;
            pu.push_back("u");
            pt.push_back("theta");
            const double u = rd.number(rd.required(v, "u", p), pu);
            if (u < 0.0) rd.fail(pu, "u must be non-negative");
            s.attacker_constant = Control(u, rd.number(rd.required(v, "theta", p), pt));
        });
    });

    rd.optional(j, "sim", {}, [&](const json& sj, auto path) {
        rd.keys(sj, path, {"dt", "t_max", "eps_capture", "eps_target", "l_samples"});
        rd.optional(sj, "dt", path, [&](const json& v, auto p) { s.dt = rd.number(v, p); });
        rd.optional(sj, "t_max", path, [&](const json& v, auto p) { s.t_max = rd.number(v, p); });
        rd.optional(sj, "eps_capture", path, [&](const json& v, auto p) { s.eps_capture = rd.number(v, p); });
        rd.optional(sj, "eps_target", path, [&](const json& v, auto p) { s.eps_target = rd.number(v, p); });
        rd.optional(sj, "l_samples", path, [&](const json& v, auto p) {
            if (!v.is_number_integer() || v.get<int>() < 2) rd.fail(p, "expected an integer >= 2");
            s.l_samples = v.get<int>();
        });
    });
    if (!j.contains("sim") || !j["sim"].contains("t_max")) s.t_max = 10.0 / mu;

    rd.optional(j, "render", {}, [&](const json& rj, auto path) {
        rd.keys(rj, path, {"window", "resolution"});
        rd.optional(rj, "window", path, [&](const json& v, auto p) {
            if (!v.is_array() || v.size() != 4) rd.fail(p, "expected [xmin, xmax, ymin, ymax]");
            double w[4];
            for (int i = 0; i < 4; ++i) w[i] = rd.number(v[i], p);
            f.render.window = {w[0], w[1], w[2], w[3]};
            if (!(w[1] > w[0]) || !(w[3] > w[2])) rd.fail(p, "empty window");
        });
        rd.optional(rj, "resolution", path, [&](const json& v, auto p) {
            if (!v.is_number_integer() || v.get<int>() < 2) rd.fail(p, "expected an integer >= 2");
            f.render.resolution = v.get<int>();
        });
    });

    // game-level invariants, reported against the section they come from
    try {
        s.cfg.validate();
    } catch (const DomainError& e) {
        rd.fail({"players"}, e.what());
    }
    try {
        s.validate();
    } catch (const DomainError& e) {
        rd.fail({"sim"}, e.what());
    }
    return f;
}

inline ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

inline std::string dump_scenario(const ScenarioFile& f) {
    using detail::json;
    using detail::vec_json;
    const Scenario& s = f.scenario;
    json j;
    j["name"] = s.name;
    j["mu"] = s.cfg.mu();
    j["target"] = vec_json(s.cfg.target);
    for (auto [key, pl] : {std::pair{"attacker", &s.cfg.attacker}, std::pair{"defender", &s.cfg.defender}})
        j["players"][key] = {{"pos", vec_json(pl->state.pos)}, {"vel", vec_json(pl->state.vel)}, {"u_max", pl->params.u_max}};
    j["policies"] = {{"attacker", policy_name(s.attacker)}, {"defender", policy_name(s.defender)}};
    if (s.attacker == AttackerPolicy::Constant)
        j["policies"]["attacker_constant"] = {{"u", s.attacker_constant.u()}, {"theta", s.attacker_constant.theta()}};
    j["sim"] = {{"dt", s.dt}, {"t_max", s.t_max}, {"eps_capture", s.eps_capture}, {"eps_target", s.eps_target},
                {"l_samples", s.l_samples}};
    const Window& w = f.render.window;
    j["render"] = {{"window", {w.xmin, w.xmax, w.ymin, w.ymax}}, {"resolution", f.render.resolution}};
    return j.dump(2) + "\n";
}

// ---- CSV ----

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_trace_csv(std::ostream& os, const GameTrace& tr) {
    os << "t,xA,yA,vAx,vAy,xD,yD,vDx,vDy,uA,thetaA,uD,thetaD,distAD,distAT\n";
    for (const TraceRow& r : tr.rows) {
        const double v[] = {r.t,
                            r.attacker.pos.x,
                            r.attacker.pos.y,
                            r.attacker.vel.x,
                            r.attacker.vel.y,
                            r.defender.pos.x,
                            r.defender.pos.y,
                            r.defender.vel.x,
                            r.defender.vel.y,
                            r.attacker_ctrl.u(),
                            r.attacker_ctrl.theta(),
                            r.defender_ctrl.u(),
                            r.defender_ctrl.theta(),
                            r.dist_ad,
                            r.dist_at};
        for (std::size_t i = 0; i < std::size(v); ++i) os << (i ? "," : "") << fmt17(v[i]);
        os << "\n";
    }
}

inline void write_region_csv(std::ostream& os, const RegionGrid& g) {
    os << "x,y,label\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 c = g.cell_center(i, j);
            os << fmt17(c.x) << "," << fmt17(c.y) << "," << region_name(g.at(i, j)) << "\n";
        }
}

} // namespace ra
