#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "dominance.hpp"

namespace ra {

struct TerminalPlan {
    Vec2 point;
    double t_f = 0.0;
    Control attacker_ctrl;
    Control defender_ctrl;
    bool h_zero = false;
    Region region = Region::BoundaryL;
    double payoff = 0.0;  // distance from point to target
};

// co-states at t_f; the velocity components vanish there
struct CostateRecord {
    std::array<double, 4> lambda{};  // defender
    std::array<double, 4> gamma{};   // attacker
    double sigma = 0.0;
};

enum class Side { Attacker, Defender };

namespace detail {

struct Arrival {
    Vec2 dir;      // heading of the saturated control reaching the point
    Vec2 v_final;  // velocity on arrival
};

inline Arrival arrival(const Player& pl, Vec2 x, double t) {
    const Isochron iso = isochron(pl.state, pl.params, t);
    const Vec2 dir = normalized(x - iso.center);
    const Control c(pl.params.u_max, dir.angle());
    return {dir, propagate(pl.state, pl.params, c, t).vel};
}

// matched pair (ia, id) with the closest attacker/defender times
inline std::pair<std::size_t, std::size_t> closest_pair(const PointTimes& pt) {
    std::pair<std::size_t, std::size_t> best{0, 0};
    double bd = 1e300;
    for (std::size_t i = 0; i < pt.a.size(); ++i)
        for (std::size_t k = 0; k < pt.d.size(); ++k)
            if (std::fabs(pt.a[i] - pt.d[k]) < bd) {
                bd = std::fabs(pt.a[i] - pt.d[k]);
                best = {i, k};
            }
    return best;
}

// the "maximal time" category is the middle of three times
inline bool max_category(std::size_t i, std::size_t n) { return n == 3 && i == 1; }

// is this L point a boundary of the ADR (and a legal terminal point)?
inline bool adr_boundary_at(const GameConfig& cfg, Vec2 p, double t) {
    const PointTimes pt = point_times(cfg, p);
    if (pt.a_kind == ReachKind::BoundaryI || pt.a_kind == ReachKind::Cusp) return false;
    const std::size_t ia = nearest_index(pt.a, t), id = nearest_index(pt.d, t);
    return adr_flips(pt.a, pt.d, ia, id);
}

inline Control saturate(const Player& pl, Control c) {
    if (std::fabs(c.u() - pl.params.u_max) <= 1e-9 * pl.params.u_max) return Control(pl.params.u_max, c.theta());
    return c;
}

} // namespace detail

struct HamiltonianResult {
    bool holds = false;
    bool category_match = false;
    double residual = 0.0;
};

inline HamiltonianResult hamiltonian_detail(const GameConfig& cfg, Vec2 x) {
    const PointTimes pt = point_times(cfg, x);
    const auto [ia, id] = detail::closest_pair(pt);
    const double ta = pt.a[ia], td = pt.d[id];
    if (std::fabs(ta - td) > 1e-6 * (1.0 + td)) throw DomainError("point is not on L");
    if (ta <= 0.0) throw Indeterminate("terminal time is zero");
    const auto A = detail::arrival(cfg.attacker, x, ta);
    const auto D = detail::arrival(cfg.defender, x, td);
    const double denA = dot(A.v_final, A.dir), denD = dot(D.v_final, D.dir);
    const double scA = cfg.attacker.params.max_speed() + cfg.attacker.state.vel.norm();
    const double scD = cfg.defender.params.max_speed() + cfg.defender.state.vel.norm();
    if (std::fabs(denA) <= 1e-9 * scA || std::fabs(denD) <= 1e-9 * scD)
        throw Indeterminate("reach-time gradient undefined (tangency with an MRR boundary)");
    const Vec2 gA = A.dir / denA, gD = D.dir / denD;
    const double sA = detail::max_category(ia, pt.a.size()) ? -1.0 : 1.0;
    const double sD = detail::max_category(id, pt.d.size()) ? -1.0 : 1.0;
    HamiltonianResult r;
    r.category_match = sA == sD;
    r.residual = std::fabs(sA * dot(A.v_final, gA) - sD * dot(D.v_final, gD));
    r.holds = r.category_match && r.residual <= 1e-6;
    return r;
}

inline bool hamiltonian_check(const GameConfig& cfg, Vec2 x) { return hamiltonian_detail(cfg, x).holds; }

// gradient of one player's reach time at x, for the matched time t
inline Vec2 reach_time_gradient(const Player& pl, Vec2 x, double t) {
    const auto a = detail::arrival(pl, x, t);
    const double den = dot(a.v_final, a.dir);
    if (den == 0.0) throw Indeterminate("reach-time gradient undefined");
    return a.dir / den;
}

inline CostateRecord terminal_costates(const GameConfig& cfg, const TerminalPlan& plan) {
    const Vec2 gA = reach_time_gradient(cfg.attacker, plan.point, plan.t_f);
    const Vec2 gD = reach_time_gradient(cfg.defender, plan.point, plan.t_f);
    const Vec2 w = gA - gD;
    const Vec2 xhat = normalized(plan.point - cfg.target);
    CostateRecord c;
    c.sigma = w.norm2() > 0.0 ? -dot(xhat, w) / w.norm2() : 0.0;
    c.lambda = {c.sigma * gD.x, c.sigma * gD.y, 0.0, 0.0};
    c.gamma = {-c.sigma * gA.x, -c.sigma * gA.y, 0.0, 0.0};
    return c;
}

inline TerminalPlan make_plan(const GameConfig& cfg, Vec2 x, double t) {
    TerminalPlan plan;
    plan.point = x;
    plan.t_f = t;
    plan.attacker_ctrl = detail::saturate(cfg.attacker, steer_to(cfg.attacker.state, cfg.attacker.params, x, t));
    plan.defender_ctrl = detail::saturate(cfg.defender, steer_to(cfg.defender.state, cfg.defender.params, x, t));
    plan.payoff = dist(x, cfg.target);
    try {
        plan.h_zero = hamiltonian_check(cfg, x);
    } catch (const std::exception&) {
        plan.h_zero = false;
    }
    return plan;
}

inline bool target_in_adr(const GameConfig& cfg) {
    const PointTimes pt = point_times(cfg, cfg.target);
    return in_adr(pt.a, pt.d);
}

struct TargetReach {
    bool feasible = false;
    std::optional<Control> ctrl;
    double t = 0.0;
};

// R_I test for the target itself
inline TargetReach can_reach_target(const GameConfig& cfg) {
    const PointTimes pt = point_times(cfg, cfg.target);
    for (double ta : pt.a) {
        if (!adr_time(ta, pt.d, time_tol(ta))) continue;
        if (!safe_path(cfg, cfg.target, ta)) continue;
        TargetReach r;
        r.feasible = true;
        r.t = ta;
        r.ctrl = ta > 0.0 ? steer_to(cfg.attacker.state, cfg.attacker.params, cfg.target, ta) : Control(0.0, 0.0);
        return r;
    }
    return {};
}

struct StrategyOptions {
    int samples = 2048;
};

// closest ADR-boundary point of L to the target, both players saturated with constant heading
inline TerminalPlan strategy_one(const GameConfig& cfg, const StrategyOptions& opt = {}) {
    cfg.validate();
    // only a safely reachable target ends the game; an R_II target still needs a capture point
    if (can_reach_target(cfg).feasible) throw AttackerWins("target is safely reachable");
    const BoundaryL L = sweep_L(cfg, opt.samples, false);
    if (L.empty()) throw NoCapture();

    struct Cand {
        double payoff, t, angle;
        std::size_t seg, idx;
    };
    std::vector<Cand> cands;
    for (std::size_t s = 0; s < L.segments.size(); ++s)
        for (std::size_t i = 0; i < L.segments[s].v.size(); ++i) {
            const auto& v = L.segments[s].v[i];
            const Vec2 rel = v.p - cfg.target;
            cands.push_back({rel.norm(), v.t, wrap_angle(rel.angle()), s, i});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (std::fabs(a.payoff - b.payoff) > 1e-12) return a.payoff < b.payoff;
        if (std::fabs(a.t - b.t) > 1e-12) return a.t < b.t;
        return a.angle < b.angle;
    });
    for (const Cand& c : cands) {
        const auto& seg = L.segments[c.seg];
        const LVertex& v = seg.v[c.idx];
        if (!detail::adr_boundary_at(cfg, v.p, v.t)) continue;
        Vec2 best = v.p;
        double tb = v.t;
        if (v.side != 0 && seg.v.size() > 2) {
            const std::size_t n = seg.v.size();
            const LVertex& a = seg.v[(c.idx + n - 1) % n];
            const LVertex& b = seg.v[(c.idx + 1) % n];
            double lo = std::min(a.t, b.t), hi = std::max(a.t, b.t);
            lo = std::max(lo, seg.t_begin);
            hi = std::min(hi, seg.t_end);
            auto f = [&](double t) { return dist(l_vertex(cfg, t, v.side).p, cfg.target); };
            const double tr = golden_min(f, lo, hi, 1e-13);
            const Vec2 pr = l_vertex(cfg, tr, v.side).p;
            if (dist(pr, cfg.target) < c.payoff && detail::adr_boundary_at(cfg, pr, tr)) {
                best = pr;
                tb = tr;
            }
        }
        return make_plan(cfg, best, tb);
    }
    throw NoCapture("no point of L bounds the attacker dominance region");
}

// reduced thrust so the attacker arrives exactly at the defender's second reach time
inline Control mrr_strategy(const GameConfig& cfg, Vec2 x) {
    const PointTimes pt = point_times(cfg, x);
    if (pt.d.size() != 3) throw DomainError("point is outside the defender's MRR");
    return steer_to(cfg.attacker.state, cfg.attacker.params, x, pt.d[1]);
}

// best R_III terminal point: nearest certified component point to the target, nudged inside
inline std::optional<TerminalPlan> r3_plan(const GameConfig& cfg, const R3Analysis& r3) {
    std::optional<TerminalPlan> best;
    for (const auto& comp : r3.components) {
        const auto& poly = comp.polygon;
        std::size_t e = 0;
        const Vec2 c = closest_on_polygon(poly, cfg.target, &e);
        const Vec2 a = poly[e], b = poly[(e + 1) % poly.size()];
        Vec2 inward = normalized(perp(b - a));
        if (signed_area(poly) < 0.0) inward = -inward;
        for (double eps : {1e-7, 1e-6, 1e-5, 1e-4}) {
            const Vec2 x = c + inward * eps;
            const PointTimes pt = point_times(cfg, x);
            if (!r3_candidate(pt) || !contains(poly, x)) continue;
            const double td2 = pt.d[1];
            TerminalPlan plan;
            plan.point = x;
            plan.t_f = td2;
            try {
                plan.attacker_ctrl = steer_to(cfg.attacker.state, cfg.attacker.params, x, td2);
                plan.defender_ctrl = detail::saturate(cfg.defender, steer_to(cfg.defender.state, cfg.defender.params, x, td2));
            } catch (const InfeasibleError&) {
                continue;
            }
            plan.region = Region::RIII;
            plan.payoff = dist(x, cfg.target);
            if (!best || plan.payoff < best->payoff) best = plan;
            break;
        }
    }
    return best;
}

inline Control pure_pursuit(const GameConfig& cfg, Side who, double previous_theta = 0.0) {
    const Vec2 from = who == Side::Attacker ? cfg.attacker.state.pos : cfg.defender.state.pos;
    const Vec2 to = who == Side::Attacker ? cfg.target : cfg.attacker.state.pos;
    const double u = who == Side::Attacker ? cfg.attacker.params.u_max : cfg.defender.params.u_max;
    const Vec2 d = to - from;
    return Control(u, d.norm2() > 0.0 ? d.angle() : previous_theta);
}

struct Apollonius {
    Vec2 center;
    double radius = 0.0;
};

inline Apollonius apollonius_circle(const GameConfig& cfg) {
    const double a = cfg.alpha();
    const Vec2 xa = cfg.attacker.state.pos, xd = cfg.defender.state.pos;
    return {(xa - xd * (a * a)) / (1.0 - a * a), a * dist(xa, xd) / (1.0 - a * a)};
}

inline TerminalPlan apollonius_plan(const GameConfig& cfg) {
    cfg.validate();
    if (cfg.attacker.state.vel.norm2() != 0.0 || cfg.defender.state.vel.norm2() != 0.0)
        throw DomainError("apollonius_plan needs both players at rest");
    const Apollonius ap = apollonius_circle(cfg);
    const Vec2 rel = cfg.target - ap.center;
    if (rel.norm() <= ap.radius) throw AttackerWins();
    const Vec2 x = ap.center + normalized(rel) * ap.radius;
    // invert the attacker's radius (u/mu) G(t) = |x - x_A0|
    const double r = dist(x, cfg.attacker.state.pos);
    const double mu = cfg.mu(), k = cfg.attacker.params.u_max / mu;
    auto f = [&](double t) { return k * spread(mu, t) - r; };
    const double t = find_zero_open(f, 0.0, 1.0 / mu, 1e6 / mu, 1e-13).value_or(0.0);
    TerminalPlan plan = make_plan(cfg, x, t);
    return plan;
}

// earliest moment the defender can get within `reach` of the attacker's committed path;
// returns the defender's aim point (inside its isochron) and that time
inline std::optional<std::pair<Vec2, double>> first_reachable_on_path(const GameConfig& cfg, const Control& ca, double t_f,
                                                                      double reach = 0.0, int samples = 400) {
    auto attacker_at = [&](double t) { return propagate(cfg.attacker.state, cfg.attacker.params, ca, t).pos; };
    auto gap = [&](double t) {
        const Isochron iso = defender_iso(cfg, t);
        return dist(attacker_at(t), iso.center) - iso.radius - reach;
    };
    // first_entry bisects onto the inside end, which keeps steer_to feasible
    const auto tc = first_entry(gap, t_f, samples);
    if (!tc) return std::nullopt;
    const Vec2 xa = attacker_at(*tc);
    const Isochron iso = defender_iso(cfg, *tc);
    const Vec2 rel = xa - iso.center;
    const double r = rel.norm();
    const Vec2 aim = r <= iso.radius ? xa : iso.center + rel * (iso.radius / r);
    return std::make_pair(aim, *tc);
}

} // namespace ra
