#pragma once

#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "strategies.hpp"

namespace ra {

enum class AttackerPolicy { StrategyI, PurePursuit, MRR, Constant };
enum class DefenderPolicy { StrategyI, PurePursuit, InterceptR3Crossing, MatchMrr };

struct Scenario {
    std::string name;
    GameConfig cfg;
    AttackerPolicy attacker = AttackerPolicy::StrategyI;
    DefenderPolicy defender = DefenderPolicy::StrategyI;
    Control attacker_constant;  // used by AttackerPolicy::Constant
    double dt = 0.025;
    double t_max = 10.0;
    double eps_capture = 1e-3;
    double eps_target = 1e-2;
    int l_samples = 2048;

    void validate() const {
        cfg.validate();
        if (!(dt > 0.0) || dt > 0.05) throw DomainError("dt must lie in (0, 0.05]");
        if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
        if (!(eps_capture > 0.0) || !(eps_target > 0.0)) throw DomainError("capture and target radii must be positive");
        if (attacker_constant.u() > cfg.attacker.params.u_max) throw DomainError("constant control exceeds u_max");
    }
};

struct TraceRow {
    double t = 0.0;
    PlayerState attacker, defender;
    Control attacker_ctrl, defender_ctrl;
    double dist_ad = 0.0, dist_at = 0.0;
};

enum class Outcome { Captured, TargetReached, Timeout };

inline const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Captured: return "Captured";
    case Outcome::TargetReached: return "TargetReached";
    case Outcome::Timeout: return "Timeout";
    }
    return "?";
}

struct PlannedPoint {
    double t;
    Vec2 point;
    double payoff;
};

struct GameTrace {
    std::vector<TraceRow> rows;
    Outcome outcome = Outcome::Timeout;
    double end_time = 0.0;
    Vec2 end_point;        // attacker position at the end
    double payoff = 0.0;   // distance to target at the end
    std::vector<PlannedPoint> plans;  // strategy-I terminal point recomputed at each step
    std::vector<std::string> events;
};

namespace detail {

inline GameConfig with_states(const GameConfig& cfg, const PlayerState& a, const PlayerState& d) {
    GameConfig c = cfg;
    c.attacker.state = a;
    c.defender.state = d;
    return c;
}

inline std::string stamp(double t, const std::string& what) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "t=%.4f ", t);
    return buf + what;
}

} // namespace detail

inline GameTrace run(const Scenario& s) {
    s.validate();
    GameTrace tr;
    const GameConfig& cfg0 = s.cfg;
    PlayerState A = cfg0.attacker.state, D = cfg0.defender.state;
    double t = 0.0;
    double thetaA = 0.0, thetaD = 0.0;
    const StrategyOptions sopt{s.l_samples};
    // last successful strategy-I plan, kept with its absolute arrival time
    std::optional<TerminalPlan> last;
    double last_tf = 0.0;

    // the MRR attacker commits to one R_III point and its arrival time
    std::optional<TerminalPlan> mrr;
    if (s.attacker == AttackerPolicy::MRR || s.defender == DefenderPolicy::MatchMrr) {
        mrr = r3_plan(cfg0, r3_analysis(cfg0));
        if (!mrr) tr.events.push_back(detail::stamp(0.0, "no certified R_III point; MRR players fall back"));
    }

    auto row_at = [&](double tt, const PlayerState& a, const PlayerState& d, Control ca, Control cd) {
        return TraceRow{tt, a, d, ca, cd, dist(a.pos, d.pos), dist(a.pos, s.cfg.target)};
    };
    auto finish = [&](Outcome o, double tt, const PlayerState& a) {
        tr.outcome = o;
        tr.end_time = tt;
        tr.end_point = a.pos;
        tr.payoff = dist(a.pos, s.cfg.target);
    };

    if (dist(A.pos, s.cfg.target) < s.eps_target) {
        tr.rows.push_back(row_at(0.0, A, D, Control(), Control()));
        finish(Outcome::TargetReached, 0.0, A);
        return tr;
    }

    for (;;) {
        const GameConfig cfg = detail::with_states(cfg0, A, D);
        std::optional<TerminalPlan> plan;
        bool plan_failed = false;
        auto get_plan = [&]() -> const TerminalPlan* {
            if (!plan && !plan_failed) {
                try {
                    plan = strategy_one(cfg, sopt);
                    tr.plans.push_back({t, plan->point, plan->payoff});
                    last = plan;
                    last_tf = t + plan->t_f;
                } catch (const std::exception& e) {
                    std::string why = std::string("strategy I unavailable: ") + e.what();
                    // late in the game L can sit wholly inside the ADR; hold the committed point instead
                    if (last && last_tf - t > 1e-9) {
                        try {
                            TerminalPlan held = *last;
                            held.t_f = last_tf - t;
                            held.attacker_ctrl = steer_to(A, cfg.attacker.params, held.point, held.t_f);
                            held.defender_ctrl = steer_to(D, cfg.defender.params, held.point, held.t_f);
                            plan = held;
                            why += "; holding the previous terminal point";
                        } catch (const InfeasibleError&) {
                        }
                    }
                    if (!plan) plan_failed = true;
                    tr.events.push_back(detail::stamp(t, why));
                }
            }
            return plan ? &*plan : nullptr;
        };

        // attacker
        Control ca = pure_pursuit(cfg, Side::Attacker, thetaA);
        double horizon = s.t_max - t;
        const TargetReach reach = can_reach_target(cfg);
        if (reach.feasible) {
            ca = *reach.ctrl;
            horizon = reach.t;
        } else {
            switch (s.attacker) {
            case AttackerPolicy::StrategyI:
                if (auto p = get_plan()) {
                    ca = p->attacker_ctrl;
                    horizon = p->t_f;
                }
                break;
            case AttackerPolicy::PurePursuit: break;
            case AttackerPolicy::Constant: ca = s.attacker_constant; break;
            case AttackerPolicy::MRR:
                if (mrr && mrr->t_f - t > 1e-9) {
                    try {
                        ca = steer_to(A, cfg.attacker.params, mrr->point, mrr->t_f - t);
                        horizon = mrr->t_f - t;
                    } catch (const InfeasibleError&) {
                        tr.events.push_back(detail::stamp(t, "MRR point out of reach, pure pursuit this step"));
                    }
                } else if (auto p = get_plan()) {
                    ca = p->attacker_ctrl;
                }
                break;
            }
        }

        // defender
        Control cd = pure_pursuit(cfg, Side::Defender, thetaD);
        switch (s.defender) {
        case DefenderPolicy::StrategyI:
            if (auto p = get_plan()) cd = p->defender_ctrl;
            break;
        case DefenderPolicy::PurePursuit: break;
        case DefenderPolicy::InterceptR3Crossing: {
            bool done = false;
            if (auto hit = first_reachable_on_path(cfg, ca, horizon, 0.5 * s.eps_capture)) {
                try {
                    cd = steer_to(D, cfg.defender.params, hit->first, hit->second);
                    done = true;
                } catch (const InfeasibleError&) {
                }
            }
            if (!done)
                if (auto p = get_plan()) cd = p->defender_ctrl;
            break;
        }
        case DefenderPolicy::MatchMrr:
            if (mrr && mrr->t_f - t > 1e-9) {
                try {
                    cd = steer_to(D, cfg.defender.params, mrr->point, mrr->t_f - t);
                } catch (const InfeasibleError&) {
                    tr.events.push_back(detail::stamp(t, "defender cannot match the MRR point, pure pursuit this step"));
                }
            }
            break;
        }
        thetaA = ca.theta();
        thetaD = cd.theta();
        tr.rows.push_back(row_at(t, A, D, ca, cd));

        if (t >= s.t_max - 1e-12) {
            finish(Outcome::Timeout, t, A);
            return tr;
        }

        // advance one step, watching for events inside it
        const double h = std::min(s.dt, s.t_max - t);
        auto state_at = [&](double tau) {
            return std::make_pair(propagate(A, cfg.attacker.params, ca, tau), propagate(D, cfg.defender.params, cd, tau));
        };
        auto gap_ad = [&](double tau) {
            auto [a, d] = state_at(tau);
            return dist(a.pos, d.pos) - s.eps_capture;
        };
        auto gap_at = [&](double tau) { return dist(state_at(tau).first.pos, s.cfg.target) - s.eps_target; };
        const std::optional<double> hit_ad = first_entry(gap_ad, h), hit_at = first_entry(gap_at, h);
        if (hit_ad || hit_at) {
            const bool captured = hit_ad && (!hit_at || *hit_ad <= *hit_at);
            const double tau = captured ? *hit_ad : *hit_at;
            auto [a, d] = state_at(tau);
            tr.rows.push_back(row_at(t + tau, a, d, ca, cd));
            finish(captured ? Outcome::Captured : Outcome::TargetReached, t + tau, a);
            return tr;
        }
        std::tie(A, D) = state_at(h);
        t += h;
        if (std::fabs(t - std::round(t / s.dt) * s.dt) < 1e-9) t = std::round(t / s.dt) * s.dt;
    }
}

struct RunSummary {
    std::string name;
    bool ok = false;
    std::string error;
    Outcome outcome = Outcome::Timeout;
    double end_time = 0.0;
    double payoff = 0.0;
    Vec2 end_point;
};

inline RunSummary summarize(const Scenario& s, const GameTrace& tr) {
    return {s.name, true, "", tr.outcome, tr.end_time, tr.payoff, tr.end_point};
}

inline std::vector<RunSummary> sweep(const std::vector<Scenario>& scenarios) {
    std::vector<RunSummary> out(scenarios.size());
    const unsigned workers = std::min<unsigned>(worker_count(), unsigned(std::max<std::size_t>(1, scenarios.size())));
    auto work = [&](unsigned k) {
        for (std::size_t i = k; i < scenarios.size(); i += workers) {
            try {
                out[i] = summarize(scenarios[i], run(scenarios[i]));
            } catch (const std::exception& e) {
                out[i] = {scenarios[i].name, false, e.what(), Outcome::Timeout, 0.0, 0.0, {}};
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < workers; ++k) pool.emplace_back(work, k);
    work(0);
    for (auto& th : pool) th.join();
    return out;
}

} // namespace ra
