#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "geometry.hpp"
#include "mrr.hpp"

namespace ra {

struct Player {
    PlayerState state;
    PlayerParams params;
};

struct GameConfig {
    Player attacker;
    Player defender;
    Vec2 target{};

    double mu() const { return attacker.params.mu; }
    double alpha() const { return attacker.params.u_max / defender.params.u_max; }

    void validate() const {
        attacker.params.validate();
        defender.params.validate();
        if (attacker.params.mu != defender.params.mu) throw DomainError("both players must share the damping factor mu");
        if (!(attacker.params.u_max < defender.params.u_max)) throw DomainError("attacker thrust must be below defender thrust");
        for (const Player* p : {&attacker, &defender}) {
            const double vmax = p->params.max_speed();
            if (p->state.vel.norm() > vmax + 1e-9 * (1.0 + vmax)) throw DomainError("initial speed exceeds u_max/mu");
            if (!finite(p->state.pos) || !finite(p->state.vel)) throw DomainError("non-finite state");
        }
        if (!finite(target)) throw DomainError("non-finite target");
        if (!(dist(attacker.state.pos, defender.state.pos) > 0.0)) throw DomainError("attacker starts captured");
    }
};

inline ScribeProblem scribe_problem(const GameConfig& cfg, ScribeMode mode) {
    return {cfg.attacker.state.pos - cfg.defender.state.pos, cfg.attacker.state.vel - cfg.defender.state.vel,
            cfg.mu(), cfg.attacker.params.u_max, cfg.defender.params.u_max, mode};
}

inline RootSet circumscribe_times(const GameConfig& cfg) { return scribe_times(scribe_problem(cfg, ScribeMode::Circumscribe)); }
inline RootSet inscribe_times(const GameConfig& cfg) { return scribe_times(scribe_problem(cfg, ScribeMode::Inscribe)); }

inline Isochron attacker_iso(const GameConfig& cfg, double t) { return isochron(cfg.attacker.state, cfg.attacker.params, t); }
inline Isochron defender_iso(const GameConfig& cfg, double t) { return isochron(cfg.defender.state, cfg.defender.params, t); }

// side +1 / -1 picks the intersection left / right of the A->D center line; clamps h at tangency
inline Vec2 intersection_point(const Isochron& a, const Isochron& d, int side) {
    const Vec2 ad = d.center - a.center;
    const double l = ad.norm();
    if (l == 0.0) return a.center;
    const Vec2 e = ad / l;
    const double x = (a.radius * a.radius - d.radius * d.radius + l * l) / (2.0 * l);
    const double h = std::sqrt(std::max(0.0, a.radius * a.radius - x * x));
    return a.center + e * x + perp(e) * (h * side);
}

// contact point of two tangent isochrons (external or internal)
inline Vec2 tangency_point(const Isochron& a, const Isochron& d) {
    const Vec2 da = a.center - d.center;
    const double l = da.norm();
    return l > 0.0 ? d.center + da * (d.radius / l) : d.center;
}

inline std::vector<Vec2> isochron_intersections(const GameConfig& cfg, double t) {
    const Isochron a = attacker_iso(cfg, t), d = defender_iso(cfg, t);
    const double l = dist(a.center, d.center);
    const double tol = 1e-8 * (1.0 + l);
    if (std::fabs(l - (a.radius + d.radius)) < tol || (l > 0.0 && std::fabs(l - std::fabs(a.radius - d.radius)) < tol)) {
        if (a.radius == 0.0 && d.radius == 0.0) return {};
        return {tangency_point(a, d)};
    }
    if (l > a.radius + d.radius || l < std::fabs(a.radius - d.radius) || l == 0.0) return {};
    return {intersection_point(a, d, +1), intersection_point(a, d, -1)};
}

// ---- reach-time bookkeeping ----

inline double time_tol(double t) { return 1e-9 * (1.0 + std::fabs(t)); }

struct PointTimes {
    std::vector<double> a, d;  // expanded, sorted
    ReachKind a_kind = ReachKind::Single, d_kind = ReachKind::Single;
};

inline PointTimes point_times(const GameConfig& cfg, Vec2 x) {
    auto ca = classify(x, cfg.attacker.state, cfg.attacker.params);
    auto cd = classify(x, cfg.defender.state, cfg.defender.params);
    return {std::move(ca.times), std::move(cd.times), ca.kind, cd.kind};
}

// attacker time ta beats the defender: before its first arrival, or inside its unreachable window
inline bool adr_time(double ta, const std::vector<double>& d, double tol) {
    if (ta < d[0] - tol) return true;
    return d.size() == 3 && ta > d[1] + tol && ta < d[2] - tol;
}

inline bool in_adr(const std::vector<double>& a, const std::vector<double>& d, double tol_scale = 1.0) {
    for (double ta : a)
        if (adr_time(ta, d, tol_scale * time_tol(ta))) return true;
    return false;
}

inline std::size_t nearest_index(const std::vector<double>& ts, double t) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (std::fabs(ts[i] - t) < std::fabs(ts[best] - t)) best = i;
    return best;
}

// does pushing a[ia] across d[id] move the point in or out of the ADR?
inline bool adr_flips(std::vector<double> a, const std::vector<double>& d, std::size_t ia, std::size_t id) {
    const double delta = 1e-7 * (1.0 + d[id]);
    a[ia] = d[id] - delta;
    const bool before = in_adr(a, d, 0.0);
    a[ia] = d[id] + delta;
    return before != in_adr(a, d, 0.0);
}

// constant-heading saturated path to x arriving at ta stays outside the defender's discs
inline bool safe_path(const GameConfig& cfg, Vec2 x, double ta, int samples = 200) {
    if (ta <= 0.0) return true;
    Control c;
    try {
        c = steer_to(cfg.attacker.state, cfg.attacker.params, x, ta);
    } catch (const InfeasibleError&) {
        return false;
    }
    for (int i = 0; i < samples; ++i) {
        const double t = ta * i / samples;
        const Vec2 xa = propagate(cfg.attacker.state, cfg.attacker.params, c, t).pos;
        const Isochron iso = defender_iso(cfg, t);
        if (!(dist(xa, iso.center) > iso.radius)) return false;
    }
    return true;
}

// ---- boundary L ----

struct LVertex {
    Vec2 p;
    double t = 0.0;
    int side = 0;  // +1, -1, 0 at a tangency point
    // matched reach-time indices (zero-based into the expanded lists) and list sizes
    int ia = 0, id = 0, na = 0, nd = 0;
};

struct LSegment {
    double t_begin = 0.0, t_end = 0.0;
    bool ends_at_inscribe = false;
    std::vector<LVertex> v;  // closed loop: tangency(begin), side +1 ascending, tangency(end), side -1 descending
};

struct BoundaryL {
    RootSet circumscribe, inscribe;
    double t_out = 0.0, t_in = 0.0;
    std::vector<LSegment> segments;
    bool empty() const { return segments.empty(); }
};

struct LInterval {
    double a, b;
    bool ends_at_inscribe;
};

// time windows in [t_out, t_in] where the isochrons overlap
inline std::vector<LInterval> l_intervals(const GameConfig& cfg, const RootSet& circ, double t_in) {
    std::vector<double> ev;
    for (double c : circ.times)
        if (c < t_in) ev.push_back(c);
    ev.push_back(t_in);
    const ScribeProblem out = scribe_problem(cfg, ScribeMode::Circumscribe);
    std::vector<LInterval> iv;
    for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
        const double m = 0.5 * (ev[i] + ev[i + 1]);
        if (gamma(out, m) < 0.0) iv.push_back({ev[i], ev[i + 1], i + 2 == ev.size()});
    }
    if (iv.empty() && !ev.empty() && ev.size() == 1) iv.push_back({t_in, t_in, true});
    return iv;
}

inline void annotate(const GameConfig& cfg, LVertex& v, PointTimes* keep = nullptr) {
    PointTimes pt = point_times(cfg, v.p);
    v.na = int(pt.a.size());
    v.nd = int(pt.d.size());
    v.ia = int(nearest_index(pt.a, v.t));
    v.id = int(nearest_index(pt.d, v.t));
    if (keep) *keep = std::move(pt);
}

inline LVertex l_vertex(const GameConfig& cfg, double t, int side) {
    const Isochron a = attacker_iso(cfg, t), d = defender_iso(cfg, t);
    return {side == 0 ? tangency_point(a, d) : intersection_point(a, d, side), t, side};
}

// cosine spacing crowds samples at the tangency ends where the intersections move fastest
inline std::vector<double> sweep_times(double a, double b, int samples) {
    std::vector<double> ts;
    const double pi = std::numbers::pi;
    for (int i = 1; i + 1 < samples; ++i) ts.push_back(a + (b - a) * 0.5 * (1.0 - std::cos(pi * i / (samples - 1))));
    return ts;
}

inline BoundaryL sweep_L(const GameConfig& cfg, int samples, bool with_pairs) {
    if (samples < 2) throw DomainError("boundary_L needs at least 2 samples");
    BoundaryL L;
    L.circumscribe = circumscribe_times(cfg);
    L.inscribe = inscribe_times(cfg);
    if (L.circumscribe.empty() || L.inscribe.empty()) return L;
    L.t_out = L.circumscribe.times.front();
    L.t_in = L.inscribe.times.front();
    for (const auto& iv : l_intervals(cfg, L.circumscribe, L.t_in)) {
        LSegment seg{iv.a, iv.b, iv.ends_at_inscribe, {}};
        seg.v.push_back(l_vertex(cfg, iv.a, 0));
        if (iv.b - iv.a > 1e-12) {
            const auto ts = sweep_times(iv.a, iv.b, samples);
            for (double t : ts) seg.v.push_back(l_vertex(cfg, t, +1));
            seg.v.push_back(l_vertex(cfg, iv.b, 0));
            for (auto it = ts.rbegin(); it != ts.rend(); ++it) seg.v.push_back(l_vertex(cfg, *it, -1));
        }
        if (with_pairs)
            for (auto& v : seg.v) annotate(cfg, v);
        L.segments.push_back(std::move(seg));
    }
    return L;
}

inline BoundaryL boundary_L(const GameConfig& cfg, int samples = 2048) {
    cfg.validate();
    return sweep_L(cfg, samples, true);
}

// ---- R_III certificates ----

enum class Region { RI, RII, RIII, DefenderDominated, BoundaryL, BoundaryMrr };

inline const char* region_name(Region r) {
    switch (r) {
    case Region::RI: return "R_I";
    case Region::RII: return "R_II";
    case Region::RIII: return "R_III";
    case Region::DefenderDominated: return "DefenderDominated";
    case Region::BoundaryL: return "BoundaryL";
    case Region::BoundaryMrr: return "BoundaryMrr";
    }
    return "?";
}

enum class R3Condition { Cond1, Cond2, Continuation };

inline const char* condition_name(R3Condition c) {
    switch (c) {
    case R3Condition::Cond1: return "Cond1";
    case R3Condition::Cond2: return "Cond2";
    case R3Condition::Continuation: return "Continuation";
    }
    return "?";
}

struct R3Component {
    Polygon polygon;
    R3Condition tag = R3Condition::Cond1;
};

struct R3Analysis {
    std::vector<R3Component> components;
    std::vector<Polygon> ambiguous;  // candidate pieces no certificate covers
    std::vector<std::string> notes;
};

struct R3Options {
    int samples = 512;
    bool continuation = true;
    double continuation_step = 0.01;
    int continuation_levels = 60;
};

// defender has three distinct times and the attacker's earliest falls in [t_D1, t_D2]
inline bool r3_candidate(const PointTimes& pt) {
    return pt.d.size() == 3 && pt.d[0] < pt.a[0] && pt.a[0] < pt.d[1];
}

namespace detail {

enum class Exit { TangentBII, CrossBII, Other };

struct Arc {
    std::vector<Vec2> pts;
    Exit e0 = Exit::Other, e1 = Exit::Other;
    double s0 = 0, s1 = 0;  // parameter along B_II for the ends
    bool has_first = false;  // some vertex matched t_D1
    bool closed = false;
    const LSegment* seg = nullptr;
};

inline bool edge_flag(const LVertex& v) { return v.nd == 3 && v.ia == 0 && (v.id == 0 || v.id == 1); }

inline double bii_param(const std::vector<Vec2>& bii, Vec2 p) {
    auto h = nearest_on_polyline(bii, p);
    return double(h.segment) + h.frac;
}

inline Vec2 bii_at(const std::vector<Vec2>& bii, double s) {
    std::size_t i = std::min<std::size_t>(std::size_t(std::max(0.0, s)), bii.size() - 2);
    double f = s - double(i);
    return bii[i] + (bii[i + 1] - bii[i]) * f;
}

// walk from flagged vertex u toward unflagged w and locate the switch point
inline std::pair<LVertex, LVertex> refine_end(const GameConfig& cfg, LVertex u, LVertex w) {
    const int side = u.side != 0 ? u.side : w.side;
    double tin = u.t, tout = w.t;
    LVertex vin = u, vout = w;
    for (int i = 0; i < 45 && std::fabs(tout - tin) > 1e-13; ++i) {
        double tm = 0.5 * (tin + tout);
        LVertex m = l_vertex(cfg, tm, side);
        annotate(cfg, m);
        if (edge_flag(m)) { tin = tm; vin = m; }
        else { tout = tm; vout = m; }
    }
    return {vin, vout};
}

inline bool centers_apart(const GameConfig& cfg, double a, double b) {
    for (int i = 0; i <= 200; ++i) {
        double t = a + (b - a) * i / 200.0;
        Isochron A = attacker_iso(cfg, t), D = defender_iso(cfg, t);
        if (!(dist(A.center, D.center) > D.radius)) return false;
    }
    return true;
}

inline bool overlaps(const Polygon& p, const Polygon& q) {
    for (Vec2 v : q)
        if (contains(p, v)) return true;
    for (Vec2 v : p)
        if (contains(q, v)) return true;
    return false;
}

} // namespace detail

inline R3Analysis r3_analysis(const GameConfig& cfg, const R3Options& opt = {}) {
    using namespace detail;
    R3Analysis out;
    cfg.validate();
    if (cfg.defender.state.vel.norm2() == 0.0) return out;  // no defender MRR

    const BoundaryL L = sweep_L(cfg, opt.samples, true);
    const MrrBoundary mD = build_mrr_boundary(cfg.defender.state, cfg.defender.params, opt.samples);
    std::vector<Vec2> bii;
    for (auto& v : mD.branch_II()) bii.push_back(v.p);
    std::vector<Vec2> bi;
    for (auto* arm : {&mD.branch_I_plus, &mD.branch_I_minus})
        for (auto& v : *arm) bi.push_back(v.p);

    std::vector<Arc> arcs;
    std::vector<std::pair<Polygon, bool>> mixed;  // polygon, came from a closed loop

    for (const auto& seg : L.segments) {
        const auto& V = seg.v;
        const std::size_t n = V.size();
        if (n < 3) continue;
        std::vector<char> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = edge_flag(V[i]);
        if (std::all_of(f.begin(), f.end(), [](char c) { return c; })) {
            Arc a;
            a.closed = true;
            a.seg = &seg;
            for (auto& v : V) {
                a.pts.push_back(v.p);
                a.has_first |= v.id == 0;
            }
            arcs.push_back(std::move(a));
            continue;
        }
        // maximal cyclic runs of flagged vertices
        std::size_t start = 0;
        while (f[start]) ++start;  // an unflagged vertex exists
        for (std::size_t k = 1; k <= n; ++k) {
            std::size_t i = (start + k) % n;
            if (!f[i] || f[(i + n - 1) % n]) continue;
            // run begins at i
            std::size_t j = i;
            while (f[(j + 1) % n]) j = (j + 1) % n;
            const std::size_t before = (i + n - 1) % n, after = (j + 1) % n;
            auto [p0, o0] = refine_end(cfg, V[i], V[before]);
            auto [p1, o1] = refine_end(cfg, V[j], V[after]);
            Arc a;
            a.seg = &seg;
            a.pts.push_back(p0.p);
            for (std::size_t q = i;; q = (q + 1) % n) {
                a.pts.push_back(V[q].p);
                a.has_first |= V[q].id == 0;
                if (q == j) break;
            }
            a.pts.push_back(p1.p);
            auto exit_of = [&](const LVertex& o, Vec2 p) {
                if (o.nd == 3 && o.id == 2) return Exit::TangentBII;
                if (o.nd < 3 && !bii.empty()) {
                    double dII = nearest_on_polyline(bii, p).distance;
                    double dI = bi.empty() ? 1e300 : nearest_on_polyline(bi, p).distance;
                    if (dII < dI) return Exit::CrossBII;
                }
                return Exit::Other;
            };
            a.e0 = exit_of(o0, p0.p);
            a.e1 = exit_of(o1, p1.p);
            if (a.e0 != Exit::Other) a.s0 = bii_param(bii, p0.p);
            if (a.e1 != Exit::Other) a.s1 = bii_param(bii, p1.p);
            arcs.push_back(std::move(a));
        }
    }

    // closed loops first
    for (const auto& a : arcs) {
        if (!a.closed) continue;
        const bool cond1 = !a.seg->ends_at_inscribe && centers_apart(cfg, a.seg->t_begin, a.seg->t_end);
        if (cond1) out.components.push_back({a.pts, R3Condition::Cond1});
        else mixed.push_back({a.pts, true});
    }

    // chain open arcs through pieces of B_II
    struct End { std::size_t arc; int end; double s; };
    std::vector<End> ends;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (arcs[i].closed) continue;
        if (arcs[i].e0 == Exit::Other || arcs[i].e1 == Exit::Other) {
            out.ambiguous.push_back(arcs[i].pts);
            out.notes.push_back("candidate arc leaves the defender MRR away from B_II; no certificate");
            continue;
        }
        ends.push_back({i, 0, arcs[i].s0});
        ends.push_back({i, 1, arcs[i].s1});
    }
    std::sort(ends.begin(), ends.end(), [](const End& x, const End& y) { return x.s < y.s; });
    std::vector<int> link(ends.size(), -1);
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
        if (link[i] >= 0) continue;
        // chord midpoints sit just outside the MRR, so probe both sides of the curve
        const double sm = 0.5 * (ends[i].s + ends[i + 1].s);
        const Vec2 mid = bii_at(bii, sm);
        const Vec2 tangent = bii_at(bii, std::min(sm + 0.5, double(bii.size() - 1))) - bii_at(bii, std::max(sm - 0.5, 0.0));
        const Vec2 nrm = normalized(perp(tangent)) * (1e-6 * (1.0 + tangent.norm() * double(bii.size())));
        const bool inside = r3_candidate(point_times(cfg, mid + nrm)) || r3_candidate(point_times(cfg, mid - nrm)) ||
                            r3_candidate(point_times(cfg, mid));
        if (inside) {
            link[i] = int(i + 1);
            link[i + 1] = int(i);
        }
    }
    auto end_index = [&](std::size_t arc, int e) {
        for (std::size_t i = 0; i < ends.size(); ++i)
            if (ends[i].arc == arc && ends[i].end == e) return int(i);
        return -1;
    };
    std::vector<char> used(arcs.size(), 0);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (arcs[i].closed || used[i] || end_index(i, 0) < 0) continue;
        Polygon poly;
        bool ok = true, has_first = false;
        std::size_t cur = i;
        int entry = 0;
        for (int guard = 0; guard < 64; ++guard) {
            used[cur] = 1;
            has_first |= arcs[cur].has_first;
            const auto& pts = arcs[cur].pts;
            if (entry == 0) poly.insert(poly.end(), pts.begin(), pts.end());
            else poly.insert(poly.end(), pts.rbegin(), pts.rend());
            const int here = end_index(cur, 1 - entry);
            if (here < 0 || link[here] < 0) { ok = false; break; }
            const End& a = ends[here];
            const End& b = ends[link[here]];
            // B_II vertices strictly between the two parameters
            if (a.s < b.s) {
                for (std::size_t q = std::size_t(std::floor(a.s)) + 1; double(q) < b.s && q < bii.size(); ++q) poly.push_back(bii[q]);
            } else {
                for (std::size_t q = std::size_t(std::floor(a.s)); double(q) > b.s && q > 0; --q) poly.push_back(bii[q]);
            }
            cur = b.arc;
            entry = b.end;
            if (cur == i) break;
            if (used[cur]) { ok = false; break; }
        }
        if (!ok || poly.size() < 3) {
            out.ambiguous.push_back(poly);
            out.notes.push_back("candidate boundary does not close along B_II; no certificate");
            continue;
        }
        if (!has_first) out.components.push_back({poly, R3Condition::Cond2});
        else mixed.push_back({poly, false});
    }

    // mixed pieces: shrink the attacker's thrust until they split into certified pieces
    for (auto& [poly, loop] : mixed) {
        bool certified = false;
        if (opt.continuation) {
            R3Options inner = opt;
            inner.continuation = false;
            for (int m = 1; m <= opt.continuation_levels; ++m) {
                GameConfig c = cfg;
                c.attacker.params.u_max *= 1.0 - opt.continuation_step * m;
                const double vmax = c.attacker.params.max_speed();
                if (c.attacker.state.vel.norm() > vmax) break;  // the scaled game is not admissible
                R3Analysis sub = r3_analysis(c, inner);
                bool certified_overlap = false, open_overlap = false;
                for (const auto& comp : sub.components)
                    certified_overlap |= detail::overlaps(poly, comp.polygon);
                for (const auto& amb : sub.ambiguous)
                    open_overlap |= detail::overlaps(poly, amb);
                if (!certified_overlap && !open_overlap) break;  // vanished without passing a certificate
                if (certified_overlap && !open_overlap) {
                    certified = true;
                    break;
                }
            }
        }
        if (certified) out.components.push_back({poly, R3Condition::Continuation});
        else {
            out.ambiguous.push_back(poly);
            out.notes.push_back(loop ? "closed L loop fails the center-separation test" : "mixed t_D1/t_D2 boundary without certificate");
        }
    }
    return out;
}

inline std::vector<R3Component> r3_certificates(const GameConfig& cfg) { return r3_analysis(cfg).components; }

// ---- point classification ----

class DominanceAnalysis {
public:
    explicit DominanceAnalysis(GameConfig cfg, R3Options opt = {}) : cfg_(std::move(cfg)), opt_(opt) { cfg_.validate(); }

    const GameConfig& config() const { return cfg_; }

    const R3Analysis& r3() const {
        if (!r3_) r3_ = r3_analysis(cfg_, opt_);
        return *r3_;
    }

    Region classify(Vec2 x) const {
        const PointTimes pt = point_times(cfg_, x);
        bool adr = false, safe = false;
        for (double ta : pt.a) {
            if (!adr_time(ta, pt.d, time_tol(ta))) continue;
            adr = true;
            if (safe_path(cfg_, x, ta)) {
                safe = true;
                break;
            }
        }
        if (adr) return safe ? Region::RI : Region::RII;
        for (double ta : pt.a)
            for (double td : pt.d)
                if (std::fabs(ta - td) <= 1e3 * time_tol(ta)) return Region::BoundaryL;
        // the defender's own start is where both B_I arms meet; it is simply defender ground
        const bool on_mrr = pt.d_kind == ReachKind::BoundaryI || pt.d_kind == ReachKind::BoundaryII || pt.d_kind == ReachKind::Cusp;
        if (on_mrr && pt.d.front() > 0.0) return Region::BoundaryMrr;
        if (r3_candidate(pt))
            for (const auto& c : r3().components)
                if (contains(c.polygon, x)) return Region::RIII;
        return Region::DefenderDominated;
    }

private:
    GameConfig cfg_;
    R3Options opt_;
    mutable std::optional<R3Analysis> r3_;
};

inline Region classify_point(const GameConfig& cfg, Vec2 x) { return DominanceAnalysis(cfg).classify(x); }

struct Window {
    double xmin, xmax, ymin, ymax;
};

struct RegionGrid {
    Window window;
    int nx = 0, ny = 0;
    std::vector<Region> labels;  // row-major, row 0 at ymin
    Region at(int i, int j) const { return labels[std::size_t(j) * nx + i]; }
    Vec2 cell_center(int i, int j) const {
        return {window.xmin + (window.xmax - window.xmin) * (i + 0.5) / nx,
                window.ymin + (window.ymax - window.ymin) * (j + 0.5) / ny};
    }
};

inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RA_THREADS")) {
        int k = std::atoi(env);
        if (k > 0) n = std::min(n, unsigned(k));
    }
    return n;
}

inline RegionGrid region_map(const DominanceAnalysis& an, Window w, int nx, int ny) {
    if (nx < 2 || ny < 2) throw DomainError("resolution must be at least 2x2");
    if (!(w.xmax > w.xmin) || !(w.ymax > w.ymin)) throw DomainError("empty window");
    RegionGrid g{w, nx, ny, std::vector<Region>(std::size_t(nx) * ny)};
    an.r3();  // build shared certificates before fanning out
    const unsigned workers = std::min<unsigned>(worker_count(), unsigned(ny));
    auto rows = [&](unsigned k) {
        for (int j = int(k); j < ny; j += int(workers))
            for (int i = 0; i < nx; ++i) g.labels[std::size_t(j) * nx + i] = an.classify(g.cell_center(i, j));
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < workers; ++k) pool.emplace_back(rows, k);
    rows(0);
    for (auto& t : pool) t.join();
    return g;
}

inline RegionGrid region_map(const GameConfig& cfg, Window w, int nx, int ny) { return region_map(DominanceAnalysis(cfg), w, nx, ny); }

} // namespace ra
