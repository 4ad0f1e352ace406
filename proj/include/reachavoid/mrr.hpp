#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "scribe.hpp"

namespace ra {

enum class Branch { Plus, Minus };

struct CurveVertex {
    Vec2 p;
    double t;
};

struct MrrBoundary {
    double t_s = 0.0;
    double t_u = 0.0;
    Vec2 x_s;
    std::array<Vec2, 2> cusps{};  // plus, minus
    // B_I arms run from the initial position to the cusps, B_II arms from the cusps to x_s
    std::vector<CurveVertex> branch_I_plus, branch_I_minus;
    std::vector<CurveVertex> branch_II_plus, branch_II_minus;

    bool empty() const { return t_s == 0.0; }

    // B_II as one curve: minus cusp -> x_s -> plus cusp
    std::vector<CurveVertex> branch_II() const {
        std::vector<CurveVertex> out(branch_II_minus.begin(), branch_II_minus.end());
        if (!branch_II_plus.empty()) out.insert(out.end(), branch_II_plus.rbegin() + 1, branch_II_plus.rend());
        return out;
    }
};

enum class ReachKind { Single, Triple, BoundaryI, BoundaryII, Cusp };

struct ReachClassification {
    ReachKind kind = ReachKind::Single;
    std::vector<double> times;
};

inline double barrier_time(const PlayerState& s, const PlayerParams& p) {
    p.validate();
    if (p.u_max == 0.0) throw DomainError("barrier time undefined for u_max = 0");
    return std::log1p(p.mu * s.vel.norm() / p.u_max) / p.mu;
}

inline double cusp_time(const PlayerState& s, const PlayerParams& p) {
    const double ts = barrier_time(s, p);
    const double v2 = s.vel.norm2();
    if (v2 == 0.0) return 0.0;
    const double u = p.u_max, mu = p.mu;
    auto f = [&](double t) {
        double rise = -std::expm1(-mu * t);
        return u * u / mu * spread(mu, t) - v2 * std::exp(-2.0 * mu * t) + (u / mu) * (u / mu) * rise * rise;
    };
    return find_zero(f, 0.0, ts, 1e-13).value_or(0.0);
}

// Self-overlap limit point of the isochron family at time t. Plus is the side with (x - x0) ∧ v0 >= 0.
inline Vec2 boundary_point(const PlayerState& s, const PlayerParams& p, double t, Branch b) {
    check_time(t);
    const double ts = barrier_time(s, p);
    const double v = s.vel.norm();
    if (v == 0.0) {
        if (t > 0.0) throw DomainError("no MRR for a player at rest");
        return s.pos;
    }
    if (t > ts * (1.0 + 1e-12) + 1e-15) throw DomainError("boundary_point beyond barrier time");
    const double mu = p.mu, u = p.u_max;
    const Vec2 e = s.vel / v, n = perp(e);
    const double c = std::clamp(-(u / mu) * std::expm1(mu * t) / v, -1.0, 1.0);
    const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
    const Vec2 d = e * c + n * (b == Branch::Plus ? -sn : sn);
    return s.pos + s.vel * drift(mu, t) + d * (u / mu * spread(mu, t));
}

inline MrrBoundary build_mrr_boundary(const PlayerState& s, const PlayerParams& p, int samples = 512) {
    MrrBoundary m;
    m.t_s = barrier_time(s, p);
    m.x_s = s.pos;
    m.cusps = {s.pos, s.pos};
    if (m.t_s == 0.0) {
        m.branch_I_plus = m.branch_I_minus = m.branch_II_plus = m.branch_II_minus = {{s.pos, 0.0}};
        return m;
    }
    samples = std::max(samples, 4);
    m.t_u = cusp_time(s, p);
    m.x_s = boundary_point(s, p, m.t_s, Branch::Plus);
    m.cusps = {boundary_point(s, p, m.t_u, Branch::Plus), boundary_point(s, p, m.t_u, Branch::Minus)};

    // B_I: uniform in t plus a geometric cluster toward the cusp
    std::vector<double> ti;
    for (int i = 0; i < samples; ++i) ti.push_back(m.t_u * i / (samples - 1));
    for (int k = 1; k <= 20; ++k) ti.push_back(m.t_u * (1.0 - std::ldexp(1.0 / (samples - 1), -k)));
    std::sort(ti.begin(), ti.end());
    // B_II: t_s - t ~ (1 - s)^2 spreads the square-root turn at x_s evenly
    std::vector<double> tii;
    const double w = m.t_s - m.t_u;
    for (int i = 0; i < samples; ++i) {
        double q = 1.0 - double(i) / (samples - 1);
        tii.push_back(m.t_s - w * q * q);
    }
    for (int k = 1; k <= 20; ++k) tii.push_back(m.t_u + w * std::ldexp(1.0 / (samples - 1), -k));
    std::sort(tii.begin(), tii.end());
    tii.erase(std::unique(tii.begin(), tii.end()), tii.end());
    ti.erase(std::unique(ti.begin(), ti.end()), ti.end());

    for (double t : ti) {
        m.branch_I_plus.push_back({boundary_point(s, p, t, Branch::Plus), t});
        m.branch_I_minus.push_back({boundary_point(s, p, t, Branch::Minus), t});
    }
    for (double t : tii) {
        m.branch_II_plus.push_back({boundary_point(s, p, t, Branch::Plus), t});
        m.branch_II_minus.push_back({boundary_point(s, p, t, Branch::Minus), t});
    }
    return m;
}

inline bool times_equal(double a, double b) { return std::fabs(a - b) <= 1e-8 * (1.0 + std::max(a, b)); }

inline ReachClassification classify_times(const RootSet& r) {
    ReachClassification c;
    c.times = r.expanded();
    const auto& t = c.times;
    if (t.size() < 3) {
        c.kind = ReachKind::Single;
        return c;
    }
    const bool a = times_equal(t[0], t[1]), b = times_equal(t[1], t[2]);
    c.kind = a && b ? ReachKind::Cusp : a ? ReachKind::BoundaryI : b ? ReachKind::BoundaryII : ReachKind::Triple;
    return c;
}

inline ReachClassification classify(Vec2 point, const PlayerState& s, const PlayerParams& p) {
    return classify_times(reach_times(point, s, p));
}

} // namespace ra
