#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "dynamics.hpp"
#include "roots.hpp"

namespace ra {

enum class ScribeMode { Inscribe, Circumscribe };

// Gamma(t) = |dx + dv E(t)|^2 - ((u_a +- u_d)/mu)^2 G(t)^2
struct ScribeProblem {
    Vec2 delta_x;  // x_A0 - x_D0
    Vec2 delta_v;  // v_A0 - v_D0
    double mu = 1.0;
    double u_a = 0.0;
    double u_d = 0.0;
    ScribeMode mode = ScribeMode::Circumscribe;

    void validate() const {
        if (!(mu > 0.0)) throw DomainError("mu must be positive");
        if (!(u_a >= 0.0) || !(u_d >= 0.0)) throw DomainError("thrust bounds must be non-negative");
        if (!(delta_x.norm2() > 0.0)) throw DomainError("scribe problem needs distinct initial positions");
    }
    double k() const {
        double s = mode == ScribeMode::Circumscribe ? u_a + u_d : u_a - u_d;
        return s * s / (mu * mu);
    }
};

struct RootSet {
    std::vector<double> times;
    std::vector<int> multiplicities;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    int count() const {
        int n = 0;
        for (int m : multiplicities) n += m;
        return n;
    }
    // times repeated by multiplicity, e.g. {t1, t1, t3} for a B_I point
    std::vector<double> expanded() const {
        std::vector<double> out;
        for (std::size_t i = 0; i < times.size(); ++i)
            out.insert(out.end(), static_cast<std::size_t>(multiplicities[i]), times[i]);
        return out;
    }
    void add(double t, int m) {
        times.push_back(t);
        multiplicities.push_back(m);
    }
};

namespace detail {

struct GammaTerms {
    double g, d1, d2;  // Gamma and its first two derivatives
    double scale;      // magnitude of the cancelling terms
    double scale1;
};

inline GammaTerms gamma_terms(const ScribeProblem& p, double t) {
    const double mu = p.mu, k = p.k();
    const double e = std::exp(-mu * t);
    const double E = drift(mu, t), dE = e, ddE = -mu * e;
    const double G = spread(mu, t), dG = -std::expm1(-mu * t), ddG = mu * e;
    const double vv = p.delta_v.norm2(), xv = dot(p.delta_x, p.delta_v);
    const double o = (p.delta_x + p.delta_v * E).norm2();
    const double o1 = 2.0 * vv * E * dE + 2.0 * xv * dE;
    const double o2 = 2.0 * vv * (dE * dE + E * ddE) + 2.0 * xv * ddE;
    const double q = k * G * G, q1 = 2.0 * k * G * dG, q2 = 2.0 * k * (dG * dG + G * ddG);
    return {o - q, o1 - q1, o2 - q2, o + q + p.delta_x.norm2(), std::fabs(o1) + std::fabs(q1)};
}

inline double time_cap(const ScribeProblem& p) {
    const double s = std::sqrt(p.k()) * p.mu;
    double cap = 50.0 / p.mu;
    if (s > 0.0) {
        double bound = 1.0 / p.mu + p.mu * (p.delta_x.norm() + p.delta_v.norm() / p.mu) / s;
        cap = std::max(cap, 2.0 * bound);
    }
    return cap;
}

} // namespace detail

inline double gamma(const ScribeProblem& p, double t) {
    check_time(t);
    return detail::gamma_terms(p, t).g;
}
inline double gamma_d1(const ScribeProblem& p, double t) { return detail::gamma_terms(p, t).d1; }
inline double gamma_d2(const ScribeProblem& p, double t) { return detail::gamma_terms(p, t).d2; }

// All positive zeros of Gamma, at most three.
inline RootSet scribe_times(const ScribeProblem& p) {
    p.validate();
    RootSet out;
    if (p.k() == 0.0) return out;  // equal thrust inscribe: radii never differ

    const double mu = p.mu;
    const double cap = detail::time_cap(p);
    const double step = 1.0 / mu;
    auto g0 = [&](double t) { return detail::gamma_terms(p, t).g; };
    auto g1 = [&](double t) { return detail::gamma_terms(p, t).d1; };
    auto g2 = [&](double t) { return detail::gamma_terms(p, t).d2; };
    auto after = [&](double lo) {
        if (auto r = find_zero_open(g0, lo, step, cap)) out.add(*r, 1);
    };

    const double vv = p.delta_v.norm2(), xv = dot(p.delta_x, p.delta_v);
    if (vv + mu * xv < 0.0 || xv > 0.0) {
        after(0.0);
        return out;
    }

    double t_dmax = 0.0;
    if (g2(0.0) > 0.0) {
        auto r = find_zero_open(g2, 0.0, step, cap);
        t_dmax = r ? *r : 0.0;
    }
    const auto at_d = detail::gamma_terms(p, t_dmax);
    const double tol0 = 1e-12 * at_d.scale;
    if (at_d.d1 <= 1e-10 * at_d.scale1 && std::fabs(at_d.g) <= tol0 && t_dmax > 0.0) {
        out.add(t_dmax, 3);  // cusp: all three coincide
        return out;
    }
    if (at_d.d1 <= 0.0) {
        after(0.0);
        return out;
    }

    double t_min = 0.0;
    if (g1(0.0) < 0.0) t_min = find_zero(g1, 0.0, t_dmax).value_or(0.0);
    double t_max = find_zero_open(g1, t_dmax, step, cap).value_or(t_dmax);
    const auto at_min = detail::gamma_terms(p, t_min);
    const auto at_max = detail::gamma_terms(p, t_max);
    const bool touch_min = t_min > 0.0 && std::fabs(at_min.g) <= 1e-12 * at_min.scale;
    const bool touch_max = std::fabs(at_max.g) <= 1e-12 * at_max.scale;

    if (touch_min && touch_max) {
        out.add(t_dmax, 3);
        return out;
    }
    if (touch_min) {
        out.add(t_min, 2);
        after(t_max);
        return out;
    }
    if (at_min.g > 0.0) {
        after(t_max);
        return out;
    }
    // Gamma(t_min) < 0 from here
    if (auto r = find_zero(g0, 0.0, t_min)) out.add(*r, 1);
    if (touch_max) {
        out.add(t_max, 2);
        return out;
    }
    if (at_max.g < 0.0) return out;
    if (auto r = find_zero(g0, t_min, t_max)) out.add(*r, 1);
    after(t_max);
    return out;
}

// Times at which the isochron of (state, params) passes through point.
inline RootSet reach_times(Vec2 point, const PlayerState& s, const PlayerParams& params) {
    params.validate();
    const Vec2 dx = point - s.pos;
    if (dx.norm2() == 0.0) {
        RootSet out;
        if (s.vel.norm2() == 0.0 || params.u_max == 0.0) {
            out.add(0.0, 1);
            return out;
        }
        out.add(0.0, 2);
        // Gamma(t)/t^2 starts at |v0|^2 > 0, so begin just off zero
        ScribeProblem p{Vec2{1.0, 0.0}, -s.vel, params.mu, 0.0, params.u_max, ScribeMode::Circumscribe};
        p.delta_x = Vec2{};
        auto g = [&](double t) { return detail::gamma_terms(p, t).g; };
        double lo = 1e-9 / params.mu;
        if (auto r = find_zero_open(g, lo, 1.0 / params.mu, detail::time_cap(p))) out.add(*r, 1);
        return out;
    }
    ScribeProblem p{dx, -s.vel, params.mu, 0.0, params.u_max, ScribeMode::Circumscribe};
    return scribe_times(p);
}

} // namespace ra
