#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "vec2.hpp"

namespace ra {

constexpr double two_pi = 2.0 * std::numbers::pi;

inline double wrap_angle(double theta) {
    double w = std::fmod(theta, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w = 0.0;
    return w;
}

// shortest distance between two headings, in [0, pi]
inline double angle_distance(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return d > std::numbers::pi ? two_pi - d : d;
}

struct PlayerParams {
    double u_max = 1.0;
    double mu = 1.0;

    void validate() const {
        if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive");
        if (!(u_max >= 0.0) || !std::isfinite(u_max)) throw DomainError("u_max must be non-negative");
    }
    double max_speed() const { return u_max / mu; }
};

struct PlayerState {
    Vec2 pos;
    Vec2 vel;
};

class Control {
public:
    Control() = default;
    Control(double u, double theta) : u_(u), theta_(wrap_angle(theta)) {
        if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("control magnitude must be non-negative");
    }
    double u() const { return u_; }
    double theta() const { return theta_; }
    Vec2 accel() const { return unit(theta_) * u_; }
    bool operator==(const Control&) const = default;

private:
    double u_ = 0.0;
    double theta_ = 0.0;
};

struct Isochron {
    double t = 0.0;
    Vec2 center;
    double radius = 0.0;
};

// E(t) = (1 - e^{-mu t}) / mu, displacement per unit initial velocity
inline double drift(double mu, double t) { return -std::expm1(-mu * t) / mu; }

// G(t) = t - E(t); radius per unit of u/mu. Series near zero to dodge cancellation.
inline double spread(double mu, double t) {
    double x = mu * t;
    if (x < 0.05) {
        double term = x * x / 2.0, sum = 0.0;
        for (int n = 3; n < 14; ++n) {
            sum += term;
            term *= -x / n;
        }
        return sum / mu;
    }
    return (x + std::expm1(-x)) / mu;
}

inline void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and non-negative");
}

inline PlayerState propagate(const PlayerState& s, const PlayerParams& p, const Control& c, double t) {
    check_time(t);
    if (c.u() > p.u_max * (1.0 + 1e-12) + 1e-15) throw DomainError("control magnitude exceeds u_max");
    const double mu = p.mu;
    const double decay = std::exp(-mu * t);
    const double rise = -std::expm1(-mu * t);
    const Vec2 d = unit(c.theta());
    const double k = c.u() / mu;
    return {s.pos + s.vel * drift(mu, t) + d * (k * spread(mu, t)),
            s.vel * decay + d * (k * rise)};
}

inline Isochron isochron(const PlayerState& s, const PlayerParams& p, double t) {
    check_time(t);
    return {t, s.pos + s.vel * drift(p.mu, t), p.u_max / p.mu * spread(p.mu, t)};
}

// constant-heading control that lands exactly on target at t_f
inline Control steer_to(const PlayerState& s, const PlayerParams& p, Vec2 target, double t_f) {
    if (!(t_f > 0.0) || !std::isfinite(t_f)) throw DomainError("steer_to needs t_f > 0");
    const Isochron iso = isochron(s, p, t_f);
    const Vec2 d = target - iso.center;
    const double r = d.norm();
    if (r == 0.0) return Control(0.0, 0.0);
    const double g = spread(p.mu, t_f);
    if (g <= 0.0) throw InfeasibleError("t_f too small to move");
    if (r > iso.radius + 1e-9 * std::max(1.0, iso.radius))
        throw InfeasibleError("target outside the isochron disc at t_f");
    double u = std::min(p.u_max, p.mu * r / g);
    return Control(u, d.angle());
}

} // namespace ra
