#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <random>
#include <vector>

#include "reachavoid/vec2.hpp"

namespace oracle {

// direct evaluation of |dx + dv E|^2 - (s/mu)^2 G^2, no shared helpers
inline double gamma(ra::Vec2 dx, ra::Vec2 dv, double mu, double s, double t) {
    double E = (1.0 - std::exp(-mu * t)) / mu;
    double G = t - E;
    double x = dx.x + dv.x * E, y = dx.y + dv.y * E;
    return x * x + y * y - (s / mu) * (s / mu) * G * G;
}

// sign-change scan at fixed step, each crossing refined by bisection
template <class F>
std::vector<double> scan_roots(F f, double t_end, double dt = 1e-4) {
    std::vector<double> roots;
    double a = 0.0, fa = f(0.0);
    for (double b = dt; b <= t_end; b += dt) {
        double fb = f(b);
        if ((fa > 0) != (fb > 0)) {
            double lo = a, hi = b;
            for (int i = 0; i < 60; ++i) {
                double m = 0.5 * (lo + hi);
                if ((f(m) > 0) == (fa > 0)) lo = m; else hi = m;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    return roots;
}

inline ra::Vec2 random_vec(std::mt19937_64& rng, double r) {
    std::uniform_real_distribution<double> U(-r, r);
    return {U(rng), U(rng)};
}

inline ra::Vec2 random_in_disc(std::mt19937_64& rng, double r) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double a = 2.0 * 3.14159265358979323846 * U(rng), q = r * std::sqrt(U(rng));
    return {q * std::cos(a), q * std::sin(a)};
}

} // namespace oracle
