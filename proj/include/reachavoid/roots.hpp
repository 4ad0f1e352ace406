#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace ra {

constexpr double root_tol = 1e-10;

// Bisection on [lo, hi]; expects at most one sign change. nullopt when the ends agree in sign.
template <class F>
std::optional<double> find_zero(F&& f, double lo, double hi, double tol = root_tol) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
    const bool lo_pos = flo > 0.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == lo_pos) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Open-ended bracket: hi = lo + step, doubling step until f changes sign or hi passes cap.
template <class F>
std::optional<double> find_zero_open(F&& f, double lo, double step, double cap, double tol = root_tol) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    double a = lo;
    for (;;) {
        double hi = lo + step;
        if (hi > cap) hi = cap;
        double fhi = f(hi);
        if (fhi == 0.0) return hi;
        if ((fhi > 0.0) != (flo > 0.0)) return find_zero(f, a, hi, tol);
        if (hi >= cap) return std::nullopt;
        a = hi;
        step *= 2.0;
    }
}

// golden-section minimum of a unimodal f on [a, b]
template <class F>
double golden_min(F&& f, double a, double b, double tol = 1e-12) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d; d = c; fd = fc;
            c = b - r * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + r * (b - a); fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// earliest tau in (0, h] with g(tau) <= 0; sub-samples plus a golden search
// around each sampled local minimum so that brief close passes are not stepped over
template <class G>
std::optional<double> first_entry(G&& g, double h, int sub = 16) {
    std::vector<double> tau(sub + 1), val(sub + 1);
    for (int k = 0; k <= sub; ++k) {
        tau[k] = h * k / sub;
        val[k] = g(tau[k]);
    }
    auto cross = [&](double lo, double hi) {
        while (hi - lo > 1e-12 * (1.0 + hi)) {
            double m = 0.5 * (lo + hi);
            (g(m) <= 0.0 ? hi : lo) = m;
        }
        return hi;
    };
    for (int k = 1; k <= sub; ++k) {
        if (val[k] <= 0.0) return cross(tau[k - 1], tau[k]);
        const bool dip = val[k] <= val[k - 1] && (k == sub || val[k] <= val[k + 1]);
        if (!dip) continue;
        const double a = tau[k - 1], b = k == sub ? tau[k] : tau[k + 1];
        const double m = golden_min(g, a, b, 1e-12);
        if (g(m) <= 0.0) return cross(a, m);
    }
    return std::nullopt;
}

} // namespace ra
