#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "vec2.hpp"

namespace ra {

using Polygon = std::vector<Vec2>;

inline double signed_area(const Polygon& poly) {
    double a = 0.0;
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) a += wedge(poly[i], poly[(i + 1) % n]);
    return 0.5 * a;
}

inline double area(const Polygon& poly) { return std::fabs(signed_area(poly)); }

// even-odd rule
inline bool contains(const Polygon& poly, Vec2 q) {
    bool in = false;
    for (std::size_t i = 0, n = poly.size(), j = n - 1; i < n; j = i++) {
        const Vec2 a = poly[i], b = poly[j];
        if ((a.y > q.y) != (b.y > q.y)) {
            double x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (q.x < x) in = !in;
        }
    }
    return in;
}

inline Vec2 closest_on_segment(Vec2 a, Vec2 b, Vec2 q) {
    const Vec2 ab = b - a;
    const double l2 = ab.norm2();
    if (l2 == 0.0) return a;
    const double s = std::clamp(dot(q - a, ab) / l2, 0.0, 1.0);
    return a + ab * s;
}

struct PolylineHit {
    std::size_t segment = 0;  // index of the first vertex of the nearest segment
    double frac = 0.0;
    Vec2 point;
    double distance = std::numeric_limits<double>::infinity();
};

inline PolylineHit nearest_on_polyline(const std::vector<Vec2>& line, Vec2 q) {
    PolylineHit best;
    if (line.size() == 1) return {0, 0.0, line[0], dist(line[0], q)};
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
        Vec2 c = closest_on_segment(line[i], line[i + 1], q);
        double d = dist(c, q);
        if (d < best.distance) {
            double l = dist(line[i], line[i + 1]);
            best = {i, l > 0 ? dist(line[i], c) / l : 0.0, c, d};
        }
    }
    return best;
}

// closest boundary point of a polygon to q
inline Vec2 closest_on_polygon(const Polygon& poly, Vec2 q, std::size_t* edge = nullptr) {
    Vec2 best = poly.front();
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
        Vec2 c = closest_on_segment(poly[i], poly[(i + 1) % n], q);
        double d = dist(c, q);
        if (d < bd) {
            bd = d;
            best = c;
            if (edge) *edge = i;
        }
    }
    return best;
}

inline Vec2 centroid(const Polygon& poly) {
    Vec2 c;
    for (Vec2 p : poly) c += p;
    return poly.empty() ? c : c / double(poly.size());
}

} // namespace ra
