#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "game.hpp"

namespace ra {

enum class FigureKind { Trajectories, RegionMap, Isochrones, Distances };

struct FigureSpec {
    FigureKind kind = FigureKind::Trajectories;
    int width = 640, height = 640;
    int margin = 40;
    double stroke = 1.5;
};

namespace detail {

// fixed-precision output keeps the byte stream stable across runs
inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

class Canvas {
public:
    Canvas(const FigureSpec& spec, Window w) : spec_(spec), w_(w) {
        // equal scale on both axes for spatial figures
        if (spec.kind != FigureKind::Distances) {
            const double sx = (spec.width - 2.0 * spec.margin) / (w.xmax - w.xmin);
            const double sy = (spec.height - 2.0 * spec.margin) / (w.ymax - w.ymin);
            sx_ = sy_ = std::min(sx, sy);
        } else {
            sx_ = (spec.width - 2.0 * spec.margin) / (w.xmax - w.xmin);
            sy_ = (spec.height - 2.0 * spec.margin) / (w.ymax - w.ymin);
        }
        os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
            << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
        os_ << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height << "\" fill=\"white\"/>\n";
    }

    double px(double x) const { return spec_.margin + (x - w_.xmin) * sx_; }
    double py(double y) const { return spec_.height - spec_.margin - (y - w_.ymin) * sy_; }
    double scale() const { return sx_; }

    void open(const std::string& id) { os_ << "<g id=\"" << id << "\">\n"; }
    void close() { os_ << "</g>\n"; }

    void polyline(const std::vector<Vec2>& pts, const std::string& color, bool closed = false, const std::string& dash = "") {
        if (pts.size() < 2) return;
        os_ << "<path d=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) os_ << (i ? " L" : "M") << num(px(pts[i].x)) << " " << num(py(pts[i].y));
        if (closed) os_ << " Z";
        os_ << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(spec_.stroke) << "\"";
        if (!dash.empty()) os_ << " stroke-dasharray=\"" << dash << "\"";
        os_ << "/>\n";
    }

    void polygon(const std::vector<Vec2>& pts, const std::string& fill, double opacity) {
        if (pts.size() < 3) return;
        os_ << "<path d=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) os_ << (i ? " L" : "M") << num(px(pts[i].x)) << " " << num(py(pts[i].y));
        os_ << " Z\" fill=\"" << fill << "\" fill-opacity=\"" << num(opacity) << "\" stroke=\"none\"/>\n";
    }

    void dot(Vec2 p, const std::string& color, double r = 3.0) {
        os_ << "<circle cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y)) << "\" r=\"" << num(r) << "\" fill=\"" << color << "\"/>\n";
    }

    void circle(Vec2 c, double radius, const std::string& color) {
        os_ << "<circle cx=\"" << num(px(c.x)) << "\" cy=\"" << num(py(c.y)) << "\" r=\"" << num(radius * sx_) << "\" fill=\"none\" stroke=\""
            << color << "\" stroke-width=\"" << num(spec_.stroke * 0.5) << "\"/>\n";
    }

    // cell rectangle in world units
    void cell(double x0, double y0, double x1, double y1, const std::string& fill) {
        os_ << "<rect x=\"" << num(px(x0)) << "\" y=\"" << num(py(y1)) << "\" width=\"" << num(px(x1) - px(x0)) << "\" height=\""
            << num(py(y0) - py(y1)) << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, const std::string& anchor = "start") {
        os_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"" << anchor
            << "\">" << s << "</text>\n";
    }

    void frame(const std::string& xlabel, const std::string& ylabel) {
        const double x0 = px(w_.xmin), x1 = px(w_.xmax), y0 = py(w_.ymin), y1 = py(w_.ymax);
        os_ << "<g id=\"axes\">\n";
        os_ << "<path d=\"M" << num(x0) << " " << num(y0) << " L" << num(x1) << " " << num(y0) << " L" << num(x1) << " " << num(y1) << " L"
            << num(x0) << " " << num(y1) << " Z\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        text(x0, y0 + 14, num(w_.xmin));
        text(x1, y0 + 14, num(w_.xmax), "end");
        text(x0 - 4, y0, num(w_.ymin), "end");
        text(x0 - 4, y1 + 10, num(w_.ymax), "end");
        text(0.5 * (x0 + x1), y0 + 28, xlabel, "middle");
        text(x0, y1 - 8, ylabel);
        close();
    }

    std::string str() {
        os_ << "</svg>\n";
        return os_.str();
    }

private:
    FigureSpec spec_;
    Window w_;
    double sx_ = 1, sy_ = 1;
    std::ostringstream os_;
};

inline Window padded(Window w, double frac) {
    const double dx = (w.xmax - w.xmin) * frac + 1e-9, dy = (w.ymax - w.ymin) * frac + 1e-9;
    return {w.xmin - dx, w.xmax + dx, w.ymin - dy, w.ymax + dy};
}

inline Window bounds(const std::vector<Vec2>& pts) {
    Window w{1e300, -1e300, 1e300, -1e300};
    for (Vec2 p : pts) {
        w.xmin = std::min(w.xmin, p.x);
        w.xmax = std::max(w.xmax, p.x);
        w.ymin = std::min(w.ymin, p.y);
        w.ymax = std::max(w.ymax, p.y);
    }
    return w;
}

inline const char* region_color(Region r) {
    switch (r) {
    case Region::RI: return "#9ecae1";
    case Region::RII: return "#fdd0a2";
    case Region::RIII: return "#a1d99b";
    case Region::DefenderDominated: return "#f0f0f0";
    case Region::BoundaryL: return "#000000";
    case Region::BoundaryMrr: return "#756bb1";
    }
    return "#ffffff";
}

} // namespace detail

inline std::string svg_trajectories(const Scenario& s, const GameTrace& tr, FigureSpec spec = {}) {
    spec.kind = FigureKind::Trajectories;
    std::vector<Vec2> a, d, all{s.cfg.target};
    for (const TraceRow& r : tr.rows) {
        a.push_back(r.attacker.pos);
        d.push_back(r.defender.pos);
    }
    all.insert(all.end(), a.begin(), a.end());
    all.insert(all.end(), d.begin(), d.end());
    for (const auto& p : tr.plans) all.push_back(p.point);
    detail::Canvas c(spec, detail::padded(detail::bounds(all), 0.08));
    c.frame("x", "y");
    c.open("target");
    c.dot(s.cfg.target, "black", 4);
    c.close();
    c.open("plans");
    // only where the planned point moves, to keep the file small
    for (std::size_t i = 0; i < tr.plans.size(); ++i)
        if (i == 0 || dist(tr.plans[i].point, tr.plans[i - 1].point) > 1e-4) c.dot(tr.plans[i].point, "#2ca02c", 2);
    c.close();
    c.open("attacker");
    c.polyline(a, "#d62728");
    if (!a.empty()) c.dot(a.front(), "#d62728");
    c.close();
    c.open("defender");
    c.polyline(d, "#1f77b4");
    if (!d.empty()) c.dot(d.front(), "#1f77b4");
    c.close();
    return c.str();
}

inline std::string svg_distances(const GameTrace& tr, FigureSpec spec = {}) {
    spec.kind = FigureKind::Distances;
    double tmax = 0, dmax = 0;
    for (const TraceRow& r : tr.rows) {
        tmax = std::max(tmax, r.t);
        dmax = std::max({dmax, r.dist_ad, r.dist_at});
    }
    detail::Canvas c(spec, {0, std::max(tmax, 1e-6), 0, std::max(dmax, 1e-6) * 1.05});
    c.frame("t", "distance");
    std::vector<Vec2> ad, at;
    for (const TraceRow& r : tr.rows) {
        ad.push_back({r.t, r.dist_ad});
        at.push_back({r.t, r.dist_at});
    }
    c.open("dist_AD");
    c.polyline(ad, "#1f77b4");
    c.close();
    c.open("dist_AT");
    c.polyline(at, "#d62728");
    c.close();
    return c.str();
}

struct RegionLayers {
    const RegionGrid* grid = nullptr;
    const BoundaryL* L = nullptr;
    const MrrBoundary* defender_mrr = nullptr;
    const R3Analysis* r3 = nullptr;
    std::vector<Vec2> markers;  // e.g. the planned terminal point
};

inline std::string svg_region_map(const GameConfig& cfg, const RegionLayers& layers, FigureSpec spec = {}) {
    spec.kind = FigureKind::RegionMap;
    const RegionGrid& g = *layers.grid;
    detail::Canvas c(spec, g.window);
    const double dx = (g.window.xmax - g.window.xmin) / g.nx, dy = (g.window.ymax - g.window.ymin) / g.ny;
    // one layer per label; horizontal runs of equal labels become one rectangle
    for (Region r : {Region::DefenderDominated, Region::RI, Region::RII, Region::RIII, Region::BoundaryL, Region::BoundaryMrr}) {
        c.open(std::string("cells_") + region_name(r));
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx;) {
                if (g.at(i, j) != r) {
                    ++i;
                    continue;
                }
                int k = i;
                while (k < g.nx && g.at(k, j) == r) ++k;
                c.cell(g.window.xmin + i * dx, g.window.ymin + j * dy, g.window.xmin + k * dx, g.window.ymin + (j + 1) * dy,
                       detail::region_color(r));
                i = k;
            }
        c.close();
    }
    c.open("R_III");
    if (layers.r3)
        for (const auto& comp : layers.r3->components) c.polyline(comp.polygon, "#238b45", true);
    c.close();
    c.open("L");
    if (layers.L)
        for (const auto& seg : layers.L->segments) {
            std::vector<Vec2> pts;
            for (const auto& v : seg.v) pts.push_back(v.p);
            c.polyline(pts, "black", true);
        }
    c.close();
    c.open("MRR");
    if (layers.defender_mrr && !layers.defender_mrr->empty()) {
        const MrrBoundary& m = *layers.defender_mrr;
        for (auto* arm : {&m.branch_I_plus, &m.branch_I_minus}) {
            std::vector<Vec2> pts;
            for (const auto& v : *arm) pts.push_back(v.p);
            c.polyline(pts, "#54278f", false, "4 2");
        }
        std::vector<Vec2> pts;
        for (const auto& v : m.branch_II()) pts.push_back(v.p);
        c.polyline(pts, "#54278f");
    }
    c.close();
    c.open("players");
    c.dot(cfg.attacker.state.pos, "#d62728");
    c.dot(cfg.defender.state.pos, "#1f77b4");
    c.dot(cfg.target, "black", 4);
    for (Vec2 m : layers.markers) c.dot(m, "#2ca02c", 3);
    c.close();
    c.frame("x", "y");
    return c.str();
}

// isochrons of one player at the given times, with its MRR boundary
inline std::string svg_isochrones(const PlayerState& s, const PlayerParams& p, const std::vector<double>& times, const MrrBoundary& m,
                                  FigureSpec spec = {}) {
    spec.kind = FigureKind::Isochrones;
    std::vector<Vec2> all{s.pos};
    for (double t : times) {
        const Isochron iso = isochron(s, p, t);
        all.push_back(iso.center + Vec2{iso.radius, iso.radius});
        all.push_back(iso.center - Vec2{iso.radius, iso.radius});
    }
    for (auto* arm : {&m.branch_I_plus, &m.branch_I_minus, &m.branch_II_plus, &m.branch_II_minus})
        for (const auto& v : *arm) all.push_back(v.p);
    detail::Canvas c(spec, detail::padded(detail::bounds(all), 0.05));
    c.frame("x", "y");
    c.open("isochrons");
    for (double t : times) {
        const Isochron iso = isochron(s, p, t);
        c.circle(iso.center, iso.radius, "#999999");
    }
    c.close();
    if (!m.empty()) {
        c.open("B_I");
        for (auto* arm : {&m.branch_I_plus, &m.branch_I_minus}) {
            std::vector<Vec2> pts;
            for (const auto& v : *arm) pts.push_back(v.p);
            c.polyline(pts, "#d62728");
        }
        c.close();
        c.open("B_II");
        std::vector<Vec2> pts;
        for (const auto& v : m.branch_II()) pts.push_back(v.p);
        c.polyline(pts, "#1f77b4");
        c.close();
        c.open("cusps");
        c.dot(m.cusps[0], "black");
        c.dot(m.cusps[1], "black");
        c.dot(m.x_s, "#1f77b4");
        c.close();
    }
    c.open("start");
    c.dot(s.pos, "#d62728");
    c.close();
    return c.str();
}

} // namespace ra
