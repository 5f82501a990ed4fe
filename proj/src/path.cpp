#include "glift/path.hpp"

#include <cmath>

#include "glift/errors.hpp"

namespace glift::hol {

using geometry::ChartedGeometry;
using geometry::ChartGrid;

Vec2 PathSegment::velocity_at(double t) const {
    if (velocity) return velocity(t);
    // fourth-order finite differences on the point function
    const double h = 1e-4;
    auto pt = [&](double s) { return point(s); };
    Vec2 out{0, 0};
    if (t >= 2 * h && t <= 1 - 2 * h) {
        Vec2 m2 = pt(t - 2 * h), m1 = pt(t - h), p1 = pt(t + h), p2 = pt(t + 2 * h);
        for (int c = 0; c < 2; ++c) out[c] = (m2[c] - 8 * m1[c] + 8 * p1[c] - p2[c]) / (12 * h);
    } else {
        double sign = t < 0.5 ? 1.0 : -1.0;
        double base = t < 0.5 ? t : t;
        Vec2 f0 = pt(base), f1 = pt(base + sign * h), f2 = pt(base + 2 * sign * h), f3 = pt(base + 3 * sign * h),
             f4 = pt(base + 4 * sign * h);
        for (int c = 0; c < 2; ++c)
            out[c] = sign * (-25 * f0[c] + 48 * f1[c] - 36 * f2[c] + 16 * f3[c] - 3 * f4[c]) / (12 * h);
    }
    return out;
}

namespace {

double coord_distance(const ChartGrid& g, int axis, double a, double b) {
    double d = std::abs(a - b);
    bool periodic = axis == 0 ? g.periodic_u : g.periodic_v;
    if (!periodic) return d;
    double period = axis == 0 ? (g.u1 - g.u0) : (g.v1 - g.v0);
    d = std::fmod(d, period);
    return std::min(d, period - d);
}

void check_inside(const ChartGrid& g, const Vec2& p, const std::string& where) {
    const double tol = 1e-9;
    if (!g.periodic_u && (p[0] < g.u0 - tol || p[0] > g.u1 + tol))
        throw SchemaError("path leaves chart " + g.id + " " + where);
    if (!g.periodic_v && (p[1] < g.v0 - tol || p[1] > g.v1 + tol))
        throw SchemaError("path leaves chart " + g.id + " " + where);
}

void check_joint(const ChartedGeometry& geom, int chart_a, const Vec2& pa, int chart_b, const Vec2& pb,
                 const std::string& what) {
    const double tol = 1e-8;
    if (chart_a == chart_b) {
        const ChartGrid& g = geom.chart(chart_a);
        if (coord_distance(g, 0, pa[0], pb[0]) > tol || coord_distance(g, 1, pa[1], pb[1]) > tol)
            throw SchemaError(what + ": endpoints disagree");
        return;
    }
    bool flipped;
    const geometry::Overlap* o = geom.find_overlap(chart_a, chart_b, flipped);
    if (!o) throw SchemaError(what + ": consecutive charts do not overlap");
    const geometry::AffineMap2& map = flipped ? o->b_to_a : o->a_to_b;
    Vec2 mapped = map.apply(pa);
    const ChartGrid& g = geom.chart(chart_b);
    if (coord_distance(g, 0, mapped[0], pb[0]) > tol || coord_distance(g, 1, mapped[1], pb[1]) > tol)
        throw SchemaError(what + ": endpoints disagree across the chart switch");
}

}  // namespace

void validate_path(const PathSpec& path, const ChartedGeometry& geom) {
    if (path.segments.empty()) throw SchemaError("path has no segments");
    for (size_t s = 0; s < path.segments.size(); ++s) {
        const PathSegment& seg = path.segments[s];
        if (seg.chart < 0 || seg.chart >= geom.chart_count()) throw SchemaError("path segment chart out of range");
        const ChartGrid& g = geom.chart(seg.chart);
        const int probes = std::max(8, seg.samples);
        for (int i = 0; i <= probes; ++i) check_inside(g, seg.point(static_cast<double>(i) / probes), "mid-segment");
    }
    for (size_t s = 0; s + 1 < path.segments.size(); ++s)
        check_joint(geom, path.segments[s].chart, path.segments[s].point(1.0), path.segments[s + 1].chart,
                    path.segments[s + 1].point(0.0), "segment joint " + std::to_string(s));
    if (path.closed)
        check_joint(geom, path.end_chart(), path.end(), path.start_chart(), path.start(), "loop closure");
}

PathSegment sampled_segment(int chart, std::vector<Vec2> points) {
    if (points.size() < 2) throw SchemaError("sampled segment needs at least two points");
    PathSegment seg;
    seg.chart = chart;
    seg.samples = static_cast<int>(points.size());
    seg.point = [pts = std::move(points)](double t) {
        double x = t * (pts.size() - 1);
        int i = std::max(0, std::min(static_cast<int>(std::floor(x)), static_cast<int>(pts.size()) - 2));
        double f = x - i;
        return Vec2{pts[i][0] * (1 - f) + pts[i + 1][0] * f, pts[i][1] * (1 - f) + pts[i + 1][1] * f};
    };
    return seg;
}

PathSpec latitude_loop(const GeometryPtr& sphere2, double theta, int turns) {
    if (sphere2->chart_count() != 2) throw SchemaError("latitude preset needs the two-cap sphere");
    const double cap = sphere2->chart(0).u1;
    PathSegment seg;
    double local;
    if (theta <= cap) {
        seg.chart = 0;
        local = theta;
    } else if (M_PI - theta <= cap) {
        seg.chart = 1;
        local = M_PI - theta;
    } else {
        throw SchemaError("latitude outside both caps");
    }
    const double w = 2 * M_PI * turns;
    seg.point = [local, w](double t) { return Vec2{local, w * t}; };
    seg.velocity = [w](double) { return Vec2{0.0, w}; };
    return PathSpec{{seg}, true};
}

PathSpec latitude_loop_wobbly(const GeometryPtr& sphere2, double theta) {
    PathSpec base = latitude_loop(sphere2, theta, 1);
    PathSegment& seg = base.segments[0];
    const double local = seg.point(0.0)[0];
    // phi(0) = 0, phi(1) = 2*pi, but phi' is not 1-periodic, so the
    // quadrature cannot ride on periodic super-convergence
    seg.point = [local](double t) {
        return Vec2{local, 2 * M_PI * t + (std::sin(3.0 * t) - t * std::sin(3.0)) / 3.0};
    };
    seg.velocity = [](double t) { return Vec2{0.0, 2 * M_PI + std::cos(3.0 * t) - std::sin(3.0) / 3.0}; };
    return base;
}

PathSpec straight_path(const GeometryPtr& geom, Vec2 from, Vec2 to) {
    PathSegment seg;
    seg.chart = 0;
    seg.point = [from, to](double t) {
        return Vec2{from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])};
    };
    seg.velocity = [from, to](double) { return Vec2{to[0] - from[0], to[1] - from[1]}; };
    (void)geom;
    return PathSpec{{seg}, false};
}

PathSpec torus_loop(const GeometryPtr& torus1, int axis, int turns) {
    if (torus1->chart_count() != 1) throw SchemaError("torus loop preset needs a single chart");
    const double w = 2 * M_PI * turns;
    PathSegment seg;
    seg.chart = 0;
    if (axis == 0) {
        seg.point = [w](double t) { return Vec2{w * t, 0.0}; };
        seg.velocity = [w](double) { return Vec2{w, 0.0}; };
    } else {
        seg.point = [w](double t) { return Vec2{0.0, w * t}; };
        seg.velocity = [w](double) { return Vec2{0.0, w}; };
    }
    return PathSpec{{seg}, true};
}

PathSpec equator_crossing_loop(const GeometryPtr& sphere2, double theta) {
    const double cap = sphere2->chart(0).u1;
    if (theta > cap || M_PI - theta > cap)
        throw SchemaError("equator crossing loop needs a latitude inside the overlap band");
    PathSegment north;
    north.chart = 0;
    north.point = [theta](double t) { return Vec2{theta, M_PI * t}; };
    north.velocity = [](double) { return Vec2{0.0, M_PI}; };
    PathSegment south;
    south.chart = 1;
    const double local = M_PI - theta;
    south.point = [local](double t) { return Vec2{local, M_PI + M_PI * t}; };
    south.velocity = [](double) { return Vec2{0.0, M_PI}; };
    return PathSpec{{north, south}, true};
}

}  // namespace glift::hol
