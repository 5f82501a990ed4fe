#pragma once

#include <functional>

#include "glift/charted_geometry.hpp"

namespace glift::hol {

using geometry::GeometryPtr;
using geometry::Vec2;

// One chart-confined piece of a path, parameterized over [0,1]. Presets
// install analytic point/velocity functions; paths loaded from sampled
// data interpolate and differentiate numerically.
struct PathSegment {
    int chart = 0;
    std::function<Vec2(double)> point;
    std::function<Vec2(double)> velocity;  // optional; high-order FD fallback when absent
    int samples = 64;                      // resolution used for serialization

    Vec2 velocity_at(double t) const;
};

struct PathSpec {
    std::vector<PathSegment> segments;
    bool closed = false;

    Vec2 start() const { return segments.front().point(0.0); }
    Vec2 end() const { return segments.back().point(1.0); }
    int start_chart() const { return segments.front().chart; }
    int end_chart() const { return segments.back().chart; }
};

// Checks segment-to-segment continuity (through the chart transition map
// when charts change, tolerance 1e-8), closure for closed paths, and that
// every sampled point stays inside its chart's rectangle.
void validate_path(const PathSpec& path, const geometry::ChartedGeometry& geom);

// Segment through sampled points with piecewise-linear interpolation.
PathSegment sampled_segment(int chart, std::vector<Vec2> points);

// Latitude loop at colatitude theta (global), integer turns; lives on the
// north or south cap of sphere2 depending on theta.
PathSpec latitude_loop(const GeometryPtr& sphere2, double theta, int turns = 1);
// Same latitude circle with a non-uniform closed parameterization whose
// speed is not 1-periodic; used for quadrature-order measurements.
PathSpec latitude_loop_wobbly(const GeometryPtr& sphere2, double theta);
// Straight segment in a single-chart geometry.
PathSpec straight_path(const GeometryPtr& geom, Vec2 from, Vec2 to);
// Coordinate loop on the periodic torus chart: axis 0 or 1, whole turns.
PathSpec torus_loop(const GeometryPtr& torus1, int axis, int turns = 1);
// Equator-band loop that crosses from the north chart into the south
// chart and back; exercises chart-switch transport.
PathSpec equator_crossing_loop(const GeometryPtr& sphere2, double theta);

}  // namespace glift::hol
