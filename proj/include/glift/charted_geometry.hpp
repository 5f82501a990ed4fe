#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace glift::geometry {

using Vec2 = std::array<double, 2>;

struct ChartGrid {
    std::string id;
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
    int nu = 2, nv = 2;
    bool periodic_u = false, periodic_v = false;

    double du() const { return (u1 - u0) / (periodic_u ? nu : nu - 1); }
    double dv() const { return (v1 - v0) / (periodic_v ? nv : nv - 1); }
    double u(int iu) const { return u0 + iu * du(); }
    double v(int iv) const { return v0 + iv * dv(); }
    int index(int iu, int iv) const { return iu * nv + iv; }
    int samples() const { return nu * nv; }
};

// b = offset + lin * a, exact for every catalog transition.
struct AffineMap2 {
    Vec2 offset{0, 0};
    std::array<std::array<double, 2>, 2> lin{{{1, 0}, {0, 1}}};

    Vec2 apply(const Vec2& p) const {
        return {offset[0] + lin[0][0] * p[0] + lin[0][1] * p[1],
                offset[1] + lin[1][0] * p[0] + lin[1][1] * p[1]};
    }
    AffineMap2 compose(const AffineMap2& inner) const;  // this after inner
    double det() const { return lin[0][0] * lin[1][1] - lin[0][1] * lin[1][0]; }
};

// Inclusive index rectangle of grid samples inside an overlap.
struct IndexRect {
    int iu0 = 0, iu1 = -1, iv0 = 0, iv1 = -1;
    bool contains(int iu, int iv) const { return iu >= iu0 && iu <= iu1 && iv >= iv0 && iv <= iv1; }
    int count() const { return (iu1 - iu0 + 1) * (iv1 - iv0 + 1); }
};

struct Overlap {
    int a = 0, b = 0;
    IndexRect rect_a, rect_b;
    AffineMap2 a_to_b, b_to_a;
};

class ChartedGeometry {
public:
    ChartedGeometry(std::vector<ChartGrid> charts, std::vector<Overlap> overlaps,
                    std::vector<std::vector<double>> partition_of_unity, std::vector<double> orientation);

    int chart_count() const { return static_cast<int>(charts_.size()); }
    const ChartGrid& chart(int i) const { return charts_.at(i); }
    int chart_index(const std::string& id) const;
    const std::vector<Overlap>& overlaps() const { return overlaps_; }
    // Overlap joining charts a and b; flipped reports whether the stored
    // record lists them in the opposite order.
    const Overlap* find_overlap(int a, int b, bool& flipped) const;
    double pou_weight(int chart, int sample) const { return pou_.at(chart).at(sample); }
    const std::vector<double>& pou(int chart) const { return pou_.at(chart); }
    // Quadrature weight including cell area, Gregory-corrected along
    // non-periodic directions; multiply by the PoU weight and orientation
    // to integrate 2-forms.
    double quad_weight(int chart, int iu, int iv) const;
    double orientation(int chart) const { return orientation_.at(chart); }

    // Maximum round-trip error of the transition maps on overlap samples.
    double transition_round_trip_error() const;
    // Maximum deviation of summed PoU weights from 1 over covered samples.
    double pou_sum_error() const;

private:
    std::vector<ChartGrid> charts_;
    std::vector<Overlap> overlaps_;
    std::vector<std::vector<double>> pou_;
    std::vector<double> orientation_;
    std::vector<std::vector<double>> quad_u_, quad_v_;  // per chart directional weights
    void validate() const;
};

using GeometryPtr = std::shared_ptr<const ChartedGeometry>;

// Catalog keys: plane1 (one chart, [-1,1]^2), sphere2 (two polar caps,
// colatitude up to 3*pi/5, equatorial band overlap, azimuth-preserving
// transition theta' = pi - theta), torus1 (single periodic chart).
GeometryPtr builtin_geometry(const std::string& name, int nu = 256, int nv = 512);

// C-infinity step: 1 below lo, 0 above hi.
double smooth_step_down(double x, double lo, double hi);

// Gregory end-corrected trapezoid weights (fourth order) for n samples of
// an interval; periodic directions use plain uniform weights.
std::vector<double> gregory_weights(int n, double h, bool periodic);

}  // namespace glift::geometry
