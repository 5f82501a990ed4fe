#include "glift/charted_geometry.hpp"

#include <cmath>

#include "glift/errors.hpp"

namespace glift::geometry {

AffineMap2 AffineMap2::compose(const AffineMap2& inner) const {
    AffineMap2 out;
    out.offset = apply(inner.offset);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.lin[i][j] = lin[i][0] * inner.lin[0][j] + lin[i][1] * inner.lin[1][j];
    return out;
}

double smooth_step_down(double x, double lo, double hi) {
    if (x <= lo) return 1.0;
    if (x >= hi) return 0.0;
    double t = (x - lo) / (hi - lo);
    auto sigma = [](double s) { return s <= 0.0 ? 0.0 : std::exp(-1.0 / s); };
    return sigma(1.0 - t) / (sigma(t) + sigma(1.0 - t));
}

std::vector<double> gregory_weights(int n, double h, bool periodic) {
    std::vector<double> w(n, h);
    if (periodic) return w;
    if (n < 8) throw SchemaError("quadrature needs at least 8 samples per direction");
    // fourth-order Gregory end correction of the trapezoid rule
    const double end[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
    for (int k = 0; k < 3; ++k) {
        w[k] = end[k] * h;
        w[n - 1 - k] = end[k] * h;
    }
    return w;
}

ChartedGeometry::ChartedGeometry(std::vector<ChartGrid> charts, std::vector<Overlap> overlaps,
                                 std::vector<std::vector<double>> partition_of_unity,
                                 std::vector<double> orientation)
    : charts_(std::move(charts)),
      overlaps_(std::move(overlaps)),
      pou_(std::move(partition_of_unity)),
      orientation_(std::move(orientation)) {
    if (charts_.empty()) throw SchemaError("geometry needs at least one chart");
    for (const ChartGrid& c : charts_)
        if (c.nu <= 1 || c.nv <= 1) throw SchemaError("chart grid resolution must be positive");
    if (pou_.size() != charts_.size() || orientation_.size() != charts_.size())
        throw SchemaError("geometry: per-chart data size mismatch");
    for (size_t i = 0; i < charts_.size(); ++i) {
        if (static_cast<int>(pou_[i].size()) != charts_[i].samples())
            throw SchemaError("geometry: partition-of-unity sample count mismatch");
        quad_u_.push_back(gregory_weights(charts_[i].nu, charts_[i].du(), charts_[i].periodic_u));
        quad_v_.push_back(gregory_weights(charts_[i].nv, charts_[i].dv(), charts_[i].periodic_v));
    }
    validate();
}

int ChartedGeometry::chart_index(const std::string& id) const {
    for (size_t i = 0; i < charts_.size(); ++i)
        if (charts_[i].id == id) return static_cast<int>(i);
    throw SchemaError("unknown chart id: " + id);
}

const Overlap* ChartedGeometry::find_overlap(int a, int b, bool& flipped) const {
    for (const Overlap& o : overlaps_) {
        if (o.a == a && o.b == b) {
            flipped = false;
            return &o;
        }
        if (o.a == b && o.b == a) {
            flipped = true;
            return &o;
        }
    }
    return nullptr;
}

double ChartedGeometry::quad_weight(int chart, int iu, int iv) const {
    return quad_u_.at(chart)[iu] * quad_v_.at(chart)[iv];
}

double ChartedGeometry::transition_round_trip_error() const {
    double worst = 0.0;
    for (const Overlap& o : overlaps_) {
        const ChartGrid& ca = charts_[o.a];
        AffineMap2 round = o.b_to_a.compose(o.a_to_b);
        for (int iu = o.rect_a.iu0; iu <= o.rect_a.iu1; ++iu)
            for (int iv = o.rect_a.iv0; iv <= o.rect_a.iv1; ++iv) {
                Vec2 p{ca.u(iu), ca.v(iv)};
                Vec2 q = round.apply(p);
                double eu = std::abs(q[0] - p[0]);
                double ev = std::abs(q[1] - p[1]);
                if (ca.periodic_u) eu = std::min(eu, std::abs(eu - (ca.u1 - ca.u0)));
                if (ca.periodic_v) ev = std::min(ev, std::abs(ev - (ca.v1 - ca.v0)));
                worst = std::max(worst, std::max(eu, ev));
            }
    }
    return worst;
}

double ChartedGeometry::pou_sum_error() const {
    // Compared where the mapped point lands on a grid sample of the other
    // chart; grids that do not align across the transition contribute no
    // comparable pairs.
    double worst = 0.0;
    for (const Overlap& o : overlaps_) {
        const ChartGrid& ca = charts_[o.a];
        const ChartGrid& cb = charts_[o.b];
        for (int iu = o.rect_a.iu0; iu <= o.rect_a.iu1; ++iu)
            for (int iv = o.rect_a.iv0; iv <= o.rect_a.iv1; ++iv) {
                Vec2 p{ca.u(iu), ca.v(iv)};
                Vec2 q = o.a_to_b.apply(p);
                double fu = (q[0] - cb.u0) / cb.du();
                double fv = (q[1] - cb.v0) / cb.dv();
                int ju = static_cast<int>(std::lround(fu));
                int jv = static_cast<int>(std::lround(fv));
                if (std::abs(fu - ju) > 1e-6 || std::abs(fv - jv) > 1e-6) continue;
                if (cb.periodic_v) jv = ((jv % cb.nv) + cb.nv) % cb.nv;
                if (cb.periodic_u) ju = ((ju % cb.nu) + cb.nu) % cb.nu;
                if (ju < 0 || ju >= cb.nu || jv < 0 || jv >= cb.nv) continue;
                double sum = pou_[o.a][ca.index(iu, iv)] + pou_[o.b][cb.index(ju, jv)];
                worst = std::max(worst, std::abs(sum - 1.0));
            }
    }
    return worst;
}

void ChartedGeometry::validate() const {
    double rt = transition_round_trip_error();
    if (rt > 1e-10) throw MathError("transition maps fail the round-trip check: error " + std::to_string(rt));
    double ps = pou_sum_error();
    if (ps > 1e-12)
        throw MathError("partition of unity does not sum to 1 on shared samples: error " + std::to_string(ps));
}

namespace {

GeometryPtr make_plane1(int nu, int nv) {
    ChartGrid c{"main", -1.0, 1.0, -1.0, 1.0, nu, nv, false, false};
    std::vector<std::vector<double>> pou{std::vector<double>(static_cast<size_t>(nu) * nv, 1.0)};
    return std::make_shared<ChartedGeometry>(std::vector<ChartGrid>{c}, std::vector<Overlap>{}, pou,
                                             std::vector<double>{1.0});
}

GeometryPtr make_torus1(int nu, int nv) {
    ChartGrid c{"main", 0.0, 2 * M_PI, 0.0, 2 * M_PI, nu, nv, true, true};
    std::vector<std::vector<double>> pou{std::vector<double>(static_cast<size_t>(nu) * nv, 1.0)};
    return std::make_shared<ChartedGeometry>(std::vector<ChartGrid>{c}, std::vector<Overlap>{}, pou,
                                             std::vector<double>{1.0});
}

// Two polar caps out to colatitude 3*pi/5, band overlap [2*pi/5, 3*pi/5].
// With the cap angle a multiple of pi*3/5 the reflection theta' = pi -
// theta maps theta-grid lines onto theta-grid lines whenever nu-1 is
// divisible by 3 (the default 256 qualifies).
GeometryPtr make_sphere2(int nu, int nv) {
    const double cap = 0.6 * M_PI;
    const double band_lo = M_PI - cap;  // 0.4*pi
    ChartGrid north{"north", 0.0, cap, 0.0, 2 * M_PI, nu, nv, false, true};
    ChartGrid south{"south", 0.0, cap, 0.0, 2 * M_PI, nu, nv, false, true};

    Overlap o;
    o.a = 0;
    o.b = 1;
    // indices with theta >= band_lo (round to grid; exact when 3 | nu-1)
    int i0 = static_cast<int>(std::ceil(band_lo / north.du() - 1e-9));
    o.rect_a = IndexRect{i0, nu - 1, 0, nv - 1};
    o.rect_b = IndexRect{i0, nu - 1, 0, nv - 1};
    o.a_to_b = AffineMap2{{M_PI, 0.0}, {{{-1.0, 0.0}, {0.0, 1.0}}}};
    o.b_to_a = o.a_to_b;

    // global weight profile W(theta), evaluated from the global colatitude
    std::vector<std::vector<double>> pou(2);
    pou[0].resize(north.samples());
    pou[1].resize(south.samples());
    for (int iu = 0; iu < nu; ++iu) {
        double w_n = smooth_step_down(north.u(iu), band_lo, cap);
        double w_s = 1.0 - smooth_step_down(M_PI - south.u(iu), band_lo, cap);
        for (int iv = 0; iv < nv; ++iv) {
            pou[0][north.index(iu, iv)] = w_n;
            pou[1][south.index(iu, iv)] = w_s;
        }
    }
    // the south chart's own orientation form is opposite to the global one
    return std::make_shared<ChartedGeometry>(std::vector<ChartGrid>{north, south}, std::vector<Overlap>{o}, pou,
                                             std::vector<double>{1.0, -1.0});
}

}  // namespace

GeometryPtr builtin_geometry(const std::string& name, int nu, int nv) {
    if (nu <= 1 || nv <= 1) throw SchemaError("geometry grid resolution must be positive");
    if (name == "plane1") return make_plane1(nu, nv);
    if (name == "torus1") return make_torus1(nu, nv);
    if (name == "sphere2") return make_sphere2(nu, nv);
    throw SchemaError("unknown geometry catalog key: " + name);
}

}  // namespace glift::geometry
