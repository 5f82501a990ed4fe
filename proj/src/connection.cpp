#include "glift/connection.hpp"

#include <cmath>

#include "glift/errors.hpp"

namespace glift::conn {

using geometry::AffineMap2;
using geometry::ChartGrid;
using geometry::Vec2;

namespace {

int rect_index(const IndexRect& r, int iu, int iv) { return (iu - r.iu0) * (r.iv1 - r.iv0 + 1) + (iv - r.iv0); }

double wrap_half(double x) { return x - std::round(x); }

// Bilinear interpolation of group values at the four surrounding rect
// samples; circle values are unwrapped around the first corner first.
GroupElement interpolate_group(const Group& g, const GroupElement& c00, const GroupElement& c10,
                               const GroupElement& c01, const GroupElement& c11, double tu, double tv) {
    using groups::GroupKind;
    switch (g.kind()) {
        case GroupKind::Circle: {
            double base = c00.as_real();
            double v10 = base + wrap_half(c10.as_real() - base);
            double v01 = base + wrap_half(c01.as_real() - base);
            double v11 = base + wrap_half(c11.as_real() - base);
            double out = (1 - tu) * (1 - tv) * base + tu * (1 - tv) * v10 + (1 - tu) * tv * v01 + tu * tv * v11;
            return GroupElement(groups::mod_one(out));
        }
        case GroupKind::Matrix: {
            Eigen::MatrixXcd out = (1 - tu) * (1 - tv) * c00.as_matrix() + tu * (1 - tv) * c10.as_matrix() +
                                   (1 - tu) * tv * c01.as_matrix() + tu * tv * c11.as_matrix();
            return GroupElement(out);
        }
        case GroupKind::Product: {
            std::vector<GroupElement> out;
            for (size_t i = 0; i < g.factors().size(); ++i)
                out.push_back(interpolate_group(g.factors()[i], c00.as_tuple()[i], c10.as_tuple()[i],
                                                c01.as_tuple()[i], c11.as_tuple()[i], tu, tv));
            return GroupElement(std::move(out));
        }
        default:
            // discrete values must be locally constant; nearest corner
            return (tu < 0.5 ? (tv < 0.5 ? c00 : c01) : (tv < 0.5 ? c10 : c11));
    }
}

}  // namespace

LocalConnection::LocalConnection(GeometryPtr geom, Group group, std::vector<FormField> coefficient_forms,
                                 std::vector<std::vector<GroupElement>> transitions)
    : geom_(std::move(geom)), group_(std::move(group)), a_(std::move(coefficient_forms)), trans_(std::move(transitions)) {
    if (static_cast<int>(a_.size()) != geom_->chart_count())
        throw SchemaError("connection needs one coefficient form per chart");
    for (int c = 0; c < geom_->chart_count(); ++c) {
        if (a_[c].degree() != 1) throw SchemaError("connection coefficients must be 1-forms");
        if (a_[c].chart() != c) throw SchemaError("connection coefficient chart mismatch");
    }
    if (trans_.size() != geom_->overlaps().size())
        throw SchemaError("connection needs one transition table per overlap");
    for (size_t o = 0; o < trans_.size(); ++o)
        if (static_cast<int>(trans_[o].size()) != geom_->overlaps()[o].rect_a.count())
            throw SchemaError("transition table size mismatch on overlap " + std::to_string(o));
}

GroupElement LocalConnection::transition_at(int overlap, double u, double v) const {
    if (exact_trans_) return exact_trans_(overlap, u, v);
    const Overlap& o = geom_->overlaps().at(overlap);
    const ChartGrid& g = geom_->chart(o.a);
    const IndexRect& r = o.rect_a;
    double fu = (u - g.u0) / g.du();
    double fv = (v - g.v0) / g.dv();
    if (g.periodic_v) fv = fv - std::floor(fv / g.nv) * g.nv;
    if (g.periodic_u) fu = fu - std::floor(fu / g.nu) * g.nu;
    int iu = std::max(r.iu0, std::min(static_cast<int>(std::floor(fu)), r.iu1 - 1));
    int iv_lo = r.iv0, iv_hi = r.iv1;
    bool full_v = g.periodic_v && (iv_hi - iv_lo + 1 == g.nv);
    int iv = static_cast<int>(std::floor(fv));
    if (!full_v) iv = std::max(iv_lo, std::min(iv, iv_hi - 1));
    double tu = fu - iu, tv = fv - iv;
    int iu1 = iu + 1;
    int iv1 = full_v ? (iv + 1) % g.nv : iv + 1;
    const auto& tab = trans_.at(overlap);
    return interpolate_group(group_, tab[rect_index(r, iu, iv)], tab[rect_index(r, iu1, iv)],
                             tab[rect_index(r, iu, iv1)], tab[rect_index(r, iu1, iv1)], tu, tv);
}

GroupElement LocalConnection::transition_between(int from, int to, double u, double v) const {
    bool flipped = false;
    const Overlap* o = nullptr;
    int idx = -1;
    for (size_t i = 0; i < geom_->overlaps().size(); ++i) {
        const Overlap& cand = geom_->overlaps()[i];
        if (cand.a == from && cand.b == to) {
            o = &cand;
            idx = static_cast<int>(i);
            flipped = false;
            break;
        }
        if (cand.a == to && cand.b == from) {
            o = &cand;
            idx = static_cast<int>(i);
            flipped = true;
            break;
        }
    }
    if (!o) throw SchemaError("charts " + std::to_string(from) + " and " + std::to_string(to) + " do not overlap");
    if (!flipped) return transition_at(idx, u, v);
    // stored as k_{to,from}; evaluate at the mapped point and invert
    Vec2 p = o->b_to_a.apply({u, v});
    return group_.inv(transition_at(idx, p[0], p[1]));
}

AlgebraElement LocalConnection::coeff_at(int chart, int comp, double u, double v) const {
    if (exact_) return exact_(chart, comp, u, v);
    return a_.at(chart).sample(comp, u, v);
}

void LocalConnection::install_exact(std::function<AlgebraElement(int, int, double, double)> f) {
    exact_ = std::move(f);
}

void LocalConnection::install_exact_transition(std::function<GroupElement(int, double, double)> f) {
    exact_trans_ = std::move(f);
}

std::vector<FormField> curvature(const LocalConnection& a) {
    std::vector<FormField> out;
    const Group& g = a.group();
    for (int c = 0; c < a.geometry()->chart_count(); ++c) {
        FormField f = forms::exterior_derivative(a.coeff(c));
        const auto& au = a.coeff(c).component(0);
        const auto& av = a.coeff(c).component(1);
        auto& target = f.component(0);
        for (size_t i = 0; i < target.size(); ++i)
            target[i] = g.algebra_add(target[i], g.algebra_bracket(au[i], av[i]));
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

// d(log k) along both axes on the overlap rect of chart a; circle values
// are locally unwrapped, matrix values use k^-1 dk, discrete values are
// locally constant hence zero.
struct TransitionDerivative {
    std::vector<AlgebraElement> du, dv;  // rect samples
};

AlgebraElement dlog_pair(const Group& g, const GroupElement& a, const GroupElement& b, double h) {
    // (log derivative) between two adjacent samples: first-order secant
    using groups::GroupKind;
    switch (g.kind()) {
        case GroupKind::Circle:
            return AlgebraElement(wrap_half(b.as_real() - a.as_real()) / h);
        case GroupKind::Matrix: {
            Eigen::MatrixXcd mid = 0.5 * (a.as_matrix() + b.as_matrix());
            Eigen::MatrixXcd diff = (b.as_matrix() - a.as_matrix()) / h;
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(mid);
            return AlgebraElement(Eigen::MatrixXcd(lu.solve(diff)));
        }
        case GroupKind::Product: {
            std::vector<AlgebraElement> out;
            for (size_t i = 0; i < g.factors().size(); ++i)
                out.push_back(dlog_pair(g.factors()[i], a.as_tuple()[i], b.as_tuple()[i], h));
            return AlgebraElement(std::move(out));
        }
        default:
            return g.algebra_zero();
    }
}

TransitionDerivative transition_dlog(const LocalConnection& conn, int overlap) {
    const Overlap& o = conn.geometry()->overlaps().at(overlap);
    const ChartGrid& g = conn.geometry()->chart(o.a);
    const IndexRect& r = o.rect_a;
    const Group& grp = conn.group();
    const auto& tab = conn.transition_samples(overlap);
    const int nu = r.iu1 - r.iu0 + 1, nv = r.iv1 - r.iv0 + 1;
    bool full_v = g.periodic_v && nv == g.nv;
    TransitionDerivative out;
    out.du.assign(tab.size(), grp.algebra_zero());
    out.dv.assign(tab.size(), grp.algebra_zero());
    auto at = [&](int i, int j) { return tab[i * nv + j]; };
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            // u direction: central where possible, secant at rect edges
            if (i > 0 && i < nu - 1)
                out.du[i * nv + j] = dlog_pair(grp, at(i - 1, j), at(i + 1, j), 2 * g.du());
            else if (i == 0 && nu > 1)
                out.du[i * nv + j] = dlog_pair(grp, at(0, j), at(1, j), g.du());
            else if (nu > 1)
                out.du[i * nv + j] = dlog_pair(grp, at(nu - 2, j), at(nu - 1, j), g.du());
            // v direction
            int jm = j - 1, jp = j + 1;
            if (full_v) {
                jm = (j - 1 + nv) % nv;
                jp = (j + 1) % nv;
                out.dv[i * nv + j] = dlog_pair(grp, at(i, jm), at(i, jp), 2 * g.dv());
            } else if (j > 0 && j < nv - 1) {
                out.dv[i * nv + j] = dlog_pair(grp, at(i, j - 1), at(i, j + 1), 2 * g.dv());
            } else if (j == 0 && nv > 1) {
                out.dv[i * nv + j] = dlog_pair(grp, at(i, 0), at(i, 1), g.dv());
            } else if (nv > 1) {
                out.dv[i * nv + j] = dlog_pair(grp, at(i, nv - 2), at(i, nv - 1), g.dv());
            }
        }
    }
    return out;
}

}  // namespace

GaugeReport gauge_compat_residual(const LocalConnection& a) {
    GaugeReport rep;
    const Group& grp = a.group();
    std::vector<FormField> curv = curvature(a);
    for (size_t oi = 0; oi < a.geometry()->overlaps().size(); ++oi) {
        const Overlap& o = a.geometry()->overlaps()[oi];
        const ChartGrid& ga = a.geometry()->chart(o.a);
        const IndexRect& r = o.rect_a;
        TransitionDerivative dlog = transition_dlog(a, static_cast<int>(oi));
        const auto& jac = o.a_to_b.lin;  // d(chart-b params)/d(chart-a params)
        double jdet = o.a_to_b.det();
        OverlapResidual res;
        res.overlap = static_cast<int>(oi);
        const int nv = r.iv1 - r.iv0 + 1;
        for (int iu = r.iu0; iu <= r.iu1; ++iu) {
            for (int iv = r.iv0; iv <= r.iv1; ++iv) {
                Vec2 p{ga.u(iu), ga.v(iv)};
                Vec2 q = o.a_to_b.apply(p);
                const GroupElement k = a.transition_at(static_cast<int>(oi), p[0], p[1]);
                const GroupElement kinv = grp.inv(k);
                const int ridx = (iu - r.iu0) * nv + (iv - r.iv0);
                // pullback of A_b through the affine transition
                AlgebraElement bu = a.coeff_at(o.b, 0, q[0], q[1]);
                AlgebraElement bv = a.coeff_at(o.b, 1, q[0], q[1]);
                for (int axis = 0; axis < 2; ++axis) {
                    AlgebraElement pulled = grp.algebra_add(grp.algebra_scale(jac[0][axis], bu),
                                                            grp.algebra_scale(jac[1][axis], bv));
                    AlgebraElement gauge = grp.ad(kinv, a.coeff_at(o.a, axis, p[0], p[1]));
                    gauge = grp.algebra_add(gauge, axis == 0 ? dlog.du[ridx] : dlog.dv[ridx]);
                    double dev = grp.algebra_norm(grp.algebra_sub(pulled, gauge));
                    if (dev > res.connection_residual) {
                        res.connection_residual = dev;
                        res.worst_iu = iu;
                        res.worst_iv = iv;
                    }
                }
                // curvature covariance
                AlgebraElement fb = curv[o.b].sample(0, q[0], q[1]);
                AlgebraElement pulled_f = grp.algebra_scale(jdet, fb);
                AlgebraElement gauge_f = grp.ad(kinv, curv[o.a].at(0, iu, iv));
                double devf = grp.algebra_norm(grp.algebra_sub(pulled_f, gauge_f));
                res.curvature_residual = std::max(res.curvature_residual, devf);
            }
        }
        rep.max_connection_residual = std::max(rep.max_connection_residual, res.connection_residual);
        rep.max_curvature_residual = std::max(rep.max_curvature_residual, res.curvature_residual);
        rep.per_overlap.push_back(res);
    }
    return rep;
}

LocalConnection zero_connection(GeometryPtr geom, Group group) {
    std::vector<FormField> a;
    for (int c = 0; c < geom->chart_count(); ++c) a.emplace_back(geom, c, 1, group);
    std::vector<std::vector<GroupElement>> trans;
    for (const Overlap& o : geom->overlaps())
        trans.emplace_back(o.rect_a.count(), group.identity());
    LocalConnection out(geom, group, std::move(a), std::move(trans));
    Group g = out.group();
    out.install_exact([g](int, int, double, double) { return g.algebra_zero(); });
    out.install_exact_transition([g](int, double, double) { return g.identity(); });
    return out;
}

LocalConnection monopole_connection(GeometryPtr sphere2, long long charge) {
    if (sphere2->chart_count() != 2) throw SchemaError("monopole preset needs the two-cap sphere");
    Group s1 = Group::circle();
    const double q = static_cast<double>(charge);
    auto coeff = [q](int chart, int comp, double theta, double) -> AlgebraElement {
        if (comp == 0) return AlgebraElement(0.0);
        double sign = chart == 0 ? 1.0 : -1.0;
        return AlgebraElement(sign * q * (1.0 - std::cos(theta)) / (4.0 * M_PI));
    };
    std::vector<FormField> a;
    for (int c = 0; c < 2; ++c)
        a.push_back(FormField::from_function(sphere2, c, 1, s1, [&, c](int comp, double u, double v) {
            return coeff(c, comp, u, v);
        }));
    auto kval = [q](double phi) { return GroupElement(groups::mod_one(-q * phi / (2.0 * M_PI))); };
    std::vector<std::vector<GroupElement>> trans;
    for (const Overlap& o : sphere2->overlaps()) {
        const ChartGrid& g = sphere2->chart(o.a);
        std::vector<GroupElement> tab;
        tab.reserve(o.rect_a.count());
        for (int iu = o.rect_a.iu0; iu <= o.rect_a.iu1; ++iu)
            for (int iv = o.rect_a.iv0; iv <= o.rect_a.iv1; ++iv) tab.push_back(kval(g.v(iv)));
        trans.push_back(std::move(tab));
    }
    LocalConnection out(sphere2, s1, std::move(a), std::move(trans));
    out.install_exact([coeff](int chart, int comp, double u, double v) { return coeff(chart, comp, u, v); });
    out.install_exact_transition([kval](int, double, double v) { return kval(v); });
    return out;
}

LocalConnection constant_matrix_connection(GeometryPtr geom, const Group& group, const AlgebraElement& m,
                                           const AlgebraElement& n) {
    if (geom->chart_count() != 1) throw SchemaError("constant connection preset needs a single chart");
    group.check_algebra_member(m);
    group.check_algebra_member(n);
    std::vector<FormField> a;
    a.push_back(FormField::from_function(geom, 0, 1, group, [&](int comp, double, double) {
        return comp == 0 ? m : n;
    }));
    LocalConnection out(geom, group, std::move(a), {});
    out.install_exact([m, n](int, int comp, double, double) { return comp == 0 ? m : n; });
    return out;
}

LocalConnection flat_torus_connection(GeometryPtr torus1, double a, double b) {
    if (torus1->chart_count() != 1) throw SchemaError("flat torus preset needs a single chart");
    Group s1 = Group::circle();
    std::vector<FormField> forms;
    forms.push_back(FormField::from_function(torus1, 0, 1, s1, [&](int comp, double, double) {
        return AlgebraElement(comp == 0 ? a : b);
    }));
    LocalConnection out(torus1, s1, std::move(forms), {});
    out.install_exact([a, b](int, int comp, double, double) { return AlgebraElement(comp == 0 ? a : b); });
    return out;
}

}  // namespace glift::conn
