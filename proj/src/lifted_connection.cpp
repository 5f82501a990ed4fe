#include "glift/lifted_connection.hpp"

#include <array>
#include <cmath>
#include <functional>

#include "glift/errors.hpp"

namespace glift::conn {

using geometry::AffineMap2;
using geometry::ChartGrid;
using geometry::ChartedGeometry;
using geometry::IndexRect;
using geometry::Overlap;
using geometry::Vec2;

LiftedConnection lift_connection(const LocalConnection& base, const Extension& ext,
                                 std::vector<FormField> h_forms) {
    if (!ext.has_algebra_splitting())
        throw MathError("lift_connection: extension " + ext.name() + " has no algebra splitting");
    if (!base.group().same_as(ext.K)) throw SchemaError("lift_connection: base connection group must be K");
    const GeometryPtr& geom = base.geometry();
    const bool h_trivial = !ext.H.has_algebra();
    if (h_trivial && !h_forms.empty()) {
        for (const FormField& h : h_forms)
            if (h.max_norm() > 0.0) throw MathError("lift_connection: discrete H forces a zero H-part");
        h_forms.clear();
    }
    if (h_forms.empty())
        for (int c = 0; c < geom->chart_count(); ++c) h_forms.emplace_back(geom, c, 1, ext.H);
    if (static_cast<int>(h_forms.size()) != geom->chart_count())
        throw SchemaError("lift_connection: one H-form per chart required");

    std::vector<FormField> w;
    for (int c = 0; c < geom->chart_count(); ++c) {
        FormField wc(geom, c, 1, ext.G);
        const ChartGrid& g = geom->chart(c);
        for (int comp = 0; comp < 2; ++comp)
            for (int iu = 0; iu < g.nu; ++iu)
                for (int iv = 0; iv < g.nv; ++iv) {
                    AlgebraElement lift = ext.algebra_section(base.coeff(c).at(comp, iu, iv));
                    AlgebraElement h = ext.algebra_include(h_forms[c].at(comp, iu, iv));
                    wc.set(comp, iu, iv, ext.G.algebra_add(lift, h));
                }
        w.push_back(std::move(wc));
    }
    std::vector<std::vector<GroupElement>> g_trans;
    for (size_t o = 0; o < geom->overlaps().size(); ++o) {
        std::vector<GroupElement> tab;
        tab.reserve(base.transition_samples(static_cast<int>(o)).size());
        for (const GroupElement& k : base.transition_samples(static_cast<int>(o))) tab.push_back(ext.section(k));
        g_trans.push_back(std::move(tab));
    }
    LocalConnection lifted(geom, ext.G, std::move(w), std::move(g_trans));
    return LiftedConnection{base, ext, std::move(lifted), std::move(h_forms)};
}

namespace {

// Log-derivative secant (x1 relative to x0 over parameter distance span);
// circle values are unwrapped, discrete values contribute zero.
AlgebraElement log_secant(const Group& g, const GroupElement& x0, const GroupElement& x1, double span) {
    using groups::GroupKind;
    switch (g.kind()) {
        case GroupKind::Circle: {
            double d = x1.as_real() - x0.as_real();
            d -= std::round(d);
            return AlgebraElement(d / span);
        }
        case GroupKind::Matrix: {
            Eigen::MatrixXcd mid = 0.5 * (x0.as_matrix() + x1.as_matrix());
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(mid);
            return AlgebraElement(Eigen::MatrixXcd(lu.solve((x1.as_matrix() - x0.as_matrix()) / span)));
        }
        case GroupKind::Product: {
            std::vector<AlgebraElement> t;
            for (size_t i = 0; i < g.factors().size(); ++i)
                t.push_back(log_secant(g.factors()[i], x0.as_tuple()[i], x1.as_tuple()[i], span));
            return AlgebraElement(std::move(t));
        }
        default:
            return g.algebra_zero();
    }
}

// 1-form stored on an overlap rect with bilinear evaluation in the
// carrying chart's coordinates.
struct RectForm {
    const ChartGrid* grid = nullptr;
    IndexRect rect;
    bool full_v = false;
    const Group* algebra = nullptr;
    std::vector<AlgebraElement> cu, cv;

    int nu() const { return rect.iu1 - rect.iu0 + 1; }
    int nv() const { return rect.iv1 - rect.iv0 + 1; }

    AlgebraElement sample_array(const std::vector<AlgebraElement>& arr, double u, double v) const {
        double fu = (u - grid->u0) / grid->du() - rect.iu0;
        double fv = (v - grid->v0) / grid->dv();
        if (grid->periodic_v) fv = fv - std::floor(fv / grid->nv) * grid->nv;
        fv -= rect.iv0;
        fu = std::max(0.0, std::min(fu, nu() - 1.0));
        if (!full_v) fv = std::max(0.0, std::min(fv, nv() - 1.0));
        int iu = std::max(0, std::min(static_cast<int>(std::floor(fu)), nu() - 1));
        int iv = static_cast<int>(std::floor(fv));
        double tu = fu - iu, tv = fv - iv;
        int iu1 = std::min(iu + 1, nu() - 1);
        int iv1 = full_v ? (iv + 1) % nv() : std::min(iv + 1, nv() - 1);
        iv = std::max(0, std::min(iv, nv() - 1));
        const Group& g = *algebra;
        AlgebraElement a = g.algebra_add(g.algebra_scale(1 - tu, arr[iu * nv() + iv]),
                                         g.algebra_scale(tu, arr[iu1 * nv() + iv]));
        AlgebraElement b = g.algebra_add(g.algebra_scale(1 - tu, arr[iu * nv() + iv1]),
                                         g.algebra_scale(tu, arr[iu1 * nv() + iv1]));
        return g.algebra_add(g.algebra_scale(1 - tv, a), g.algebra_scale(tv, b));
    }

    AlgebraElement sample(int comp, double u, double v) const { return sample_array(comp == 0 ? cu : cv, u, v); }

    std::vector<AlgebraElement> derivative_uv() const {
        const Group& g = *algebra;
        auto add = [&](const AlgebraElement& a, const AlgebraElement& b) { return g.algebra_add(a, b); };
        auto scale = [&](double s, const AlgebraElement& a) { return g.algebra_scale(s, a); };
        auto du_cv = forms::detail::grid_derivative(cv, nu(), nv(), 0, grid->du(), false, add, scale);
        auto dv_cu =
            forms::detail::grid_derivative(cu, nu(), nv(), 1, grid->dv(), full_v && grid->periodic_v, add, scale);
        std::vector<AlgebraElement> out(cu.size());
        for (size_t i = 0; i < out.size(); ++i) out[i] = g.algebra_sub(du_cv[i], dv_cu[i]);
        return out;
    }
};

}  // namespace

OverlapDifferenceReport overlap_difference(const LiftedConnection& lc) {
    OverlapDifferenceReport rep;
    const ChartedGeometry& geom = *lc.base.geometry();
    const Group& G = lc.extension.G;
    const Extension& ext = lc.extension;

    // a_ab = h-part of (pullback of w_b) - Ad(g^-1) w_a - g^-1 dg on the
    // rect samples of chart a.
    std::vector<RectForm> stored(geom.overlaps().size());
    for (size_t oi = 0; oi < geom.overlaps().size(); ++oi) {
        const Overlap& o = geom.overlaps()[oi];
        const ChartGrid& ga = geom.chart(o.a);
        RectForm rf;
        rf.grid = &ga;
        rf.rect = o.rect_a;
        rf.full_v = ga.periodic_v && (o.rect_a.iv1 - o.rect_a.iv0 + 1 == ga.nv);
        rf.algebra = &ext.H;
        const auto& jac = o.a_to_b.lin;
        for (int iu = o.rect_a.iu0; iu <= o.rect_a.iu1; ++iu) {
            for (int iv = o.rect_a.iv0; iv <= o.rect_a.iv1; ++iv) {
                Vec2 p{ga.u(iu), ga.v(iv)};
                Vec2 q = o.a_to_b.apply(p);
                GroupElement g = lc.lifted.transition_at(static_cast<int>(oi), p[0], p[1]);
                GroupElement ginv = G.inv(g);
                AlgebraElement bu = lc.lifted.coeff_at(o.b, 0, q[0], q[1]);
                AlgebraElement bv = lc.lifted.coeff_at(o.b, 1, q[0], q[1]);
                for (int axis = 0; axis < 2; ++axis) {
                    AlgebraElement pulled =
                        G.algebra_add(G.algebra_scale(jac[0][axis], bu), G.algebra_scale(jac[1][axis], bv));
                    // g^-1 dg by central/one-sided secants within the rect
                    double h = axis == 0 ? ga.du() : ga.dv();
                    Vec2 pm = p, pp = p;
                    (axis == 0 ? pm[0] : pm[1]) -= h;
                    (axis == 0 ? pp[0] : pp[1]) += h;
                    bool ok_m = true, ok_p = true;
                    if (axis == 0) {
                        ok_m = iu > o.rect_a.iu0;
                        ok_p = iu < o.rect_a.iu1;
                    } else if (!rf.full_v) {
                        ok_m = iv > o.rect_a.iv0;
                        ok_p = iv < o.rect_a.iv1;
                    }
                    GroupElement gm = ok_m ? lc.lifted.transition_at(static_cast<int>(oi), pm[0], pm[1]) : g;
                    GroupElement gp = ok_p ? lc.lifted.transition_at(static_cast<int>(oi), pp[0], pp[1]) : g;
                    double span = (ok_m ? h : 0.0) + (ok_p ? h : 0.0);
                    AlgebraElement dlog = span > 0 ? log_secant(G, gm, gp, span) : G.algebra_zero();
                    AlgebraElement gauge =
                        G.algebra_add(G.ad(ginv, lc.lifted.coeff_at(o.a, axis, p[0], p[1])), dlog);
                    AlgebraElement diff = G.algebra_sub(pulled, gauge);
                    rep.max_base_component =
                        std::max(rep.max_base_component, ext.K.algebra_norm(ext.algebra_project(diff)));
                    (axis == 0 ? rf.cu : rf.cv).push_back(ext.algebra_h_part(diff));
                }
            }
        }
        OverlapForm af;
        af.overlap = static_cast<int>(oi);
        af.comp_u = rf.cu;
        af.comp_v = rf.cv;
        rep.a_forms.push_back(std::move(af));
        stored[oi] = std::move(rf);
    }

    // triples of pairwise-overlapping charts
    std::vector<std::array<int, 3>> triples;
    const int nc = geom.chart_count();
    for (int i = 0; i < nc; ++i)
        for (int j = i + 1; j < nc; ++j)
            for (int k = j + 1; k < nc; ++k) {
                bool f;
                if (geom.find_overlap(i, j, f) && geom.find_overlap(i, k, f) && geom.find_overlap(j, k, f))
                    triples.push_back({i, j, k});
            }
    if (triples.empty()) {
        rep.warning = "no triple overlaps on this geometry: the triple-intersection identity checks are skipped";
        return rep;
    }
    rep.r1_evaluated = rep.r2_evaluated = true;

    std::vector<std::vector<AlgebraElement>> da(stored.size());
    for (size_t oi = 0; oi < stored.size(); ++oi) da[oi] = stored[oi].derivative_uv();

    // a_{xy} at a point in chart-x coordinates (components in x coords);
    // the reversed orientation is minus the pullback of the stored form
    auto a_value = [&](int x, int y, double u, double v, int axis) -> AlgebraElement {
        bool flipped;
        const Overlap* rec = geom.find_overlap(x, y, flipped);
        int oi = static_cast<int>(rec - geom.overlaps().data());
        const Group& H = ext.H;
        if (!flipped) return stored[oi].sample(axis, u, v);
        Vec2 q = rec->b_to_a.apply({u, v});
        AlgebraElement au = stored[oi].sample(0, q[0], q[1]);
        AlgebraElement av = stored[oi].sample(1, q[0], q[1]);
        const auto& jac = rec->b_to_a.lin;
        AlgebraElement pulled = H.algebra_add(H.algebra_scale(jac[0][axis], au), H.algebra_scale(jac[1][axis], av));
        return H.algebra_scale(-1.0, pulled);
    };
    auto da_value = [&](int x, int y, double u, double v) -> AlgebraElement {
        bool flipped;
        const Overlap* rec = geom.find_overlap(x, y, flipped);
        int oi = static_cast<int>(rec - geom.overlaps().data());
        if (!flipped) return stored[oi].sample_array(da[oi], u, v);
        Vec2 q = rec->b_to_a.apply({u, v});
        return ext.H.algebra_scale(-rec->b_to_a.det(), stored[oi].sample_array(da[oi], q[0], q[1]));
    };
    // triple product c_xyz = g_xy g_yz g_zx at a point given in chart-x
    // coordinates (each factor evaluated in its own chart's coordinates)
    auto c_value = [&](int x, int y, int z, double u, double v) -> GroupElement {
        bool f;
        const Overlap* rxy = geom.find_overlap(x, y, f);
        AffineMap2 x_to_y = (rxy->a == x) ? rxy->a_to_b : rxy->b_to_a;
        Vec2 py = x_to_y.apply({u, v});
        GroupElement gxy = lc.lifted.transition_between(x, y, u, v);
        GroupElement gyz = lc.lifted.transition_between(y, z, py[0], py[1]);
        GroupElement gzx = G.inv(lc.lifted.transition_between(x, z, u, v));
        return G.mul(G.mul(gxy, gyz), gzx);
    };

    for (const auto& [i, j, k] : triples) {
        bool fij, fik, fjk;
        const Overlap* rij = geom.find_overlap(i, j, fij);
        const Overlap* rik = geom.find_overlap(i, k, fik);
        const Overlap* rjk = geom.find_overlap(j, k, fjk);
        const IndexRect& rect_ij = fij ? rij->rect_b : rij->rect_a;
        const IndexRect& rect_ik = fik ? rik->rect_b : rik->rect_a;
        IndexRect common{std::max(rect_ij.iu0, rect_ik.iu0), std::min(rect_ij.iu1, rect_ik.iu1),
                         std::max(rect_ij.iv0, rect_ik.iv0), std::min(rect_ij.iv1, rect_ik.iv1)};
        if (common.iu0 > common.iu1 || common.iv0 > common.iv1) continue;
        const ChartGrid& gi = geom.chart(i);
        const ChartGrid& gj = geom.chart(j);
        AffineMap2 i_to_j = fij ? rij->b_to_a : rij->a_to_b;
        const IndexRect& rect_jk = fjk ? rjk->rect_b : rjk->rect_a;
        for (int iu = common.iu0; iu <= common.iu1; ++iu) {
            for (int iv = common.iv0; iv <= common.iv1; ++iv) {
                double u = gi.u(iu), v = gi.v(iv);
                Vec2 pj = i_to_j.apply({u, v});
                double fu = (pj[0] - gj.u0) / gj.du();
                double fv = (pj[1] - gj.v0) / gj.dv();
                if (fu < rect_jk.iu0 - 1e-9 || fu > rect_jk.iu1 + 1e-9 || fv < rect_jk.iv0 - 1e-9 ||
                    fv > rect_jk.iv1 + 1e-9)
                    continue;  // outside the triple intersection
                const Group& H = ext.H;
                for (int axis = 0; axis < 2; ++axis) {
                    AlgebraElement ajk_u = a_value(j, k, pj[0], pj[1], 0);
                    AlgebraElement ajk_v = a_value(j, k, pj[0], pj[1], 1);
                    const auto& jac = i_to_j.lin;
                    AlgebraElement ajk = H.algebra_add(H.algebra_scale(jac[0][axis], ajk_u),
                                                       H.algebra_scale(jac[1][axis], ajk_v));
                    AlgebraElement lhs = H.algebra_add(H.algebra_sub(ajk, a_value(i, k, u, v, axis)),
                                                       a_value(i, j, u, v, axis));
                    // c^-1 dc by secant; vanishes for locally constant c
                    double h = axis == 0 ? gi.du() : gi.dv();
                    Vec2 pm{u, v}, pp{u, v};
                    (axis == 0 ? pm[0] : pm[1]) -= h;
                    (axis == 0 ? pp[0] : pp[1]) += h;
                    bool ok_m = (axis == 0 ? iu > common.iu0 : iv > common.iv0);
                    bool ok_p = (axis == 0 ? iu < common.iu1 : iv < common.iv1);
                    GroupElement c0 = c_value(i, j, k, u, v);
                    GroupElement cm = ok_m ? c_value(i, j, k, pm[0], pm[1]) : c0;
                    GroupElement cp = ok_p ? c_value(i, j, k, pp[0], pp[1]) : c0;
                    double span = (ok_m ? h : 0.0) + (ok_p ? h : 0.0);
                    AlgebraElement cdc = span > 0 ? log_secant(G, cm, cp, span) : G.algebra_zero();
                    AlgebraElement cdc_h = ext.algebra_h_part(cdc);
                    rep.r1 = std::max(rep.r1, H.algebra_norm(H.algebra_sub(lhs, cdc_h)));
                }
                AlgebraElement djk = H.algebra_scale(i_to_j.det(), da_value(j, k, pj[0], pj[1]));
                AlgebraElement r2v = H.algebra_add(H.algebra_sub(djk, da_value(i, k, u, v)), da_value(i, j, u, v));
                rep.r2 = std::max(rep.r2, H.algebra_norm(r2v));
            }
        }
    }
    return rep;
}

GerbeCurvatureReport gerbe_curvature(const LiftedConnection& w, const LiftedConnection* other) {
    GerbeCurvatureReport rep;
    std::vector<FormField> kw = curvature(w.lifted);
    for (const FormField& f : kw) rep.omega.push_back(forms::exterior_derivative(f));
    if (other) {
        std::vector<FormField> kw2 = curvature(other->lifted);
        double worst = 0.0;
        for (int c = 0; c < w.base.geometry()->chart_count(); ++c) {
            FormField diff = w.lifted.coeff(c).sub(other->lifted.coeff(c));
            FormField dd = forms::exterior_derivative(diff);
            FormField resid = kw[c].sub(kw2[c]).sub(dd);
            worst = std::max(worst, resid.max_norm());
        }
        rep.lift_independence_residual = worst;
    }
    return rep;
}

ChernResult chern_number(const std::vector<FormField>& f, const geometry::ChartedGeometry& geom) {
    if (static_cast<int>(f.size()) != geom.chart_count())
        throw SchemaError("chern_number: one curvature form per chart required");
    double raw = 0.0;
    for (int c = 0; c < geom.chart_count(); ++c) {
        if (f[c].degree() != 2) throw SchemaError("chern_number expects 2-forms");
        if (f[c].algebra_group().kind() != groups::GroupKind::Circle)
            throw MathError("chern_number needs circle-valued (abelian) curvature");
        const ChartGrid& g = geom.chart(c);
        double acc = 0.0;
        for (int iu = 0; iu < g.nu; ++iu)
            for (int iv = 0; iv < g.nv; ++iv)
                acc += geom.pou_weight(c, g.index(iu, iv)) * geom.quad_weight(c, iu, iv) *
                       f[c].at(0, iu, iv).as_real();
        raw += geom.orientation(c) * acc;
    }
    ChernResult out;
    out.raw = raw;
    out.integer = static_cast<long long>(std::llround(raw));
    out.defect = std::abs(raw - static_cast<double>(out.integer));
    if (out.defect > 0.05)
        throw ToleranceError("chern_number: integration defect " + std::to_string(out.defect) +
                             " exceeds 0.05 (non-integral flux or a too-coarse grid)");
    return out;
}

}  // namespace glift::conn
