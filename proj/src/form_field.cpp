#include "glift/form_field.hpp"

#include <cmath>

#include "glift/errors.hpp"

namespace glift::forms {

FormField::FormField(GeometryPtr geom, int chart, int degree, Group algebra_group)
    : geom_(std::move(geom)), chart_(chart), degree_(degree), group_(std::move(algebra_group)) {
    if (degree_ < 0 || degree_ > 3) throw SchemaError("form degree must be 0..3");
    const int n = grid().samples();
    comp_.assign(component_count(degree_), std::vector<AlgebraElement>(n, group_.algebra_zero()));
}

FormField FormField::from_function(GeometryPtr geom, int chart, int degree, Group algebra_group,
                                   const std::function<AlgebraElement(int, double, double)>& f) {
    FormField out(std::move(geom), chart, degree, std::move(algebra_group));
    const ChartGrid& g = out.grid();
    for (int c = 0; c < out.components(); ++c)
        for (int iu = 0; iu < g.nu; ++iu)
            for (int iv = 0; iv < g.nv; ++iv) out.comp_[c][g.index(iu, iv)] = f(c, g.u(iu), g.v(iv));
    return out;
}

const AlgebraElement& FormField::at(int comp, int iu, int iv) const {
    return comp_.at(comp)[grid().index(iu, iv)];
}

void FormField::set(int comp, int iu, int iv, AlgebraElement v) {
    comp_.at(comp)[grid().index(iu, iv)] = std::move(v);
}

AlgebraElement FormField::sample(int comp, double u, double v) const {
    const ChartGrid& g = grid();
    double fu = (u - g.u0) / g.du();
    double fv = (v - g.v0) / g.dv();
    auto clampf = [](double x, double lo, double hi) { return x < lo ? lo : (x > hi ? hi : x); };
    if (g.periodic_u)
        fu = fu - std::floor(fu / g.nu) * g.nu;
    else
        fu = clampf(fu, 0.0, g.nu - 1.0);
    if (g.periodic_v)
        fv = fv - std::floor(fv / g.nv) * g.nv;
    else
        fv = clampf(fv, 0.0, g.nv - 1.0);
    int iu = static_cast<int>(std::floor(fu));
    int iv = static_cast<int>(std::floor(fv));
    double tu = fu - iu, tv = fv - iv;
    int iu1 = g.periodic_u ? (iu + 1) % g.nu : std::min(iu + 1, g.nu - 1);
    int iv1 = g.periodic_v ? (iv + 1) % g.nv : std::min(iv + 1, g.nv - 1);
    if (iu >= g.nu) iu = g.nu - 1;
    if (iv >= g.nv) iv = g.nv - 1;
    const auto& arr = comp_.at(comp);
    const Group& gr = group_;
    AlgebraElement a = gr.algebra_add(gr.algebra_scale(1.0 - tu, arr[g.index(iu, iv)]),
                                      gr.algebra_scale(tu, arr[g.index(iu1, iv)]));
    AlgebraElement b = gr.algebra_add(gr.algebra_scale(1.0 - tu, arr[g.index(iu, iv1)]),
                                      gr.algebra_scale(tu, arr[g.index(iu1, iv1)]));
    return gr.algebra_add(gr.algebra_scale(1.0 - tv, a), gr.algebra_scale(tv, b));
}

FormField FormField::add(const FormField& rhs) const {
    if (degree_ != rhs.degree_ || chart_ != rhs.chart_) throw SchemaError("form add: shape mismatch");
    FormField out = *this;
    for (int c = 0; c < components(); ++c)
        for (size_t i = 0; i < comp_[c].size(); ++i)
            out.comp_[c][i] = group_.algebra_add(comp_[c][i], rhs.comp_[c][i]);
    return out;
}

FormField FormField::sub(const FormField& rhs) const { return add(rhs.scale(-1.0)); }

FormField FormField::scale(double s) const {
    FormField out = *this;
    for (int c = 0; c < components(); ++c)
        for (size_t i = 0; i < comp_[c].size(); ++i) out.comp_[c][i] = group_.algebra_scale(s, comp_[c][i]);
    return out;
}

double FormField::max_norm() const {
    double n = 0.0;
    for (int c = 0; c < components(); ++c)
        for (const AlgebraElement& a : comp_[c]) n = std::max(n, group_.algebra_norm(a));
    return n;
}

double FormField::max_norm_on(const geometry::IndexRect& rect) const {
    double n = 0.0;
    const ChartGrid& g = grid();
    for (int c = 0; c < components(); ++c)
        for (int iu = rect.iu0; iu <= rect.iu1; ++iu)
            for (int iv = rect.iv0; iv <= rect.iv1; ++iv)
                n = std::max(n, group_.algebra_norm(comp_[c][g.index(iu, iv)]));
    return n;
}

FormField exterior_derivative(const FormField& f) {
    const ChartGrid& g = f.grid();
    const Group& gr = f.algebra_group();
    auto add = [&](const AlgebraElement& a, const AlgebraElement& b) { return gr.algebra_add(a, b); };
    auto scale = [&](double s, const AlgebraElement& a) { return gr.algebra_scale(s, a); };
    auto ddu = [&](const std::vector<AlgebraElement>& in) {
        return detail::grid_derivative(in, g.nu, g.nv, 0, g.du(), g.periodic_u, add, scale);
    };
    auto ddv = [&](const std::vector<AlgebraElement>& in) {
        return detail::grid_derivative(in, g.nu, g.nv, 1, g.dv(), g.periodic_v, add, scale);
    };

    if (f.degree() == 0) {
        FormField out(f.geometry(), f.chart(), 1, gr);
        out.component(0) = ddu(f.component(0));
        out.component(1) = ddv(f.component(0));
        return out;
    }
    if (f.degree() == 1) {
        FormField out(f.geometry(), f.chart(), 2, gr);
        std::vector<AlgebraElement> du_av = ddu(f.component(1));
        std::vector<AlgebraElement> dv_au = ddv(f.component(0));
        auto& target = out.component(0);
        for (size_t i = 0; i < target.size(); ++i) target[i] = gr.algebra_sub(du_av[i], dv_au[i]);
        return out;
    }
    // beyond the chart dimension everything is the zero form
    FormField out(f.geometry(), f.chart(), 3, gr);
    out.set_flagged_zero();
    return out;
}

}  // namespace glift::forms
