#pragma once

#include <functional>

#include "glift/charted_geometry.hpp"
#include "glift/group.hpp"

namespace glift::forms {

using geometry::ChartGrid;
using geometry::GeometryPtr;
using groups::AlgebraElement;
using groups::Group;

namespace detail {

// Second-order grid derivative along one axis: central differences in the
// interior (periodic wrap where applicable), third-order one-sided
// stencils at open ends. T needs add(a,b) and scale(s,a) callables.
template <class T, class Add, class Scale>
std::vector<T> grid_derivative(const std::vector<T>& in, int nu, int nv, int axis, double h, bool periodic,
                               Add add, Scale scale) {
    std::vector<T> out(in.size());
    const int n_along = axis == 0 ? nu : nv;
    const int n_across = axis == 0 ? nv : nu;
    auto idx = [&](int along, int across) { return axis == 0 ? along * nv + across : across * nv + along; };
    for (int across = 0; across < n_across; ++across) {
        for (int i = 0; i < n_along; ++i) {
            T d;
            if (periodic) {
                int ip = (i + 1) % n_along, im = (i - 1 + n_along) % n_along;
                d = scale(1.0 / (2 * h), add(in[idx(ip, across)], scale(-1.0, in[idx(im, across)])));
            } else if (i == 0) {
                d = scale(1.0 / (6 * h),
                          add(add(scale(-11.0, in[idx(0, across)]), scale(18.0, in[idx(1, across)])),
                              add(scale(-9.0, in[idx(2, across)]), scale(2.0, in[idx(3, across)]))));
            } else if (i == n_along - 1) {
                int n = n_along - 1;
                d = scale(1.0 / (6 * h),
                          add(add(scale(11.0, in[idx(n, across)]), scale(-18.0, in[idx(n - 1, across)])),
                              add(scale(9.0, in[idx(n - 2, across)]), scale(-2.0, in[idx(n - 3, across)]))));
            } else {
                d = scale(1.0 / (2 * h), add(in[idx(i + 1, across)], scale(-1.0, in[idx(i - 1, across)])));
            }
            out[idx(i, across)] = d;
        }
    }
    return out;
}

}  // namespace detail

// Sampled Lie-algebra-valued p-form on one chart of a geometry. On the
// two-parameter charts of the catalog the component layout is f / (A_u,
// A_v) / F_uv for p = 0, 1, 2; p = 3 carries no components.
class FormField {
public:
    FormField(GeometryPtr geom, int chart, int degree, Group algebra_group);

    static int component_count(int degree) {
        switch (degree) {
            case 0:
            case 2:
                return degree == 0 ? 1 : 1;
            case 1:
                return 2;
            default:
                return 0;
        }
    }

    static FormField from_function(GeometryPtr geom, int chart, int degree, Group algebra_group,
                                   const std::function<AlgebraElement(int comp, double u, double v)>& f);

    const GeometryPtr& geometry() const { return geom_; }
    int chart() const { return chart_; }
    const ChartGrid& grid() const { return geom_->chart(chart_); }
    int degree() const { return degree_; }
    const Group& algebra_group() const { return group_; }
    int components() const { return component_count(degree_); }
    bool flagged_zero() const { return flagged_zero_; }
    void set_flagged_zero() { flagged_zero_ = true; }

    const AlgebraElement& at(int comp, int iu, int iv) const;
    void set(int comp, int iu, int iv, AlgebraElement v);
    // Bilinear interpolation; periodic directions wrap.
    AlgebraElement sample(int comp, double u, double v) const;

    FormField add(const FormField& rhs) const;
    FormField sub(const FormField& rhs) const;
    FormField scale(double s) const;
    double max_norm() const;
    double max_norm_on(const geometry::IndexRect& rect) const;

    const std::vector<AlgebraElement>& component(int comp) const { return comp_.at(comp); }
    std::vector<AlgebraElement>& component(int comp) { return comp_.at(comp); }

private:
    GeometryPtr geom_;
    int chart_;
    int degree_;
    Group group_;
    std::vector<std::vector<AlgebraElement>> comp_;
    bool flagged_zero_ = false;
};

// Finite-difference exterior derivative; degrees at or above the chart
// dimension return a flagged zero form.
FormField exterior_derivative(const FormField& f);

}  // namespace glift::forms
