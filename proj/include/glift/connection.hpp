#pragma once

#include "glift/form_field.hpp"

namespace glift::conn {

using forms::FormField;
using geometry::GeometryPtr;
using geometry::IndexRect;
using geometry::Overlap;
using groups::AlgebraElement;
using groups::Group;
using groups::GroupElement;

// Connection in local data: one algebra-valued 1-form per chart plus the
// bundle's transition values sampled on each overlap (stored on the
// first chart's samples; k_ab relates fiber coordinates by f_a = k_ab f_b).
// Presets also carry exact evaluators so transport does not pay
// interpolation error; sampled-only connections fall back to bilinear.
class LocalConnection {
public:
    LocalConnection(GeometryPtr geom, Group group, std::vector<FormField> coefficient_forms,
                    std::vector<std::vector<GroupElement>> transitions);

    const GeometryPtr& geometry() const { return geom_; }
    const Group& group() const { return group_; }
    const FormField& coeff(int chart) const { return a_.at(chart); }
    FormField& coeff(int chart) { return a_.at(chart); }
    const std::vector<GroupElement>& transition_samples(int overlap) const { return trans_.at(overlap); }

    // Transition value at a point of the first chart of the overlap.
    GroupElement transition_at(int overlap, double u, double v) const;
    // Transition between arbitrary charts at a point of chart `from`;
    // inverts the stored direction as needed.
    GroupElement transition_between(int from, int to, double u, double v) const;

    // Pointwise connection coefficient: exact evaluator when installed,
    // bilinear interpolation otherwise.
    AlgebraElement coeff_at(int chart, int comp, double u, double v) const;
    void install_exact(std::function<AlgebraElement(int chart, int comp, double u, double v)> f);
    void install_exact_transition(std::function<GroupElement(int overlap, double u, double v)> f);
    bool has_exact() const { return static_cast<bool>(exact_); }

private:
    GeometryPtr geom_;
    Group group_;
    std::vector<FormField> a_;
    std::vector<std::vector<GroupElement>> trans_;
    std::function<AlgebraElement(int, int, double, double)> exact_;
    std::function<GroupElement(int, double, double)> exact_trans_;
};

// F = dA + 1/2 [A, A] per chart, with the convention [A,A](X,Y) =
// 2[A(X),A(Y)], so F(du,dv) = dA(du,dv) + [A_u, A_v].
std::vector<FormField> curvature(const LocalConnection& a);

struct OverlapResidual {
    int overlap = 0;
    double connection_residual = 0.0;
    double curvature_residual = 0.0;
    int worst_iu = 0, worst_iv = 0;
};

struct GaugeReport {
    double max_connection_residual = 0.0;
    double max_curvature_residual = 0.0;
    std::vector<OverlapResidual> per_overlap;
};

// Residuals of A_b = Ad(k^-1) A_a|mapped + k^-1 dk and of curvature
// covariance F_b = Ad(k^-1) F_a|mapped over all overlaps.
GaugeReport gauge_compat_residual(const LocalConnection& a);

// Presets.
LocalConnection zero_connection(GeometryPtr geom, Group group);
// Abelian monopole on sphere2 in circle coordinates (turns):
// A_north = q (1 - cos theta) / (4 pi) dphi, A_south its Wu-Yang partner,
// transition k_ns(phi) = -q phi / (2 pi).
LocalConnection monopole_connection(GeometryPtr sphere2, long long charge);
// Constant matrix-valued connection M du + N dv on a single-chart
// geometry.
LocalConnection constant_matrix_connection(GeometryPtr geom, const Group& group, const AlgebraElement& m,
                                           const AlgebraElement& n);
// Flat connection with constant coefficients (a du + b dv, in turns) on
// the single periodic chart of torus1.
LocalConnection flat_torus_connection(GeometryPtr torus1, double a, double b);

}  // namespace glift::conn
