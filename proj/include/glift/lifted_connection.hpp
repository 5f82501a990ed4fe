#pragma once

#include <optional>

#include "glift/connection.hpp"
#include "glift/extension.hpp"

namespace glift::conn {

using groups::Extension;

// A family of G-valued connections over a K-connection: w_i =
// (algebra section of A_i) + (included H-part h_i), with transitions
// g_ij = section(k_ij). The K-projection of w_i reproduces A_i exactly.
struct LiftedConnection {
    LocalConnection base;    // over K
    Extension extension;
    LocalConnection lifted;  // over G: the w family with its g transitions
    std::vector<FormField> h_forms;  // the chosen H-algebra parts per chart
};

// h_forms empty means zero H-part everywhere; for a discrete H the H-part
// is forced to zero and nonzero h_forms are rejected.
LiftedConnection lift_connection(const LocalConnection& base, const Extension& ext,
                                 std::vector<FormField> h_forms = {});

// H-algebra-valued 1-form on the rect samples of the overlap's first
// chart, components in that chart's coordinates.
struct OverlapForm {
    int overlap = 0;
    std::vector<AlgebraElement> comp_u, comp_v;
};

struct OverlapDifferenceReport {
    std::vector<OverlapForm> a_forms;
    // Residual of a_jk - a_ik + a_ij = c^-1 dc over triple-overlap samples.
    double r1 = 0.0;
    bool r1_evaluated = false;
    std::string warning;  // set when no triple overlaps exist
    // Cech-coboundary residual of the 2-form family d a_ij over triples.
    double r2 = 0.0;
    bool r2_evaluated = false;
    // Largest K-component of the computed differences (should be FD noise).
    double max_base_component = 0.0;
};

OverlapDifferenceReport overlap_difference(const LiftedConnection& lifted);

struct GerbeCurvatureReport {
    std::vector<FormField> omega;  // d of the lifted curvature per chart; zero 3-form on surfaces
    // max over charts of |K(w) - K(w') - d(w - w')|; -1 when no second lift
    double lift_independence_residual = -1.0;
};

GerbeCurvatureReport gerbe_curvature(const LiftedConnection& w, const LiftedConnection* other = nullptr);

struct ChernResult {
    long long integer = 0;
    double raw = 0.0;
    double defect = 0.0;
};

// Weighted quadrature of an abelian curvature family over a closed
// oriented surface; throws ToleranceError when the defect exceeds 0.05.
ChernResult chern_number(const std::vector<FormField>& f, const geometry::ChartedGeometry& geom);

}  // namespace glift::conn
