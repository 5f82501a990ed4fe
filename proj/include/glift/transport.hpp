#pragma once

#include "glift/connection.hpp"
#include "glift/path.hpp"

namespace glift::hol {

using conn::LocalConnection;
using forms::FormField;
using groups::AlgebraElement;
using groups::Group;
using groups::GroupElement;

// Solves g' = -A(c'(t)) g, g(0) = e, along the path; chart switches
// multiply by the inverse transition value at the switch point. Abelian
// structure groups short-circuit to exp(-circulation) with composite
// Simpson quadrature; matrix groups integrate with classical RK4.
GroupElement parallel_transport(const LocalConnection& a, const PathSpec& path, int steps_per_segment = 1024);

struct SubgroupSummary {
    enum class Kind { Trivial, FiniteCyclic, FiniteGroup, DenseSample, Unclassified };
    Kind kind = Kind::Unclassified;
    long long order = 0;
    std::vector<GroupElement> elements;  // closure sample, up to the budget
    std::string description;
};

struct Basepoint {
    int chart = 0;
    geometry::Vec2 point{0, 0};
};

struct HolonomySample {
    std::vector<GroupElement> loop_elements;
    SubgroupSummary summary;
};

HolonomySample loop_holonomy_sample(const LocalConnection& a, const std::vector<PathSpec>& loops,
                                    const Basepoint& basepoint, int steps_per_segment = 1024,
                                    long long closure_budget = 4096);

// Closure/classification helper, exposed for tests: circle values are
// recognized as a finite cyclic subgroup when all sampled holonomies are
// rational within 1e-7 with denominator at most the budget.
SubgroupSummary classify_generated_subgroup(const Group& g, const std::vector<GroupElement>& elems,
                                            long long budget);

// Free uniform transitive distribution data: the connection enlarged by a
// uniform subgroup L of K; reduction pushes everything to M = K/L.
struct TransitiveDistribution {
    LocalConnection base;
    Group L;
    Group M;
    std::function<GroupElement(const GroupElement&)> project;           // K -> M
    std::function<AlgebraElement(const AlgebraElement&)> alg_project;   // Lie(K) -> Lie(M)
    std::function<GroupElement(const GroupElement&)> include_l;         // L -> K
    std::function<bool(const GroupElement&)> in_l;                      // membership in include(L), optional

    // L = Z/n inside the circle; M is again the circle with the angle
    // scaled by n.
    static TransitiveDistribution circle_mod(LocalConnection base, long long n);
    static TransitiveDistribution trivial_uniform(LocalConnection base);  // L = {e}, M = K
    static TransitiveDistribution full_uniform(LocalConnection base);     // L = K, M trivial

    // Sampled normality check of include(L); abelian K passes vacuously,
    // nonabelian K without a membership test is caller-asserted.
    void check_normal(std::mt19937_64& rng, int samples = 64) const;
};

LocalConnection td_reduce(const TransitiveDistribution& td);
GroupElement td_holonomy(const TransitiveDistribution& td, const PathSpec& loop, int steps_per_segment = 1024);

// Linear K-action on a complex module V.
struct ModuleAction {
    int dim = 1;
    std::function<Eigen::MatrixXcd(const AlgebraElement&)> algebra_rep;  // Lie(K) -> gl(V)
    std::function<Eigen::MatrixXcd(const GroupElement&)> group_rep;      // K -> GL(V)

    static ModuleAction circle_scalar();  // V = C, s(x) = 2*pi*i*x
};

// V-valued p-form on one chart (components follow FormField's layout).
class ModuleForm {
public:
    ModuleForm(geometry::GeometryPtr geom, int chart, int degree, int dim);
    static ModuleForm from_function(geometry::GeometryPtr geom, int chart, int degree, int dim,
                                    const std::function<Eigen::VectorXcd(int comp, double u, double v)>& f);
    int degree() const { return degree_; }
    int components() const { return FormField::component_count(degree_); }
    int dim() const { return dim_; }
    const geometry::ChartGrid& grid() const { return geom_->chart(chart_); }
    const Eigen::VectorXcd& at(int comp, int iu, int iv) const;
    void set(int comp, int iu, int iv, Eigen::VectorXcd v);
    double max_norm() const;
    ModuleForm sub(const ModuleForm& rhs) const;

    geometry::GeometryPtr geometry() const { return geom_; }
    int chart() const { return chart_; }
    const std::vector<Eigen::VectorXcd>& component(int c) const { return comp_.at(c); }
    std::vector<Eigen::VectorXcd>& component(int c) { return comp_.at(c); }

private:
    geometry::GeometryPtr geom_;
    int chart_;
    int degree_;
    int dim_;
    std::vector<std::vector<Eigen::VectorXcd>> comp_;
};

// nabla alpha = d alpha + s(omega) wedge alpha.
ModuleForm covariant_derivative(const ModuleForm& alpha, const FormField& omega, const ModuleAction& action);

// Transport of a module vector along a path: v' = -s(A(c')) v with
// S(k^-1) factors at chart switches.
Eigen::VectorXcd module_transport(const LocalConnection& a, const PathSpec& path, const ModuleAction& action,
                                  Eigen::VectorXcd v0, int steps_per_segment = 1024);

// Componentwise transport over a pullback-sum distribution on a fiber
// product: one (connection, projected path) pair per factor.
struct TowerComponent {
    LocalConnection connection;
    PathSpec path;
};

std::vector<GroupElement> tower_transport(const std::vector<TowerComponent>& components,
                                          int steps_per_segment = 1024);
// One transported tuple per alternative connection family (Definition-6
// style parallel displacement over all compatible lifts).
std::vector<std::vector<GroupElement>> tower_transport_family(
    const std::vector<std::vector<TowerComponent>>& lifts, int steps_per_segment = 1024);

}  // namespace glift::hol
