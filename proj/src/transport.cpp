#include "glift/transport.hpp"

#include <cmath>
#include <numeric>

#include "glift/errors.hpp"
#include "glift/form_field.hpp"
#include "glift/snf.hpp"

namespace glift::hol {

using geometry::ChartGrid;
using geometry::Vec2;

namespace {

AlgebraElement pull_along(const LocalConnection& a, int chart, const Vec2& p, const Vec2& vel) {
    const Group& g = a.group();
    AlgebraElement au = a.coeff_at(chart, 0, p[0], p[1]);
    AlgebraElement av = a.coeff_at(chart, 1, p[0], p[1]);
    return g.algebra_add(g.algebra_scale(vel[0], au), g.algebra_scale(vel[1], av));
}

// integral of A(c'(t)) dt over one segment, composite Simpson
AlgebraElement segment_circulation(const LocalConnection& a, const PathSegment& seg, int steps) {
    const Group& g = a.group();
    int n = steps % 2 == 0 ? steps : steps + 1;
    const double h = 1.0 / n;
    AlgebraElement acc = g.algebra_zero();
    for (int i = 0; i <= n; ++i) {
        double t = i * h;
        double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc = g.algebra_add(acc, g.algebra_scale(w, pull_along(a, seg.chart, seg.point(t), seg.velocity_at(t))));
    }
    return g.algebra_scale(h / 3.0, acc);
}

GroupElement segment_rk4(const LocalConnection& a, const PathSegment& seg, int steps, GroupElement g0) {
    const Group& grp = a.group();
    Eigen::MatrixXcd g = g0.as_matrix();
    const double h = 1.0 / steps;
    auto rhs = [&](double t, const Eigen::MatrixXcd& y) -> Eigen::MatrixXcd {
        AlgebraElement at = pull_along(a, seg.chart, seg.point(t), seg.velocity_at(t));
        return -(at.as_matrix() * y);
    };
    for (int i = 0; i < steps; ++i) {
        double t = i * h;
        Eigen::MatrixXcd k1 = rhs(t, g);
        Eigen::MatrixXcd k2 = rhs(t + h / 2, g + (h / 2) * k1);
        Eigen::MatrixXcd k3 = rhs(t + h / 2, g + (h / 2) * k2);
        Eigen::MatrixXcd k4 = rhs(t + h, g + h * k3);
        g += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    (void)grp;
    return GroupElement(g);
}

GroupElement switch_factor(const LocalConnection& a, int from, int to, const Vec2& p) {
    // moving from chart `from` to chart `to` at the point p (in `from`
    // coordinates): fiber coordinates change by k_{from,to}(p)^-1
    return a.group().inv(a.transition_between(from, to, p[0], p[1]));
}

}  // namespace

GroupElement parallel_transport(const LocalConnection& a, const PathSpec& path, int steps_per_segment) {
    if (steps_per_segment < 8) throw SchemaError("parallel transport needs at least 8 steps per segment");
    validate_path(path, *a.geometry());
    const Group& g = a.group();
    const bool abelian = g.abelian();
    if (!abelian && g.kind() != groups::GroupKind::Matrix)
        throw SchemaError("parallel transport supports abelian groups and matrix groups");

    GroupElement hol = g.identity();
    for (size_t s = 0; s < path.segments.size(); ++s) {
        const PathSegment& seg = path.segments[s];
        if (s > 0) {
            const PathSegment& prev = path.segments[s - 1];
            if (prev.chart != seg.chart)
                hol = g.mul(switch_factor(a, prev.chart, seg.chart, prev.point(1.0)), hol);
        }
        // later parameter times act on the left
        if (abelian) {
            AlgebraElement circ = segment_circulation(a, seg, steps_per_segment);
            hol = g.mul(g.exp(g.algebra_scale(-1.0, circ)), hol);
        } else {
            hol = g.mul(segment_rk4(a, seg, steps_per_segment, g.identity()), hol);
        }
    }
    if (path.closed && path.end_chart() != path.start_chart())
        hol = g.mul(switch_factor(a, path.end_chart(), path.start_chart(), path.end()), hol);
    return g.canonical(hol);
}

SubgroupSummary classify_generated_subgroup(const Group& g, const std::vector<GroupElement>& elems,
                                            long long budget) {
    SubgroupSummary out;
    out.elements = elems;
    bool all_identity = true;
    for (const GroupElement& e : elems)
        if (!g.is_identity(e)) all_identity = false;
    if (all_identity) {
        out.kind = SubgroupSummary::Kind::Trivial;
        out.order = 1;
        out.description = "trivial subgroup";
        return out;
    }
    using groups::GroupKind;
    if (g.kind() == GroupKind::Circle) {
        // continued-fraction rational recognition within 1e-7
        long long lcm = 1;
        for (const GroupElement& e : elems) {
            double x = groups::mod_one(e.as_real());
            long long best_q = 0;
            for (long long q = 1; q <= std::min<long long>(budget, 100000); ++q) {
                double scaled = x * q;
                if (std::abs(scaled - std::round(scaled)) < 1e-7 * q) {
                    best_q = q;
                    break;
                }
            }
            if (best_q == 0) {
                out.kind = SubgroupSummary::Kind::DenseSample;
                out.description = "dense sample (no rational angle within tolerance)";
                return out;
            }
            lcm = std::lcm(lcm, best_q);
            if (lcm > budget) {
                out.kind = SubgroupSummary::Kind::DenseSample;
                out.description = "dense sample (cyclic order beyond budget)";
                return out;
            }
        }
        out.kind = SubgroupSummary::Kind::FiniteCyclic;
        out.order = lcm;
        out.description = "finite cyclic of order " + std::to_string(lcm);
        return out;
    }
    // generic closure under products and inverses with tolerance dedup
    std::vector<GroupElement> closure;
    auto known = [&](const GroupElement& x) {
        for (const GroupElement& y : closure)
            if (g.equal(x, y, 1e-8)) return true;
        return false;
    };
    closure.push_back(g.identity());
    std::vector<GroupElement> frontier;
    for (const GroupElement& e : elems) {
        GroupElement c = g.canonical(e);
        if (!known(c)) {
            closure.push_back(c);
            frontier.push_back(c);
        }
    }
    std::vector<GroupElement> gens = frontier;
    while (!frontier.empty() && static_cast<long long>(closure.size()) <= budget) {
        std::vector<GroupElement> next;
        for (const GroupElement& x : frontier) {
            std::vector<GroupElement> cand;
            cand.push_back(g.inv(x));
            for (const GroupElement& y : gens) cand.push_back(g.mul(x, y));
            for (const GroupElement& c : cand) {
                GroupElement cc = g.canonical(c);
                if (!known(cc)) {
                    closure.push_back(cc);
                    next.push_back(cc);
                }
            }
            if (static_cast<long long>(closure.size()) > budget) break;
        }
        frontier = std::move(next);
    }
    if (static_cast<long long>(closure.size()) > budget) {
        out.kind = SubgroupSummary::Kind::Unclassified;
        out.description = "closure exceeded the budget (possibly infinite)";
        return out;
    }
    out.kind = SubgroupSummary::Kind::FiniteGroup;
    out.order = static_cast<long long>(closure.size());
    out.elements = closure;
    out.description = "finite subgroup of order " + std::to_string(out.order);
    return out;
}

HolonomySample loop_holonomy_sample(const LocalConnection& a, const std::vector<PathSpec>& loops,
                                    const Basepoint& basepoint, int steps_per_segment, long long closure_budget) {
    HolonomySample out;
    const ChartGrid& g = a.geometry()->chart(basepoint.chart);
    for (const PathSpec& loop : loops) {
        if (!loop.closed) throw SchemaError("holonomy loops must be closed");
        if (loop.start_chart() != basepoint.chart)
            throw SchemaError("loop basepoint chart mismatch");
        Vec2 s = loop.start();
        double d0 = std::abs(s[0] - basepoint.point[0]);
        double d1 = std::abs(s[1] - basepoint.point[1]);
        if (g.periodic_u) d0 = std::min(d0, std::abs(d0 - (g.u1 - g.u0)));
        if (g.periodic_v) d1 = std::min(d1, std::abs(d1 - (g.v1 - g.v0)));
        if (d0 > 1e-8 || d1 > 1e-8) throw SchemaError("loop does not start at the basepoint");
        out.loop_elements.push_back(parallel_transport(a, loop, steps_per_segment));
    }
    out.summary = classify_generated_subgroup(a.group(), out.loop_elements, closure_budget);
    return out;
}

TransitiveDistribution TransitiveDistribution::circle_mod(LocalConnection base, long long n) {
    if (base.group().kind() != groups::GroupKind::Circle)
        throw SchemaError("circle_mod distribution needs a circle structure group");
    if (n <= 0) throw SchemaError("uniform subgroup order must be positive");
    TransitiveDistribution td{std::move(base), Group::cyclic(n), Group::circle(), nullptr, nullptr, nullptr, nullptr};
    double dn = static_cast<double>(n);
    td.project = [dn](const GroupElement& k) { return GroupElement(groups::mod_one(dn * k.as_real())); };
    td.alg_project = [dn](const AlgebraElement& x) { return AlgebraElement(dn * x.as_real()); };
    td.include_l = [dn](const GroupElement& l) {
        return GroupElement(groups::mod_one(static_cast<double>(l.as_int()) / dn));
    };
    td.in_l = [dn](const GroupElement& k) {
        double scaled = dn * groups::mod_one(k.as_real());
        return std::abs(scaled - std::round(scaled)) < dn * groups::kCircleTol;
    };
    return td;
}

TransitiveDistribution TransitiveDistribution::trivial_uniform(LocalConnection base) {
    Group k = base.group();
    TransitiveDistribution td{std::move(base), Group::trivial(), k, nullptr, nullptr, nullptr, nullptr};
    td.project = [](const GroupElement& x) { return x; };
    td.alg_project = [](const AlgebraElement& x) { return x; };
    Group kk = k;
    td.include_l = [kk](const GroupElement&) { return kk.identity(); };
    td.in_l = [kk](const GroupElement& x) { return kk.is_identity(x); };
    return td;
}

TransitiveDistribution TransitiveDistribution::full_uniform(LocalConnection base) {
    Group k = base.group();
    Group m = Group::trivial();
    TransitiveDistribution td{std::move(base), k, m, nullptr, nullptr, nullptr, nullptr};
    td.project = [m](const GroupElement&) { return m.identity(); };
    td.alg_project = [m](const AlgebraElement&) { return m.algebra_zero(); };
    td.include_l = [](const GroupElement& l) { return l; };
    td.in_l = [](const GroupElement&) { return true; };
    return td;
}

void TransitiveDistribution::check_normal(std::mt19937_64& rng, int samples) const {
    const Group& K = base.group();
    if (K.abelian()) return;
    if (!in_l) throw MathError("normality of the uniform subgroup is asserted by the caller (no membership test)");
    for (int s = 0; s < samples; ++s) {
        GroupElement k = K.sample(rng);
        GroupElement l = include_l(L.sample(rng));
        GroupElement conj = K.mul(K.mul(k, l), K.inv(k));
        if (!in_l(conj)) throw MathError("uniform subgroup is not normal: conjugation escapes L");
    }
}

LocalConnection td_reduce(const TransitiveDistribution& td) {
    const LocalConnection& base = td.base;
    const geometry::GeometryPtr& geom = base.geometry();
    std::vector<FormField> forms_m;
    for (int c = 0; c < geom->chart_count(); ++c) {
        FormField f(geom, c, 1, td.M);
        const ChartGrid& g = geom->chart(c);
        for (int comp = 0; comp < 2; ++comp)
            for (int iu = 0; iu < g.nu; ++iu)
                for (int iv = 0; iv < g.nv; ++iv)
                    f.set(comp, iu, iv, td.alg_project(base.coeff(c).at(comp, iu, iv)));
        forms_m.push_back(std::move(f));
    }
    std::vector<std::vector<GroupElement>> trans_m;
    for (size_t o = 0; o < geom->overlaps().size(); ++o) {
        std::vector<GroupElement> tab;
        for (const GroupElement& k : base.transition_samples(static_cast<int>(o))) tab.push_back(td.project(k));
        trans_m.push_back(std::move(tab));
    }
    LocalConnection out(geom, td.M, std::move(forms_m), std::move(trans_m));
    if (base.has_exact()) {
        auto proj = td.alg_project;
        const LocalConnection* src = &td.base;
        // capture by value: copy the base connection handles into the closure
        LocalConnection base_copy = td.base;
        out.install_exact([base_copy, proj](int chart, int comp, double u, double v) {
            return proj(base_copy.coeff_at(chart, comp, u, v));
        });
        auto gproj = td.project;
        out.install_exact_transition([base_copy, gproj](int overlap, double u, double v) {
            return gproj(base_copy.transition_at(overlap, u, v));
        });
        (void)src;
    }
    return out;
}

GroupElement td_holonomy(const TransitiveDistribution& td, const PathSpec& loop, int steps_per_segment) {
    return parallel_transport(td_reduce(td), loop, steps_per_segment);
}

ModuleAction ModuleAction::circle_scalar() {
    ModuleAction a;
    a.dim = 1;
    a.algebra_rep = [](const AlgebraElement& x) {
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = std::complex<double>(0.0, 2.0 * M_PI * x.as_real());
        return m;
    };
    a.group_rep = [](const GroupElement& k) {
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = std::exp(std::complex<double>(0.0, 2.0 * M_PI * k.as_real()));
        return m;
    };
    return a;
}

ModuleForm::ModuleForm(geometry::GeometryPtr geom, int chart, int degree, int dim)
    : geom_(std::move(geom)), chart_(chart), degree_(degree), dim_(dim) {
    comp_.assign(FormField::component_count(degree_),
                 std::vector<Eigen::VectorXcd>(grid().samples(), Eigen::VectorXcd::Zero(dim_)));
}

ModuleForm ModuleForm::from_function(geometry::GeometryPtr geom, int chart, int degree, int dim,
                                     const std::function<Eigen::VectorXcd(int, double, double)>& f) {
    ModuleForm out(std::move(geom), chart, degree, dim);
    const ChartGrid& g = out.grid();
    for (int c = 0; c < out.components(); ++c)
        for (int iu = 0; iu < g.nu; ++iu)
            for (int iv = 0; iv < g.nv; ++iv) out.comp_[c][g.index(iu, iv)] = f(c, g.u(iu), g.v(iv));
    return out;
}

const Eigen::VectorXcd& ModuleForm::at(int comp, int iu, int iv) const { return comp_.at(comp)[grid().index(iu, iv)]; }

void ModuleForm::set(int comp, int iu, int iv, Eigen::VectorXcd v) {
    comp_.at(comp)[grid().index(iu, iv)] = std::move(v);
}

double ModuleForm::max_norm() const {
    double n = 0;
    for (const auto& c : comp_)
        for (const auto& v : c) n = std::max(n, v.norm());
    return n;
}

ModuleForm ModuleForm::sub(const ModuleForm& rhs) const {
    ModuleForm out = *this;
    for (size_t c = 0; c < comp_.size(); ++c)
        for (size_t i = 0; i < comp_[c].size(); ++i) out.comp_[c][i] -= rhs.comp_[c][i];
    return out;
}

ModuleForm covariant_derivative(const ModuleForm& alpha, const FormField& omega, const ModuleAction& action) {
    if (alpha.geometry() != omega.geometry() || alpha.chart() != omega.chart())
        throw SchemaError("covariant_derivative: form/connection chart mismatch");
    if (omega.degree() != 1) throw SchemaError("covariant_derivative needs a connection 1-form");
    const ChartGrid& g = alpha.grid();
    auto add = [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return (a + b).eval(); };
    auto scale = [](double s, const Eigen::VectorXcd& a) { return (s * a).eval(); };
    const int p = alpha.degree();
    if (p >= 2) {
        ModuleForm out(alpha.geometry(), alpha.chart(), 3, alpha.dim());
        return out;  // zero 3-form on a surface chart
    }
    // s(omega) per axis per sample
    std::vector<Eigen::MatrixXcd> su(g.samples()), sv(g.samples());
    for (int iu = 0; iu < g.nu; ++iu)
        for (int iv = 0; iv < g.nv; ++iv) {
            su[g.index(iu, iv)] = action.algebra_rep(omega.at(0, iu, iv));
            sv[g.index(iu, iv)] = action.algebra_rep(omega.at(1, iu, iv));
        }
    if (p == 0) {
        ModuleForm out(alpha.geometry(), alpha.chart(), 1, alpha.dim());
        auto du = forms::detail::grid_derivative(alpha.component(0), g.nu, g.nv, 0, g.du(), g.periodic_u, add, scale);
        auto dv = forms::detail::grid_derivative(alpha.component(0), g.nu, g.nv, 1, g.dv(), g.periodic_v, add, scale);
        for (int i = 0; i < g.samples(); ++i) {
            out.component(0)[i] = du[i] + su[i] * alpha.component(0)[i];
            out.component(1)[i] = dv[i] + sv[i] * alpha.component(0)[i];
        }
        return out;
    }
    // p == 1
    ModuleForm out(alpha.geometry(), alpha.chart(), 2, alpha.dim());
    auto du_av = forms::detail::grid_derivative(alpha.component(1), g.nu, g.nv, 0, g.du(), g.periodic_u, add, scale);
    auto dv_au = forms::detail::grid_derivative(alpha.component(0), g.nu, g.nv, 1, g.dv(), g.periodic_v, add, scale);
    for (int i = 0; i < g.samples(); ++i)
        out.component(0)[i] = du_av[i] - dv_au[i] + su[i] * alpha.component(1)[i] - sv[i] * alpha.component(0)[i];
    return out;
}

Eigen::VectorXcd module_transport(const LocalConnection& a, const PathSpec& path, const ModuleAction& action,
                                  Eigen::VectorXcd v0, int steps_per_segment) {
    if (steps_per_segment < 8) throw SchemaError("module transport needs at least 8 steps per segment");
    validate_path(path, *a.geometry());
    Eigen::VectorXcd v = std::move(v0);
    for (size_t s = 0; s < path.segments.size(); ++s) {
        const PathSegment& seg = path.segments[s];
        if (s > 0 && path.segments[s - 1].chart != seg.chart) {
            const PathSegment& prev = path.segments[s - 1];
            GroupElement k = a.transition_between(prev.chart, seg.chart, prev.point(1.0)[0], prev.point(1.0)[1]);
            v = action.group_rep(a.group().inv(k)) * v;
        }
        const double h = 1.0 / steps_per_segment;
        auto rhs = [&](double t, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
            AlgebraElement at = pull_along(a, seg.chart, seg.point(t), seg.velocity_at(t));
            return -(action.algebra_rep(at) * y);
        };
        for (int i = 0; i < steps_per_segment; ++i) {
            double t = i * h;
            Eigen::VectorXcd k1 = rhs(t, v);
            Eigen::VectorXcd k2 = rhs(t + h / 2, v + (h / 2) * k1);
            Eigen::VectorXcd k3 = rhs(t + h / 2, v + (h / 2) * k2);
            Eigen::VectorXcd k4 = rhs(t + h, v + h * k3);
            v += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        }
    }
    if (path.closed && path.end_chart() != path.start_chart()) {
        GroupElement k = a.transition_between(path.end_chart(), path.start_chart(), path.end()[0], path.end()[1]);
        v = action.group_rep(a.group().inv(k)) * v;
    }
    return v;
}

std::vector<GroupElement> tower_transport(const std::vector<TowerComponent>& components, int steps_per_segment) {
    if (components.empty()) throw SchemaError("tower transport needs at least one component");
    const size_t segs = components.front().path.segments.size();
    for (size_t i = 1; i < components.size(); ++i) {
        const TowerComponent& c = components[i];
        if (c.path.segments.size() != segs)
            throw SchemaError("projection inconsistency: component paths have different segment counts");
        if (c.connection.geometry() == components.front().connection.geometry()) {
            // same geometry: the projected curves must agree pointwise
            for (size_t s = 0; s < segs; ++s)
                for (int probe = 0; probe <= 8; ++probe) {
                    double t = probe / 8.0;
                    Vec2 p0 = components.front().path.segments[s].point(t);
                    Vec2 p1 = c.path.segments[s].point(t);
                    if (components.front().path.segments[s].chart != c.path.segments[s].chart ||
                        std::abs(p0[0] - p1[0]) > 1e-8 || std::abs(p0[1] - p1[1]) > 1e-8)
                        throw SchemaError("projection inconsistency between tower components");
                }
        }
    }
    std::vector<GroupElement> out;
    for (const TowerComponent& c : components) out.push_back(parallel_transport(c.connection, c.path, steps_per_segment));
    return out;
}

std::vector<std::vector<GroupElement>> tower_transport_family(const std::vector<std::vector<TowerComponent>>& lifts,
                                                              int steps_per_segment) {
    std::vector<std::vector<GroupElement>> out;
    out.reserve(lifts.size());
    for (const auto& lift : lifts) out.push_back(tower_transport(lift, steps_per_segment));
    return out;
}

}  // namespace glift::hol
