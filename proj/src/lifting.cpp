#include "glift/lifting.hpp"

#include "glift/errors.hpp"

namespace glift::lifting {

void LiftingProblem::validate() const {
    if (cocycle.degree() != 1) throw SchemaError("lifting problem: the bundle cocycle must have degree 1");
    if (!cocycle.group().same_as(extension.K))
        throw SchemaError("lifting problem: cocycle group " + cocycle.group().describe() +
                          " does not match K = " + extension.K.describe());
    CocycleReport rep = cech::is_cocycle(cocycle);
    if (!rep.ok) throw MathError("lifting problem: transition data is not a cocycle: " + rep.describe());
}

std::string ObstructionReport::verdict_name() const {
    switch (verdict) {
        case Verdict::Trivial:
            return "trivial";
        case Verdict::Nontrivial:
            return "nontrivial";
        default:
            return "undetermined";
    }
}

Cochain lift_cochain(const LiftingProblem& problem) {
    problem.validate();
    const Extension& ext = problem.extension;
    Cochain g(problem.nerve, 1, ext.G, problem.cocycle.samples());
    for (const Simplex& e : problem.nerve->simplices(1)) {
        for (int s = 0; s < problem.cocycle.samples(); ++s)
            g.set(e, ext.section(problem.cocycle.stored(e, s)), s);
        if (!g.combinatorial() && ext.G.kind() == groups::GroupKind::Circle) {
            // a continuous lift must not jump between samples; a jump of
            // about half the section period marks the branch cut
            for (int s = 1; s < g.samples(); ++s) {
                double step_k = problem.cocycle.group().distance(problem.cocycle.stored(e, s),
                                                                 problem.cocycle.stored(e, s - 1));
                double step_g = ext.G.distance(g.stored(e, s), g.stored(e, s - 1));
                if (step_g > 2.0 * step_k + 0.1)
                    throw BranchCutError("section branch cut on edge " + geometry::simplex_name(e) +
                                         " between samples " + std::to_string(s - 1) + " and " + std::to_string(s));
            }
        }
    }
    // the lift must project back onto the bundle cocycle
    for (const Simplex& e : problem.nerve->simplices(1))
        for (int s = 0; s < g.samples(); ++s)
            if (!ext.K.equal(ext.project(g.stored(e, s)), problem.cocycle.stored(e, s)))
                throw MathError("section failed to cover edge " + geometry::simplex_name(e));
    return g;
}

ObstructionReport classify_cocycle(Cochain c_h) {
    ObstructionReport rep{std::move(c_h)};
    rep.degree = rep.cocycle.degree();
    rep.cocycle_check = cech::is_cocycle(rep.cocycle);
    rep.strictly_identity = rep.cocycle.is_identity_cochain();
    const Group& h = rep.cocycle.group();

    using groups::GroupKind;
    if ((h.kind() == GroupKind::Cyclic || h.kind() == GroupKind::Integers) && rep.cocycle.combinatorial()) {
        cech::CohomologyGroup hh = cech::cohomology(rep.cocycle.nerve(), h, rep.degree);
        rep.class_moduli = hh.invariant_factors();
        rep.class_coordinates = hh.class_coordinates(rep.cocycle);
    }
    if (rep.cocycle.combinatorial()) {
        cech::TrivializationResult t = cech::solve_trivialization(rep.cocycle);
        if (t.trivial()) {
            rep.verdict = Verdict::Trivial;
            rep.witness = std::move(t.witness);
        } else {
            rep.verdict = Verdict::Nontrivial;
            rep.certificate = std::move(t.certificate);
        }
    } else {
        // sampled cocycles: only the strict reading is decidable here
        rep.verdict = rep.strictly_identity ? Verdict::Trivial : Verdict::Undetermined;
    }
    return rep;
}

ObstructionReport obstruction(const LiftingProblem& problem) {
    const Extension& ext = problem.extension;
    Cochain g = lift_cochain(problem);
    Cochain dev = cech::nonabelian_deviation(g);
    Cochain c_h(problem.nerve, 2, ext.H, dev.samples());
    for (const Simplex& t : problem.nerve->simplices(2)) {
        for (int s = 0; s < dev.samples(); ++s) {
            std::optional<GroupElement> h = ext.retract(dev.stored(t, s));
            if (!h)
                throw MathError("obstruction value on " + geometry::simplex_name(t) +
                                " lies outside include(H): broken extension kernel");
            c_h.set(t, *h, s);
        }
    }
    if (!c_h.combinatorial() && !ext.H.discrete()) {
        // nothing extra to check
    } else if (!c_h.combinatorial()) {
        double var = c_h.max_sample_variation();
        if (var > 0.0) throw MathError("obstruction cocycle is not locally constant (variation " +
                                       std::to_string(var) + ")");
    }
    ObstructionReport rep = classify_cocycle(std::move(c_h));
    if (!rep.cocycle_check.ok)
        throw MathError("obstruction is not a cocycle over H (non-central extension?): " +
                        rep.cocycle_check.describe());
    return rep;
}

Cochain quotient_cocycle(const Cochain& g, const Extension& ext) {
    if (g.degree() != 1) throw SchemaError("quotient_cocycle expects a degree-1 cochain");
    if (!g.group().same_as(ext.G)) throw SchemaError("quotient_cocycle: cochain group must be G");
    CocycleReport rep = cech::is_cocycle(g);
    if (!rep.ok) throw MathError("quotient_cocycle: input is not a cocycle: " + rep.describe());
    Cochain k = g.map_values(ext.K, [&](const GroupElement& v) { return ext.project(v); });
    CocycleReport out = cech::is_cocycle(k);
    if (!out.ok) throw MathError("quotient_cocycle: projected data is not a cocycle: " + out.describe());
    return k;
}

Cochain connecting_map(const Cochain& c, const Extension& ext) {
    if (!ext.H.abelian() || !ext.G.abelian() || !ext.K.abelian())
        throw MathError("connecting_map requires an abelian extension");
    if (!c.group().same_as(ext.K)) throw SchemaError("connecting_map: cochain group must be K");
    CocycleReport rep = cech::is_cocycle(c);
    if (!rep.ok) throw MathError("connecting_map: input is not a cocycle: " + rep.describe());
    Cochain lifted = c.map_values(ext.G, [&](const GroupElement& v) { return ext.section(v); });
    Cochain delta = cech::coboundary(lifted);
    Cochain out(c.nerve(), delta.degree(), ext.H, delta.samples());
    for (const Simplex& s : c.nerve()->simplices(delta.degree())) {
        for (int i = 0; i < delta.samples(); ++i) {
            std::optional<GroupElement> h = ext.retract(delta.stored(s, i));
            if (!h)
                throw MathError("connecting map value on " + geometry::simplex_name(s) +
                                " lies outside include(H): inconsistent extension data");
            out.set(s, *h, i);
        }
    }
    CocycleReport check = cech::is_cocycle(out);
    if (!check.ok) throw MathError("connecting map output failed the cocycle check: " + check.describe());
    return out;
}

std::vector<ObstructionReport> tower_obstructions(const TowerSpec& spec) {
    if (spec.levels.empty()) throw SchemaError("tower needs at least one level");
    std::vector<ObstructionReport> out;
    LiftingProblem base{spec.nerve, spec.levels[0].extension, spec.base_cocycle};
    out.push_back(obstruction(base));
    for (size_t l = 1; l < spec.levels.size(); ++l) {
        const ObstructionReport& prev = out.back();
        bool blocked = spec.strict_vanishing ? !prev.strictly_identity : prev.verdict == Verdict::Nontrivial;
        if (blocked && spec.stop_on_obstruction) break;
        const Extension& ext = spec.levels[l].extension;
        if (!ext.K.same_as(prev.cocycle.group()))
            throw SchemaError("tower level " + std::to_string(l + 1) + ": K = " + ext.K.describe() +
                              " does not match the previous band " + prev.cocycle.group().describe());
        out.push_back(classify_cocycle(connecting_map(prev.cocycle, ext)));
    }
    return out;
}

AdjointTransitions::AdjointTransitions(Cochain g) : g_(std::move(g)) {
    if (g_.degree() != 1) throw SchemaError("adjoint_transitions expects a degree-1 cochain");
    if (!g_.group().has_algebra()) throw MathError("adjoint is not defined for " + g_.group().describe());
}

groups::AlgebraElement AdjointTransitions::apply(const Simplex& edge, const groups::AlgebraElement& x) const {
    return g_.group().ad(g_.value(edge), x);
}

groups::AlgebraElement AdjointTransitions::triangle(const Simplex& tri, const groups::AlgebraElement& x) const {
    if (tri.size() != 3) throw SchemaError("triangle composition expects a 2-simplex");
    groups::AlgebraElement y = apply({tri[2], tri[0]}, x);
    y = apply({tri[1], tri[2]}, y);
    return apply({tri[0], tri[1]}, y);
}

AdjointTransitions adjoint_transitions(const Cochain& g) { return AdjointTransitions(g); }

}  // namespace glift::lifting
