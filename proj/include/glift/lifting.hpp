#pragma once

#include <optional>

#include "glift/cohomology.hpp"
#include "glift/extension.hpp"

namespace glift::lifting {

using cech::Cochain;
using cech::CocycleReport;
using cech::TrivializationCertificate;
using geometry::NervePtr;
using geometry::Simplex;
using groups::Extension;
using groups::Group;
using groups::GroupElement;

// A K-principal bundle over a nerve together with the central extension it
// should lift through.
struct LiftingProblem {
    NervePtr nerve;
    Extension extension;
    Cochain cocycle;  // K-valued 1-cocycle

    void validate() const;  // cocycle condition and shape checks
};

enum class Verdict { Trivial, Nontrivial, Undetermined };

struct ObstructionReport {
    Cochain cocycle;  // H-valued
    int degree = 2;
    CocycleReport cocycle_check;
    // class data in the computed cohomology (finite cyclic / integer
    // coefficients only; empty otherwise)
    std::vector<snf::Int> class_coordinates;
    std::vector<snf::Int> class_moduli;
    Verdict verdict = Verdict::Undetermined;
    bool strictly_identity = false;  // the literal all-values-identity reading
    std::optional<Cochain> witness;
    std::optional<TrivializationCertificate> certificate;

    std::string verdict_name() const;
};

// g(i,j) = section(k(i,j)) on every edge. In sampled mode a circle-valued
// lift is additionally checked for sample-to-sample continuity; a jump
// names the edge (section branch cut).
Cochain lift_cochain(const LiftingProblem& problem);

// The classifying 2-cocycle of the lifting gerbe: the deviation of the
// section lift pulled back into H, with the cocycle identity checked and
// the class/triviality data attached.
ObstructionReport obstruction(const LiftingProblem& problem);

// k(i,j) = project(g(i,j)) for a G-valued 1-cocycle.
Cochain quotient_cocycle(const Cochain& g, const Extension& ext);

// Connecting homomorphism: lift an n-cocycle over K valuewise through the
// section, take the coboundary in G, pull back into H. All three groups
// must be abelian.
Cochain connecting_map(const Cochain& c, const Extension& ext);

// Attach class coordinates, verdict and witness/certificate to an H-valued
// cocycle (shared by obstruction and the tower levels).
ObstructionReport classify_cocycle(Cochain c_h);

struct TowerLevel {
    Extension extension;
};

struct TowerSpec {
    NervePtr nerve;
    std::vector<TowerLevel> levels;
    Cochain base_cocycle;  // K_1-valued 1-cocycle
    bool stop_on_obstruction = false;
    bool strict_vanishing = false;  // use the all-values-identity reading for the stop rule
};

// One report per level: level 1 through `obstruction`, later levels through
// the connecting map of the previous cocycle. Level l+1 requires
// K_{l+1} = H_l and abelian groups.
std::vector<ObstructionReport> tower_obstructions(const TowerSpec& spec);

// Edge-indexed adjoint maps Ad(g(i,j)) on the Lie algebra of G.
class AdjointTransitions {
public:
    AdjointTransitions(Cochain g);
    // Ad(g(tuple)) x, sign convention applied to the tuple.
    groups::AlgebraElement apply(const Simplex& edge, const groups::AlgebraElement& x) const;
    // Ad(g(i,j)) Ad(g(j,k)) Ad(g(k,i)) applied to x.
    groups::AlgebraElement triangle(const Simplex& tri, const groups::AlgebraElement& x) const;
    const Cochain& transitions() const { return g_; }

private:
    Cochain g_;
};

AdjointTransitions adjoint_transitions(const Cochain& g);

}  // namespace glift::lifting
