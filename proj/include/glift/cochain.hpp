#pragma once

#include <map>
#include <string>

#include "glift/group.hpp"
#include "glift/nerve.hpp"

namespace glift::cech {

using geometry::Nerve;
using geometry::NervePtr;
using geometry::Simplex;
using groups::Group;
using groups::GroupElement;

// Degree-n assignment of group elements to the n-simplices of a nerve.
// Values are stored on ascending tuples only; lookups for permuted tuples
// apply the sign convention (alternating sign for abelian groups, inverse
// for a swapped nonabelian degree-1 pair). In sampled mode each simplex
// carries the same number of per-sample values.
class Cochain {
public:
    Cochain(NervePtr nerve, int degree, Group group, int samples = 1);

    static Cochain identity(NervePtr nerve, int degree, Group group, int samples = 1);

    const NervePtr& nerve() const { return nerve_; }
    int degree() const { return degree_; }
    const Group& group() const { return group_; }
    int samples() const { return samples_; }
    bool combinatorial() const { return samples_ == 1; }
    int simplex_count() const { return nerve_->count(degree_); }

    void set(const Simplex& s, GroupElement value, int sample = 0);
    void set_all_samples(const Simplex& s, const std::vector<GroupElement>& values);
    // Value on an arbitrary (possibly non-ascending) tuple. Tuples with a
    // repeated vertex yield the identity.
    GroupElement value(const Simplex& tuple, int sample = 0) const;
    const GroupElement& stored(const Simplex& ascending, int sample = 0) const;

    bool values_equal(const Cochain& other) const;
    double max_distance(const Cochain& other) const;
    bool is_identity_cochain() const;
    // Largest distance between consecutive samples of any simplex; zero in
    // combinatorial mode. Used to confirm local constancy of cocycles
    // valued in a discrete subgroup of a continuous group.
    double max_sample_variation() const;

    Cochain map_values(const Group& target, const std::function<GroupElement(const GroupElement&)>& f) const;

private:
    NervePtr nerve_;
    int degree_;
    Group group_;
    int samples_;
    std::map<Simplex, std::vector<GroupElement>> values_;
};

// Alternating-face-sum coboundary. Abelian groups in any degree; for a
// nonabelian group only degree 0 is defined, with the principal-bundle
// convention (db)(i,j) = b(i) * b(j)^-1 whose deviation is trivial.
Cochain coboundary(const Cochain& c);

// t(i,j,k) = g(i,j) g(j,k) g(k,i); the identity cochain iff g is a
// 1-cocycle.
Cochain nonabelian_deviation(const Cochain& g);

struct CocycleReport {
    bool ok = true;
    double max_residual = 0.0;
    Simplex worst;
    std::string describe() const;
};

CocycleReport is_cocycle(const Cochain& c);

}  // namespace glift::cech
