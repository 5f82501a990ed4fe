#pragma once

#include <optional>

#include "glift/cochain.hpp"
#include "glift/snf.hpp"

namespace glift::cech {

// Matrix of the degree-n coboundary: rows are (n+1)-simplices, columns are
// n-simplices, entries the alternating incidence signs.
snf::IntMat coboundary_matrix(const Nerve& nerve, int degree);

// H^n(nerve; coeff) for coeff = finite cyclic or integers, presented as a
// list of cyclic factors (order 0 meaning a free Z factor) together with a
// representative cocycle per factor and a coordinate map on cocycles.
class CohomologyGroup {
public:
    const std::vector<snf::Int>& invariant_factors() const { return factors_; }
    const std::vector<Cochain>& representatives() const { return reps_; }
    bool trivial() const { return factors_.empty(); }
    // Coordinates of the class of a cocycle, one per factor (reduced mod
    // the factor order for torsion factors). Throws MathError if the input
    // is not a cocycle over the same nerve and coefficients.
    std::vector<snf::Int> class_coordinates(const Cochain& cocycle) const;
    std::string describe() const;

private:
    friend CohomologyGroup cohomology(const NervePtr&, const Group&, int);
    Group coeff_;
    NervePtr nerve_;
    int degree_ = 0;
    bool modular_ = false;
    snf::Int modulus_ = 0;
    std::vector<snf::Int> factors_;
    std::vector<Cochain> reps_;
    std::vector<int> kept_;          // indices of kept factors in the SNF basis
    snf::IntMat va_inv_;             // inverse right transform of the cocycle matrix
    std::vector<snf::Int> stretch_;  // per-coordinate lattice scaling (cyclic case)
    int rank_a_ = 0;                 // integer case: rank of the cocycle matrix
    snf::IntMat uprime_;             // left transform of the relation matrix
};

CohomologyGroup cohomology(const NervePtr& nerve, const Group& coeff, int degree);

struct TrivializationCertificate {
    std::string reason;
    int snf_index = -1;
    snf::Int residue = 0;
};

struct TrivializationResult {
    std::optional<Cochain> witness;  // (n-1)-cochain b with db = c
    std::optional<TrivializationCertificate> certificate;
    bool trivial() const { return witness.has_value(); }
};

// Decide whether c = db is solvable and produce a witness or a
// certificate. Coefficients: finite cyclic, integers, circle, or products
// of those. The input must be a cocycle.
TrivializationResult solve_trivialization(const Cochain& c);

// Exhaustive odometer search over (n-1)-cochains, lexicographic over
// simplices with smallest group element first; finite coefficients only.
// Throws MathError when |group|^count exceeds the budget.
std::optional<Cochain> brute_force_trivialization(const Cochain& c, long long budget);

// 2^20 unless the GLIFT_BUDGET environment variable overrides it.
long long default_search_budget();

}  // namespace glift::cech
