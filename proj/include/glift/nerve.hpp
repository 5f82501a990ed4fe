#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace glift::geometry {

// Vertices of a simplex, strictly ascending.
using Simplex = std::vector<int>;

std::string simplex_name(const Simplex& s);

// Intersection pattern of a good cover: a finite abstract simplicial
// complex, downward closed, with every vertex below vertex_count present.
class Nerve {
public:
    Nerve(int vertex_count, const std::vector<Simplex>& simplices);

    int vertex_count() const { return vertex_count_; }
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    // Simplices of dimension d in lexicographic order; empty list if out of range.
    const std::vector<Simplex>& simplices(int dim) const;
    int count(int dim) const { return static_cast<int>(simplices(dim).size()); }
    bool contains(const Simplex& s) const;
    // Position of s among simplices(dim(s)); throws if absent.
    int index_of(const Simplex& s) const;
    long long euler_characteristic() const;
    // Simplices not contained in any larger simplex.
    std::vector<Simplex> maximal_simplices() const;

private:
    int vertex_count_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::map<Simplex, int> index_;
};

using NervePtr = std::shared_ptr<const Nerve>;

// Catalog keys: circle3, sphere4, rp2_6, torus9, rp3_40.
NervePtr builtin_nerve(const std::string& name);
std::vector<std::string> builtin_nerve_names();

}  // namespace glift::geometry
