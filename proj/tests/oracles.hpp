// Independent oracles used by the tests: deliberately avoid the library's
// Smith-normal-form code path so cross-checks mean something.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "glift/cohomology.hpp"
#include "glift/snf.hpp"

namespace oracle {

// Rank of an integer matrix over GF(p), plain Gaussian elimination.
inline int rank_mod_p(const glift::snf::IntMat& m, long long p) {
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[i][j] = ((m.at(i, j) % p) + p) % p;
    auto inv_mod = [&](long long x) {
        long long r = 1, b = x % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i)
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        long long inv = inv_mod(a[rank][col]);
        for (int j = col; j < cols; ++j) a[rank][j] = a[rank][j] * inv % p;
        for (int i = 0; i < rows; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            long long f = a[i][col];
            for (int j = col; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

// Rational rank via fraction-free (Bareiss) elimination in 128-bit.
inline int rank_rational(const glift::snf::IntMat& m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<__int128>> a(rows, std::vector<__int128>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[i][j] = m.at(i, j);
    __int128 prev = 1;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i)
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j) a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

// Betti-style dimension of H^n with GF(p) coefficients from the two
// coboundary matrices: dim ker(delta_n) - rank(delta_{n-1}).
inline int cohomology_dim_mod_p(const glift::geometry::Nerve& nerve, int degree, long long p) {
    using glift::cech::coboundary_matrix;
    int c = nerve.count(degree);
    if (c == 0) return 0;
    glift::snf::IntMat dn = coboundary_matrix(nerve, degree);
    int rank_dn = rank_mod_p(dn, p);
    int rank_prev = 0;
    if (degree >= 1) rank_prev = rank_mod_p(coboundary_matrix(nerve, degree - 1), p);
    return c - rank_dn - rank_prev;
}

// Order of H^n over Z/m by full enumeration: #cocycles / #coboundaries.
// Only for small nerves.
inline long long cohomology_order_enumerated(const glift::geometry::NervePtr& nerve, int degree, long long mod) {
    using namespace glift::cech;
    using glift::geometry::Simplex;
    glift::groups::Group g = glift::groups::Group::cyclic(mod);
    const auto& simp = nerve->simplices(degree);
    const auto& prev = degree >= 1 ? nerve->simplices(degree - 1) : std::vector<Simplex>{};
    long long cocycles = 0;
    std::vector<long long> idx(simp.size(), 0);
    for (;;) {
        Cochain c(nerve, degree, g);
        for (size_t i = 0; i < simp.size(); ++i) c.set(simp[i], glift::groups::GroupElement(idx[i]));
        if (is_cocycle(c).ok) ++cocycles;
        size_t i = simp.size();
        for (;;) {
            if (i == 0) goto done_cocycles;
            --i;
            if (++idx[i] < mod) break;
            idx[i] = 0;
        }
    }
done_cocycles:;
    // coboundaries: image size = m^(#prev) / #kernel of delta on cochains
    long long cochains_below = 1;
    for (size_t i = 0; i < prev.size(); ++i) cochains_below *= mod;
    long long kernel_below = 0;
    if (degree == 0) return cocycles;  // H^0 = 0-cocycles (no (-1)-cochains)
    {
        std::vector<long long> jdx(prev.size(), 0);
        for (;;) {
            Cochain b(nerve, degree - 1, g);
            for (size_t i = 0; i < prev.size(); ++i) b.set(prev[i], glift::groups::GroupElement(jdx[i]));
            if (coboundary(b).is_identity_cochain()) ++kernel_below;
            size_t i = prev.size();
            for (;;) {
                if (i == 0) goto done_kernel;
                --i;
                if (++jdx[i] < mod) break;
                jdx[i] = 0;
            }
        }
    done_kernel:;
    }
    long long image = cochains_below / kernel_below;
    return cocycles / image;
}

inline glift::cech::Cochain random_cochain(const glift::geometry::NervePtr& nerve, int degree,
                                           const glift::groups::Group& g, std::mt19937_64& rng) {
    glift::cech::Cochain c(nerve, degree, g);
    for (const auto& s : nerve->simplices(degree)) c.set(s, g.sample(rng));
    return c;
}

}  // namespace oracle
