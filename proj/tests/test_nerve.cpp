#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glift/cohomology.hpp"
#include "glift/errors.hpp"
#include "glift/nerve.hpp"
#include "oracles.hpp"

using namespace glift;
using geometry::builtin_nerve;
using geometry::Nerve;
using geometry::Simplex;

TEST_CASE("downward closure restores faces and singletons") {
    Nerve n(4, {{0, 1, 2}});
    CHECK(n.count(0) == 4);  // includes the isolated vertex 3
    CHECK(n.count(1) == 3);
    CHECK(n.count(2) == 1);
    CHECK(n.contains({0, 2}));
    CHECK(n.contains({3}));
    // every face of every simplex is present
    for (int d = 0; d <= n.dimension(); ++d)
        for (const Simplex& s : n.simplices(d))
            for (size_t k = 0; k < s.size() && s.size() > 1; ++k) {
                Simplex face;
                for (size_t i = 0; i < s.size(); ++i)
                    if (i != k) face.push_back(s[i]);
                CHECK(n.contains(face));
            }
}

TEST_CASE("invalid simplices are rejected") {
    CHECK_THROWS_AS(Nerve(3, {{0, 0}}), SchemaError);
    CHECK_THROWS_AS(Nerve(3, {{2, 1}}), SchemaError);
    CHECK_THROWS_AS(Nerve(3, {{0, 5}}), SchemaError);
    CHECK_THROWS_AS(geometry::builtin_nerve("klein7"), SchemaError);
}

TEST_CASE("circle3 and sphere4 have the stated face counts") {
    auto circle = builtin_nerve("circle3");
    CHECK(circle->count(0) == 3);
    CHECK(circle->count(1) == 3);
    CHECK(circle->count(2) == 0);
    CHECK(circle->euler_characteristic() == 0);

    auto sphere = builtin_nerve("sphere4");
    CHECK(sphere->count(0) == 4);
    CHECK(sphere->count(1) == 6);
    CHECK(sphere->count(2) == 4);
    CHECK(sphere->count(3) == 0);
    CHECK(sphere->euler_characteristic() == 2);
}

TEST_CASE("rp2_6 is a closed surface with Euler characteristic 1") {
    auto rp2 = builtin_nerve("rp2_6");
    CHECK(rp2->count(0) == 6);
    CHECK(rp2->count(1) == 15);
    CHECK(rp2->count(2) == 10);
    CHECK(rp2->euler_characteristic() == 1);
    // closed surface: every edge lies in exactly two triangles
    for (const Simplex& e : rp2->simplices(1)) {
        int cofaces = 0;
        for (const Simplex& t : rp2->simplices(2)) {
            if (std::includes(t.begin(), t.end(), e.begin(), e.end())) ++cofaces;
        }
        CHECK(cofaces == 2);
    }
}

TEST_CASE("rp2_6 mod-2 cohomology is Z/2 in degrees 0,1,2") {
    auto rp2 = builtin_nerve("rp2_6");
    for (int d = 0; d <= 2; ++d) CHECK(oracle::cohomology_dim_mod_p(*rp2, d, 2) == 1);
    // and trivial with odd coefficients in positive degree
    CHECK(oracle::cohomology_dim_mod_p(*rp2, 1, 3) == 0);
    CHECK(oracle::cohomology_dim_mod_p(*rp2, 2, 3) == 0);
}

TEST_CASE("torus9 is a torus") {
    auto t = builtin_nerve("torus9");
    CHECK(t->count(0) == 9);
    CHECK(t->count(1) == 27);
    CHECK(t->count(2) == 18);
    CHECK(t->euler_characteristic() == 0);
    CHECK(oracle::cohomology_dim_mod_p(*t, 1, 1000003) == 2);  // rational betti_1 = 2
    CHECK(oracle::cohomology_dim_mod_p(*t, 2, 1000003) == 1);
}

TEST_CASE("rp3_40 is a closed orientable 3-manifold with RP3 cohomology") {
    auto rp3 = builtin_nerve("rp3_40");
    CHECK(rp3->count(0) == 40);
    CHECK(rp3->count(3) == 192);
    CHECK(rp3->euler_characteristic() == 0);
    // closed 3-manifold: every triangle lies in exactly two tetrahedra
    int checked = 0;
    for (const Simplex& t : rp3->simplices(2)) {
        int cofaces = 0;
        for (int v = 0; v < rp3->vertex_count(); ++v) {
            if (std::binary_search(t.begin(), t.end(), v)) continue;
            Simplex big = t;
            big.insert(std::upper_bound(big.begin(), big.end(), v), v);
            if (rp3->contains(big)) ++cofaces;
        }
        CHECK(cofaces == 2);
        ++checked;
    }
    CHECK(checked == rp3->count(2));
    // mod-2 cohomology Z/2 in every degree 0..3
    for (int d = 0; d <= 3; ++d) CHECK(oracle::cohomology_dim_mod_p(*rp3, d, 2) == 1);
    // rational cohomology of an orientable rational homology sphere
    CHECK(oracle::cohomology_dim_mod_p(*rp3, 0, 1000003) == 1);
    CHECK(oracle::cohomology_dim_mod_p(*rp3, 1, 1000003) == 0);
    CHECK(oracle::cohomology_dim_mod_p(*rp3, 2, 1000003) == 0);
    CHECK(oracle::cohomology_dim_mod_p(*rp3, 3, 1000003) == 1);
}

TEST_CASE("maximal simplices round-trip the construction") {
    auto rp2 = builtin_nerve("rp2_6");
    auto max = rp2->maximal_simplices();
    CHECK(max.size() == 10);
    Nerve rebuilt(6, max);
    for (int d = 0; d <= 2; ++d) CHECK(rebuilt.count(d) == rp2->count(d));
}
