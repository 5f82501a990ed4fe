#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "glift/errors.hpp"
#include "glift/extension.hpp"
#include "glift/group.hpp"
#include "glift/snf.hpp"

using namespace glift;
using namespace glift::groups;

namespace {

// independent of Eigen operator*: plain triple loop
Eigen::MatrixXcd naive_mul(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            for (int k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
    return out;
}

Eigen::MatrixXcd series_exp(const Eigen::MatrixXcd& x, int terms = 40) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(x.rows(), x.cols());
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(x.rows(), x.cols());
    for (int n = 1; n < terms; ++n) {
        term = naive_mul(term, x) / static_cast<double>(n);
        acc += term;
    }
    return acc;
}

}  // namespace

TEST_CASE("group axioms hold on random samples") {
    std::mt19937_64 rng(3);
    std::vector<Group> gs = {Group::cyclic(4), Group::integers(), Group::circle(), Group::unitary(2),
                             Group::special_orthogonal(3), Group::product({Group::cyclic(2), Group::circle()})};
    for (const Group& g : gs) {
        for (int t = 0; t < 50; ++t) {
            GroupElement a = g.sample(rng), b = g.sample(rng), c = g.sample(rng);
            g.check_member(a);
            CHECK(g.equal(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c))));
            CHECK(g.equal(g.mul(a, g.identity()), g.canonical(a)));
            CHECK(g.is_identity(g.mul(a, g.inv(a))));
        }
    }
}

TEST_CASE("cyclic and circle arithmetic matches the stated examples") {
    Group z4 = Group::cyclic(4);
    CHECK(z4.mul(GroupElement(std::int64_t{3}), GroupElement(std::int64_t{3})).as_int() == 2);
    Group s1 = Group::circle();
    CHECK(s1.mul(GroupElement(0.75), GroupElement(0.5)).as_real() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("su(2) inverse is exact to 1e-12") {
    std::mt19937_64 rng(5);
    Group su2 = Group::unitary(2);
    for (int t = 0; t < 50; ++t) {
        GroupElement g = su2.sample(rng);
        CHECK(su2.distance(su2.mul(g, su2.inv(g)), su2.identity()) < 1e-12);
    }
}

TEST_CASE("adjoint action: abelian identity and su(2) oracle") {
    Group s1 = Group::circle();
    std::mt19937_64 rng(9);
    GroupElement any = s1.sample(rng);
    CHECK(s1.ad(any, AlgebraElement(0.3)).as_real() == 0.3);

    Group su2 = Group::unitary(2);
    for (int t = 0; t < 30; ++t) {
        GroupElement g = su2.sample(rng);
        AlgebraElement x = su2.algebra_sample(rng, 1.0);
        AlgebraElement adx = su2.ad(g, x);
        // direct-multiplication oracle g x g^-1
        Eigen::MatrixXcd expect = naive_mul(naive_mul(g.as_matrix(), x.as_matrix()), su2.inv(g).as_matrix());
        CHECK((adx.as_matrix() - expect).norm() < 1e-12);
        // Ad(g) Ad(g^-1) = id
        AlgebraElement back = su2.ad(su2.inv(g), adx);
        CHECK(su2.algebra_norm(su2.algebra_sub(back, x)) < 1e-12);
    }
    CHECK_THROWS_AS(Group::cyclic(4).ad(GroupElement(std::int64_t{1}), AlgebraElement(0.0)), MathError);
}

TEST_CASE("circle exp and log invert on the principal domain") {
    Group s1 = Group::circle();
    CHECK(s1.exp(AlgebraElement(0.25)).as_real() == doctest::Approx(0.25));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-0.49, 0.49);
    for (int t = 0; t < 200; ++t) {
        double x = d(rng);
        CHECK(s1.log(s1.exp(AlgebraElement(x))).as_real() == doctest::Approx(x).epsilon(1e-12));
    }
    CHECK_THROWS_AS(s1.log(GroupElement(0.5)), BranchCutError);
}

TEST_CASE("matrix exp matches a series oracle and log inverts it") {
    Group su2 = Group::unitary(2);
    std::mt19937_64 rng(13);
    CHECK(su2.distance(su2.exp(su2.algebra_scale(0.0, su2.algebra_sample(rng, 1.0))), su2.identity()) < 1e-14);
    for (int t = 0; t < 25; ++t) {
        AlgebraElement x = su2.algebra_sample(rng, 0.3);
        if (su2.algebra_norm(x) >= 1.0) continue;
        GroupElement ex = su2.exp(x);
        CHECK((ex.as_matrix() - series_exp(x.as_matrix())).norm() < 1e-12);
        AlgebraElement back = su2.log(ex);
        CHECK(su2.algebra_norm(su2.algebra_sub(back, x)) < 1e-9);
    }
    // branch cut: -identity
    Eigen::MatrixXcd minus = -Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(su2.log(GroupElement(minus)), BranchCutError);
}

TEST_CASE("membership checks reject property violations") {
    Group su2 = Group::unitary(2);
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(su2.check_member(GroupElement(bad)), MathError);
    Eigen::MatrixXcd not_skew = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(su2.check_algebra_member(AlgebraElement(not_skew)), MathError);
    CHECK_THROWS_AS(Group::unitary(2).mul(GroupElement(Eigen::MatrixXcd::Identity(3, 3).eval()),
                                          GroupElement(Eigen::MatrixXcd::Identity(2, 2).eval())),
                    MathError);
}

TEST_CASE("extension axioms validate for the builtin families") {
    std::mt19937_64 rng(17);
    Extension::cyclic(2, 2).validate(rng, 200);
    Extension::cyclic(3, 4).validate(rng, 200);
    Extension::circle_squaring().validate(rng, 200);
    Extension::circle_by_circle().validate(rng, 200);
}

TEST_CASE("sections need not preserve the identity and stay sections") {
    std::mt19937_64 rng(19);
    Extension skew = Extension::cyclic(2, 2).with_section(
        [](const GroupElement& k) { return GroupElement(snf::mod_floor(k.as_int(), 2) == 0 ? std::int64_t{2} : 3); },
        "skewed");
    skew.validate(rng, 100);
    CHECK(skew.section(skew.K.identity()).as_int() == 2);  // e_K does not go to e_G
    for (int t = 0; t < 1000; ++t) {
        GroupElement k = skew.K.sample(rng);
        CHECK(skew.K.equal(skew.project(skew.section(k)), skew.K.canonical(k)));
    }
}

TEST_CASE("circle-squaring section uses the principal half") {
    Extension e = Extension::circle_squaring();
    CHECK(e.section(GroupElement(0.7)).as_real() == doctest::Approx(0.35));
    CHECK(e.retract(GroupElement(0.5)).value().as_int() == 1);
    CHECK(e.retract(GroupElement(1e-12)).value().as_int() == 0);
    CHECK(!e.retract(GroupElement(0.25)).has_value());
}

TEST_CASE("centrality holds for 1000 samples in every builtin extension") {
    std::mt19937_64 rng(23);
    for (const Extension& e :
         {Extension::cyclic(2, 2), Extension::circle_squaring(), Extension::circle_by_circle()}) {
        for (int t = 0; t < 1000; ++t) {
            GroupElement h = e.H.sample(rng);
            GroupElement g = e.G.sample(rng);
            GroupElement comm =
                e.G.mul(e.G.mul(e.include(h), g), e.G.inv(e.G.mul(g, e.include(h))));
            CHECK(e.G.distance(comm, e.G.identity()) <= 1e-10);
        }
    }
}
