#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "glift/snf.hpp"
#include "oracles.hpp"

using namespace glift::snf;

namespace {

IntMat random_matrix(std::mt19937_64& rng, int rows, int cols, int span) {
    std::uniform_int_distribution<int> d(-span, span);
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = d(rng);
    return m;
}

}  // namespace

TEST_CASE("smith normal form reproduces the classic 2x2 example") {
    IntMat a(2, 2);
    a.at(0, 0) = 2;
    a.at(0, 1) = 4;
    a.at(1, 0) = 6;
    a.at(1, 1) = 8;
    SmithForm f = smith_normal_form(a);
    CHECK(f.diag(0) == 2);
    CHECK(f.diag(1) == 4);  // det = -8, d1*d2 = 8
    CHECK(f.rank == 2);
}

TEST_CASE("smith form diagonal divides and transforms invert") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 6);
        int cols = 1 + static_cast<int>(rng() % 6);
        IntMat a = random_matrix(rng, rows, cols, 5);
        SmithForm f = smith_normal_form(a);  // internal checks verify u*a*v = d
        for (int i = 0; i + 1 < std::min(rows, cols); ++i) {
            if (f.diag(i + 1) != 0) {
                REQUIRE(f.diag(i) != 0);
                CHECK(f.diag(i + 1) % f.diag(i) == 0);
            }
        }
        CHECK(f.rank == oracle::rank_rational(a));
    }
}

TEST_CASE("solve_integer finds exact solutions and rejects impossible ones") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        int rows = 2 + static_cast<int>(rng() % 4);
        int cols = 2 + static_cast<int>(rng() % 4);
        IntMat a = random_matrix(rng, rows, cols, 4);
        std::vector<Int> y0(cols);
        for (auto& v : y0) v = static_cast<Int>(rng() % 7) - 3;
        std::vector<Int> x = a.mul_vec(y0);
        SmithForm f = smith_normal_form(a);
        auto y = solve_integer(f, x);
        REQUIRE(y.has_value());
        CHECK(a.mul_vec(*y) == x);
    }
    // 2*y = 1 has no integer solution
    IntMat a(1, 1);
    a.at(0, 0) = 2;
    CHECK(!solve_integer(smith_normal_form(a), {1}).has_value());
}

TEST_CASE("solve_mod solves random solvable systems") {
    std::mt19937_64 rng(13);
    for (Int m : {2LL, 4LL, 6LL}) {
        for (int trial = 0; trial < 60; ++trial) {
            int rows = 2 + static_cast<int>(rng() % 4);
            int cols = 2 + static_cast<int>(rng() % 4);
            IntMat a = random_matrix(rng, rows, cols, 3);
            std::vector<Int> y0(cols);
            for (auto& v : y0) v = static_cast<Int>(rng() % m);
            std::vector<Int> x = a.mul_vec(y0);
            for (auto& v : x) v = mod_floor(v, m);
            ModSolution sol = solve_mod(smith_normal_form(a), x, m);
            REQUIRE(sol.ok);
            std::vector<Int> check = a.mul_vec(sol.y);
            for (size_t i = 0; i < check.size(); ++i) CHECK(mod_floor(check[i], m) == x[i]);
        }
    }
}

TEST_CASE("solve_mod certifies unsolvable congruences") {
    // 2*y = 1 (mod 4) is unsolvable
    IntMat a(1, 1);
    a.at(0, 0) = 2;
    ModSolution sol = solve_mod(smith_normal_form(a), {1}, 4);
    CHECK(!sol.ok);
    CHECK(sol.fail_index == 0);
}

TEST_CASE("solve_mod_one handles circle-valued systems") {
    IntMat a(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    a.at(1, 0) = 0;
    a.at(1, 1) = 2;
    SmithForm f = smith_normal_form(a);
    auto y = solve_mod_one(f, {0.3, 0.5}, 1e-9);
    REQUIRE(y.has_value());
    double r0 = (*y)[0] + (*y)[1] - 0.3;
    double r1 = 2 * (*y)[1] - 0.5;
    CHECK(std::abs(r0 - std::round(r0)) < 1e-9);
    CHECK(std::abs(r1 - std::round(r1)) < 1e-9);
}

TEST_CASE("rank oracles agree with each other") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        IntMat a = random_matrix(rng, 1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 5), 3);
        CHECK(oracle::rank_rational(a) == oracle::rank_mod_p(a, 1000003));
    }
}
