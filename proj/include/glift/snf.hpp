#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace glift::snf {

using Int = long long;

// Dense row-major integer matrix. All arithmetic is overflow-checked;
// an overflow throws std::overflow_error instead of wrapping.
class IntMat {
public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

    static IntMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    Int at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    IntMat mul(const IntMat& rhs) const;
    std::vector<Int> mul_vec(const std::vector<Int>& x) const;
    IntMat transpose() const;
    bool operator==(const IntMat& rhs) const { return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int mod_floor(Int a, Int m);  // representative in [0, m)
Int gcd_ll(Int a, Int b);
// Modular inverse of a mod m, gcd(a, m) must be 1.
Int mod_inverse(Int a, Int m);

// u * a * v = d with u, v unimodular, d diagonal with nonnegative entries
// satisfying the divisibility chain d[0] | d[1] | ... Inverses of the
// transforms are tracked alongside so lattice bases can be changed in both
// directions without a separate solve.
struct SmithForm {
    IntMat d;
    IntMat u, u_inv;  // rows x rows
    IntMat v, v_inv;  // cols x cols
    int rank = 0;
    Int diag(int i) const { return d.at(i, i); }
};

SmithForm smith_normal_form(const IntMat& a);

// Exact integer solution of a*y = x, if one exists.
std::optional<std::vector<Int>> solve_integer(const SmithForm& f, const std::vector<Int>& x);

// Solution of a*y = x (mod m) with entries reduced into [0, m). On failure
// the certificate names the diagonal position whose congruence is
// unsolvable, together with the offending residue.
struct ModSolution {
    bool ok = false;
    std::vector<Int> y;
    int fail_index = -1;
    Int fail_value = 0;
    std::string reason;
};

ModSolution solve_mod(const SmithForm& f, const std::vector<Int>& x, Int m);

// Solution of a*y = x over the reals modulo 1 (circle coefficients).
// Unsolvable rows must vanish mod 1 within tol.
std::optional<std::vector<double>> solve_mod_one(const SmithForm& f, const std::vector<double>& x, double tol);

}  // namespace glift::snf
