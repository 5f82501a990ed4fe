#include "glift/snf.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace glift::snf {

Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
    return r;
}

Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
    return r;
}

Int mod_floor(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

Int gcd_ll(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

Int mod_inverse(Int a, Int m) {
    Int t = 0, new_t = 1;
    Int r = m, new_r = mod_floor(a, m);
    while (new_r != 0) {
        Int q = r / new_r;
        Int tmp = t - checked_mul(q, new_t);
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: not coprime");
    return mod_floor(t, m);
}

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::mul(const IntMat& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("IntMat::mul: shape mismatch");
    IntMat out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            Int aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j)
                out.at(i, j) = checked_add(out.at(i, j), checked_mul(aik, rhs.at(k, j)));
        }
    return out;
}

std::vector<Int> IntMat::mul_vec(const std::vector<Int>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("IntMat::mul_vec: shape mismatch");
    std::vector<Int> out(rows_, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[i] = checked_add(out[i], checked_mul(at(i, j), x[j]));
    return out;
}

IntMat IntMat::transpose() const {
    IntMat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

namespace {

struct Reducer {
    IntMat d, u, u_inv, v, v_inv;

    explicit Reducer(const IntMat& a)
        : d(a),
          u(IntMat::identity(a.rows())),
          u_inv(IntMat::identity(a.rows())),
          v(IntMat::identity(a.cols())),
          v_inv(IntMat::identity(a.cols())) {}

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < d.cols(); ++c) std::swap(d.at(i, c), d.at(j, c));
        for (int c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
        for (int r = 0; r < u_inv.rows(); ++r) std::swap(u_inv.at(r, i), u_inv.at(r, j));
    }

    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < d.rows(); ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
        for (int c = 0; c < v_inv.cols(); ++c) std::swap(v_inv.at(i, c), v_inv.at(j, c));
    }

    // row j += f * row t
    void add_row(int j, int t, Int f) {
        if (f == 0) return;
        for (int c = 0; c < d.cols(); ++c) d.at(j, c) = checked_add(d.at(j, c), checked_mul(f, d.at(t, c)));
        for (int c = 0; c < u.cols(); ++c) u.at(j, c) = checked_add(u.at(j, c), checked_mul(f, u.at(t, c)));
        for (int r = 0; r < u_inv.rows(); ++r)
            u_inv.at(r, t) = checked_add(u_inv.at(r, t), checked_mul(-f, u_inv.at(r, j)));
    }

    // col j += f * col t
    void add_col(int j, int t, Int f) {
        if (f == 0) return;
        for (int r = 0; r < d.rows(); ++r) d.at(r, j) = checked_add(d.at(r, j), checked_mul(f, d.at(r, t)));
        for (int r = 0; r < v.rows(); ++r) v.at(r, j) = checked_add(v.at(r, j), checked_mul(f, v.at(r, t)));
        for (int c = 0; c < v_inv.cols(); ++c)
            v_inv.at(t, c) = checked_add(v_inv.at(t, c), checked_mul(-f, v_inv.at(j, c)));
    }

    void negate_row(int i) {
        for (int c = 0; c < d.cols(); ++c) d.at(i, c) = -d.at(i, c);
        for (int c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
        for (int r = 0; r < u_inv.rows(); ++r) u_inv.at(r, i) = -u_inv.at(r, i);
    }

    bool find_pivot(int t, int& pr, int& pc) const {
        Int best = 0;
        bool found = false;
        for (int i = t; i < d.rows(); ++i)
            for (int j = t; j < d.cols(); ++j) {
                Int x = d.at(i, j);
                if (x == 0) continue;
                Int ax = x < 0 ? -x : x;
                if (!found || ax < best) {
                    best = ax;
                    pr = i;
                    pc = j;
                    found = true;
                }
            }
        return found;
    }

    bool lone(int t) const {
        for (int i = t + 1; i < d.rows(); ++i)
            if (d.at(i, t) != 0) return false;
        for (int j = t + 1; j < d.cols(); ++j)
            if (d.at(t, j) != 0) return false;
        return true;
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMat& a) {
    Reducer w(a);
    const int nmin = std::min(a.rows(), a.cols());
    int rank = 0;
    for (int t = 0; t < nmin; ++t) {
        int pr, pc;
        if (!w.find_pivot(t, pr, pc)) break;  // submatrix all zero
        for (;;) {
            w.find_pivot(t, pr, pc);
            w.swap_rows(t, pr);
            w.swap_cols(t, pc);
            for (int i = t + 1; i < w.d.rows(); ++i)
                if (w.d.at(i, t) != 0) w.add_row(i, t, -(w.d.at(i, t) / w.d.at(t, t)));
            for (int j = t + 1; j < w.d.cols(); ++j)
                if (w.d.at(t, j) != 0) w.add_col(j, t, -(w.d.at(t, j) / w.d.at(t, t)));
            if (!w.lone(t)) continue;
            // enforce divisibility of the remaining block by the pivot
            Int p = w.d.at(t, t);
            int br = -1, bc = -1;
            for (int i = t + 1; i < w.d.rows() && br < 0; ++i)
                for (int j = t + 1; j < w.d.cols(); ++j)
                    if (w.d.at(i, j) % p != 0) {
                        br = i;
                        bc = j;
                        break;
                    }
            if (br < 0) break;
            w.add_row(t, br, 1);
        }
        if (w.d.at(t, t) < 0) w.negate_row(t);
        ++rank;
    }

    SmithForm f;
    f.d = w.d;
    f.u = w.u;
    f.u_inv = w.u_inv;
    f.v = w.v;
    f.v_inv = w.v_inv;
    f.rank = rank;

    // Paranoia: the transforms must reproduce d and invert exactly.
    if (!(f.u.mul(a).mul(f.v) == f.d)) throw std::logic_error("smith_normal_form: transform mismatch");
    if (!(f.u.mul(f.u_inv) == IntMat::identity(a.rows()))) throw std::logic_error("smith_normal_form: u_inv mismatch");
    if (!(f.v.mul(f.v_inv) == IntMat::identity(a.cols()))) throw std::logic_error("smith_normal_form: v_inv mismatch");
    return f;
}

std::optional<std::vector<Int>> solve_integer(const SmithForm& f, const std::vector<Int>& x) {
    const int rows = f.d.rows(), cols = f.d.cols();
    std::vector<Int> ux = f.u.mul_vec(x);
    std::vector<Int> z(cols, 0);
    for (int i = 0; i < rows; ++i) {
        Int di = (i < cols) ? f.diag(i) : 0;
        if (di == 0) {
            if (ux[i] != 0) return std::nullopt;
        } else {
            if (ux[i] % di != 0) return std::nullopt;
            z[i] = ux[i] / di;
        }
    }
    return f.v.mul_vec(z);
}

ModSolution solve_mod(const SmithForm& f, const std::vector<Int>& x, Int m) {
    ModSolution out;
    const int rows = f.d.rows(), cols = f.d.cols();
    std::vector<Int> ux = f.u.mul_vec(x);
    std::vector<Int> z(cols, 0);
    for (int i = 0; i < rows; ++i) {
        Int di = (i < cols) ? f.diag(i) : 0;
        Int xi = mod_floor(ux[i], m);
        if (di == 0) {
            if (xi != 0) {
                out.fail_index = i;
                out.fail_value = xi;
                out.reason = "row outside the image lattice (nonzero residue against a zero invariant factor)";
                return out;
            }
        } else {
            Int g = gcd_ll(di, m);
            if (xi % g != 0) {
                out.fail_index = i;
                out.fail_value = xi;
                out.reason = "congruence " + std::to_string(di) + "*z = " + std::to_string(xi) + " (mod " +
                             std::to_string(m) + ") has no solution";
                return out;
            }
            Int mg = m / g;
            if (mg == 1) {
                z[i] = 0;
            } else {
                Int inv = mod_inverse(mod_floor(di / g, mg), mg);
                z[i] = mod_floor(checked_mul(xi / g, inv), mg);
            }
        }
    }
    std::vector<Int> y = f.v.mul_vec(z);
    for (Int& yi : y) yi = mod_floor(yi, m);
    out.ok = true;
    out.y = std::move(y);
    return out;
}

std::optional<std::vector<double>> solve_mod_one(const SmithForm& f, const std::vector<double>& x, double tol) {
    const int rows = f.d.rows(), cols = f.d.cols();
    std::vector<double> ux(rows, 0.0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < static_cast<int>(x.size()); ++j)
            if (f.u.at(i, j) != 0) ux[i] += static_cast<double>(f.u.at(i, j)) * x[j];
    std::vector<double> z(cols, 0.0);
    for (int i = 0; i < rows; ++i) {
        Int di = (i < cols) ? f.diag(i) : 0;
        if (di == 0) {
            double frac = ux[i] - std::round(ux[i]);
            if (std::abs(frac) > tol) return std::nullopt;
        } else {
            z[i] = ux[i] / static_cast<double>(di);
        }
    }
    std::vector<double> y(cols, 0.0);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < cols; ++j)
            if (f.v.at(i, j) != 0) y[i] += static_cast<double>(f.v.at(i, j)) * z[j];
    for (double& yi : y) yi -= std::floor(yi);
    return y;
}

}  // namespace glift::snf
