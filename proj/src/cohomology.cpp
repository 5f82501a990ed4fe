#include "glift/cohomology.hpp"

#include <cstdlib>

#include "glift/errors.hpp"

namespace glift::cech {

using snf::Int;
using snf::IntMat;

snf::IntMat coboundary_matrix(const Nerve& nerve, int degree) {
    const auto& rows = nerve.simplices(degree + 1);
    const auto& cols = nerve.simplices(degree);
    IntMat m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        const Simplex& s = rows[r];
        for (size_t k = 0; k < s.size(); ++k) {
            Simplex face;
            for (size_t i = 0; i < s.size(); ++i)
                if (i != k) face.push_back(s[i]);
            m.at(static_cast<int>(r), nerve.index_of(face)) += (k % 2 == 0) ? 1 : -1;
        }
    }
    return m;
}

namespace {

std::vector<Int> lift_values(const Cochain& c) {
    const Group& g = c.group();
    std::vector<Int> x;
    x.reserve(c.simplex_count());
    for (const Simplex& s : c.nerve()->simplices(c.degree())) x.push_back(g.canonical(c.stored(s)).as_int());
    return x;
}

Cochain cochain_from_ints(const NervePtr& nerve, int degree, const Group& g, const std::vector<Int>& vals) {
    Cochain out(nerve, degree, g);
    const auto& simp = nerve->simplices(degree);
    for (size_t i = 0; i < simp.size(); ++i) out.set(simp[i], GroupElement(vals[i]));
    return out;
}

}  // namespace

CohomologyGroup cohomology(const NervePtr& nerve, const Group& coeff, int degree) {
    using groups::GroupKind;
    if (coeff.kind() != GroupKind::Cyclic && coeff.kind() != GroupKind::Integers)
        throw SchemaError("cohomology coefficients must be finite cyclic or integers");
    CohomologyGroup h;
    h.coeff_ = coeff;
    h.nerve_ = nerve;
    h.degree_ = degree;
    h.modular_ = coeff.kind() == GroupKind::Cyclic;
    h.modulus_ = h.modular_ ? coeff.order() : 0;

    const int c = nerve->count(degree);
    if (degree < 0 || c == 0) return h;  // out of range: trivial group

    IntMat a = coboundary_matrix(*nerve, degree);
    IntMat b = degree >= 1 ? coboundary_matrix(*nerve, degree - 1) : IntMat(c, 0);
    snf::SmithForm fa = snf::smith_normal_form(a);
    h.va_inv_ = fa.v_inv;
    h.rank_a_ = fa.rank;

    IntMat relations;  // coordinates of the image subgroup in the kernel-lattice basis
    int lattice_dim = 0;
    if (h.modular_) {
        // lattice L = {x : a x = 0 mod m}, basis columns V_a * diag(stretch)
        lattice_dim = c;
        h.stretch_.assign(c, 1);
        for (int i = 0; i < std::min(a.rows(), c); ++i) {
            Int di = fa.diag(i);
            h.stretch_[i] = h.modulus_ / snf::gcd_ll(di, h.modulus_);
        }
        relations = IntMat(c, b.cols() + c);
        auto push_generator = [&](const std::vector<Int>& gen, int col) {
            std::vector<Int> y = h.va_inv_.mul_vec(gen);
            for (int i = 0; i < c; ++i) {
                if (y[i] % h.stretch_[i] != 0) throw std::logic_error("cohomology: generator outside the lattice");
                relations.at(i, col) = y[i] / h.stretch_[i];
            }
        };
        for (int j = 0; j < b.cols(); ++j) {
            std::vector<Int> col(c);
            for (int i = 0; i < c; ++i) col[i] = b.at(i, j);
            push_generator(col, j);
        }
        for (int j = 0; j < c; ++j) {
            std::vector<Int> col(c, 0);
            col[j] = h.modulus_;
            push_generator(col, b.cols() + j);
        }
    } else {
        // integer coefficients: L = ker a, basis = kernel columns of V_a
        lattice_dim = c - fa.rank;
        if (lattice_dim == 0) return h;
        relations = IntMat(lattice_dim, b.cols());
        for (int j = 0; j < b.cols(); ++j) {
            std::vector<Int> col(c);
            for (int i = 0; i < c; ++i) col[i] = b.at(i, j);
            std::vector<Int> y = h.va_inv_.mul_vec(col);
            for (int i = 0; i < fa.rank; ++i)
                if (y[i] != 0) throw std::logic_error("cohomology: image not inside the kernel");
            for (int i = 0; i < lattice_dim; ++i) relations.at(i, j) = y[fa.rank + i];
        }
    }

    snf::SmithForm fc = snf::smith_normal_form(relations);
    h.uprime_ = fc.u;
    for (int i = 0; i < lattice_dim; ++i) {
        Int di = (i < std::min(relations.rows(), relations.cols())) ? fc.diag(i) : 0;
        if (di == 1) continue;
        h.kept_.push_back(i);
        h.factors_.push_back(di);  // 0 = free factor
        // representative: lattice element of the i-th basis vector in the
        // Smith basis of the quotient
        std::vector<Int> y(lattice_dim);
        for (int r = 0; r < lattice_dim; ++r) y[r] = fc.u_inv.at(r, i);
        std::vector<Int> x(c, 0);
        if (h.modular_) {
            std::vector<Int> stretched(c);
            for (int r = 0; r < c; ++r) stretched[r] = snf::checked_mul(y[r], h.stretch_[r]);
            x = fa.v.mul_vec(stretched);
            for (Int& xi : x) xi = snf::mod_floor(xi, h.modulus_);
        } else {
            std::vector<Int> z(c, 0);
            for (int r = 0; r < lattice_dim; ++r) z[fa.rank + r] = y[r];
            x = fa.v.mul_vec(z);
        }
        h.reps_.push_back(cochain_from_ints(nerve, degree, coeff, x));
    }
    return h;
}

std::vector<Int> CohomologyGroup::class_coordinates(const Cochain& cocycle) const {
    if (cocycle.degree() != degree_ || !cocycle.group().same_as(coeff_))
        throw MathError("class_coordinates: cochain shape mismatch");
    CocycleReport rep = is_cocycle(cocycle);
    if (!rep.ok) throw MathError("class_coordinates: input is not a cocycle: " + rep.describe());
    if (factors_.empty()) return {};
    const int c = nerve_->count(degree_);
    std::vector<Int> x = lift_values(cocycle);
    std::vector<Int> y;
    if (modular_) {
        std::vector<Int> raw = va_inv_.mul_vec(x);
        y.resize(c);
        for (int i = 0; i < c; ++i) {
            if (raw[i] % stretch_[i] != 0) throw MathError("class_coordinates: value vector is outside the lattice");
            y[i] = raw[i] / stretch_[i];
        }
    } else {
        std::vector<Int> raw = va_inv_.mul_vec(x);
        for (int i = 0; i < rank_a_; ++i)
            if (raw[i] != 0) throw MathError("class_coordinates: value vector is not in the kernel");
        y.assign(raw.begin() + rank_a_, raw.end());
    }
    std::vector<Int> z = uprime_.mul_vec(y);
    std::vector<Int> out;
    for (size_t t = 0; t < kept_.size(); ++t) {
        Int zi = z[kept_[t]];
        out.push_back(factors_[t] > 1 ? snf::mod_floor(zi, factors_[t]) : zi);
    }
    return out;
}

std::string CohomologyGroup::describe() const {
    if (factors_.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += " + ";
        out += factors_[i] == 0 ? "Z" : ("Z/" + std::to_string(factors_[i]));
    }
    return out;
}

namespace {

TrivializationResult solve_scalar(const Cochain& c) {
    using groups::GroupKind;
    const Group& g = c.group();
    const NervePtr& nerve = c.nerve();
    const int n = c.degree();
    IntMat b = n >= 1 ? coboundary_matrix(*nerve, n - 1) : IntMat(nerve->count(0), 0);
    snf::SmithForm fb = snf::smith_normal_form(b);
    const int prev_count = n >= 1 ? nerve->count(n - 1) : 0;

    TrivializationResult out;
    if (g.kind() == GroupKind::Cyclic) {
        std::vector<Int> x;
        for (const Simplex& s : nerve->simplices(n)) x.push_back(g.canonical(c.stored(s)).as_int());
        snf::ModSolution sol = snf::solve_mod(fb, x, g.order());
        if (!sol.ok) {
            out.certificate = TrivializationCertificate{sol.reason, sol.fail_index, sol.fail_value};
            return out;
        }
        Cochain witness(nerve, n - 1, g);
        const auto& prev = nerve->simplices(n - 1);
        for (int i = 0; i < prev_count; ++i) witness.set(prev[i], GroupElement(sol.y[i]));
        out.witness = std::move(witness);
        return out;
    }
    if (g.kind() == GroupKind::Integers) {
        std::vector<Int> x;
        for (const Simplex& s : nerve->simplices(n)) x.push_back(c.stored(s).as_int());
        auto sol = snf::solve_integer(fb, x);
        if (!sol) {
            out.certificate = TrivializationCertificate{"no integral solution (rank obstruction)", -1, 0};
            return out;
        }
        Cochain witness(nerve, n - 1, g);
        const auto& prev = nerve->simplices(n - 1);
        for (int i = 0; i < prev_count; ++i) witness.set(prev[i], GroupElement((*sol)[i]));
        out.witness = std::move(witness);
        return out;
    }
    if (g.kind() == GroupKind::Circle) {
        std::vector<double> x;
        for (const Simplex& s : nerve->simplices(n)) x.push_back(groups::mod_one(c.stored(s).as_real()));
        auto sol = snf::solve_mod_one(fb, x, groups::kCircleTol);
        if (!sol) {
            out.certificate = TrivializationCertificate{"circle congruence has a nonintegral obstruction row", -1, 0};
            return out;
        }
        Cochain witness(nerve, n - 1, g);
        const auto& prev = nerve->simplices(n - 1);
        for (int i = 0; i < prev_count; ++i) witness.set(prev[i], GroupElement((*sol)[i]));
        out.witness = std::move(witness);
        return out;
    }
    throw MathError("solve_trivialization: unsupported coefficient kind " + g.describe());
}

}  // namespace

TrivializationResult solve_trivialization(const Cochain& c) {
    const Group& g = c.group();
    if (!g.abelian()) throw MathError("solve_trivialization: coefficients must be abelian");
    CocycleReport rep = is_cocycle(c);
    if (!rep.ok) throw MathError("solve_trivialization: input is not a cocycle: " + rep.describe());
    if (!c.combinatorial()) throw MathError("solve_trivialization: sampled cochains are not supported");

    if (g.kind() != groups::GroupKind::Product) return solve_scalar(c);

    // componentwise over the factors; the first failing component certifies
    const auto& factors = g.factors();
    std::vector<Cochain> parts;
    for (size_t fi = 0; fi < factors.size(); ++fi) {
        Cochain comp = c.map_values(factors[fi], [&](const GroupElement& v) { return v.as_tuple()[fi]; });
        TrivializationResult r = solve_scalar(comp);
        if (!r.trivial()) {
            TrivializationResult out;
            out.certificate = r.certificate;
            out.certificate->reason = "factor " + std::to_string(fi) + ": " + out.certificate->reason;
            return out;
        }
        parts.push_back(std::move(*r.witness));
    }
    Cochain witness(c.nerve(), c.degree() - 1, g);
    for (const Simplex& s : c.nerve()->simplices(c.degree() - 1)) {
        std::vector<GroupElement> tuple;
        for (const Cochain& p : parts) tuple.push_back(p.stored(s));
        witness.set(s, GroupElement(std::move(tuple)));
    }
    TrivializationResult out;
    out.witness = std::move(witness);
    return out;
}

long long default_search_budget() {
    if (const char* env = std::getenv("GLIFT_BUDGET")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 1LL << 20;
}

std::optional<Cochain> brute_force_trivialization(const Cochain& c, long long budget) {
    const Group& g = c.group();
    if (!g.finite()) throw MathError("brute_force_trivialization: coefficients must be finite");
    const int n = c.degree();
    if (n == 0) return c.is_identity_cochain() ? std::optional<Cochain>(Cochain(c.nerve(), 0, g)) : std::nullopt;
    const auto& prev = c.nerve()->simplices(n - 1);
    const std::vector<GroupElement> elems = g.elements();
    // search size |G|^count against the budget
    double size = 1.0;
    for (size_t i = 0; i < prev.size(); ++i) size *= static_cast<double>(elems.size());
    if (size > static_cast<double>(budget))
        throw MathError("brute_force_trivialization: search space " + std::to_string(size) +
                        " exceeds budget " + std::to_string(budget));
    std::vector<size_t> idx(prev.size(), 0);
    Cochain b(c.nerve(), n - 1, g);
    for (;;) {
        for (size_t i = 0; i < prev.size(); ++i) b.set(prev[i], elems[idx[i]]);
        if (coboundary(b).max_distance(c) == 0.0) return b;
        // odometer: advance the last simplex first so earlier simplices
        // stay smallest as long as possible (lexicographic order)
        size_t i = prev.size();
        for (;;) {
            if (i == 0) return std::nullopt;
            --i;
            if (++idx[i] < elems.size()) break;
            idx[i] = 0;
        }
    }
}

}  // namespace glift::cech
