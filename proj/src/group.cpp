#include "glift/group.hpp"

#include <cmath>
#include <complex>
#include <unsupported/Eigen/MatrixFunctions>

#include "glift/errors.hpp"
#include "glift/snf.hpp"

namespace glift::groups {

using complexd = std::complex<double>;

double mod_one(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;  // guards against floor(1.0 - eps) rounding
    return r;
}

double circle_distance(double a, double b) {
    double d = std::abs(mod_one(a) - mod_one(b));
    return std::min(d, 1.0 - d);
}

Group Group::cyclic(std::int64_t order) {
    if (order <= 0) throw SchemaError("cyclic group order must be positive");
    Group g;
    g.kind_ = GroupKind::Cyclic;
    g.order_ = order;
    return g;
}

Group Group::integers() {
    Group g;
    g.kind_ = GroupKind::Integers;
    return g;
}

Group Group::circle() {
    Group g;
    g.kind_ = GroupKind::Circle;
    return g;
}

Group Group::matrix(MatrixFamily family, int dim) {
    if (dim <= 0) throw SchemaError("matrix group dimension must be positive");
    Group g;
    g.kind_ = GroupKind::Matrix;
    g.dim_ = dim;
    g.family_ = family;
    return g;
}

Group Group::product(std::vector<Group> factors) {
    if (factors.empty()) throw SchemaError("product group needs at least one factor");
    Group g;
    g.kind_ = GroupKind::Product;
    g.factors_ = std::move(factors);
    return g;
}

bool Group::abelian() const {
    switch (kind_) {
        case GroupKind::Cyclic:
        case GroupKind::Integers:
        case GroupKind::Circle:
            return true;
        case GroupKind::Matrix:
            return false;
        case GroupKind::Product:
            for (const Group& f : factors_)
                if (!f.abelian()) return false;
            return true;
    }
    return false;
}

bool Group::discrete() const {
    switch (kind_) {
        case GroupKind::Cyclic:
        case GroupKind::Integers:
            return true;
        case GroupKind::Circle:
        case GroupKind::Matrix:
            return false;
        case GroupKind::Product:
            for (const Group& f : factors_)
                if (!f.discrete()) return false;
            return true;
    }
    return false;
}

bool Group::finite() const {
    switch (kind_) {
        case GroupKind::Cyclic:
            return true;
        case GroupKind::Product:
            for (const Group& f : factors_)
                if (!f.finite()) return false;
            return true;
        default:
            return false;
    }
}

std::int64_t Group::order() const {
    if (kind_ == GroupKind::Cyclic) return order_;
    if (kind_ == GroupKind::Product) {
        std::int64_t n = 1;
        for (const Group& f : factors_) n = snf::checked_mul(n, f.order());
        return n;
    }
    throw MathError("order(): group is not finite cyclic");
}

bool Group::same_as(const Group& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case GroupKind::Cyclic:
            return order_ == other.order_;
        case GroupKind::Integers:
        case GroupKind::Circle:
            return true;
        case GroupKind::Matrix:
            return dim_ == other.dim_ && family_ == other.family_;
        case GroupKind::Product: {
            if (factors_.size() != other.factors_.size()) return false;
            for (size_t i = 0; i < factors_.size(); ++i)
                if (!factors_[i].same_as(other.factors_[i])) return false;
            return true;
        }
    }
    return false;
}

std::string Group::describe() const {
    switch (kind_) {
        case GroupKind::Cyclic:
            return "Z/" + std::to_string(order_);
        case GroupKind::Integers:
            return "Z";
        case GroupKind::Circle:
            return "circle";
        case GroupKind::Matrix: {
            const char* fam = family_ == MatrixFamily::Unitary            ? "U"
                              : family_ == MatrixFamily::SpecialOrthogonal ? "SO"
                                                                           : "GL";
            return std::string(fam) + "(" + std::to_string(dim_) + ")";
        }
        case GroupKind::Product: {
            std::string out;
            for (size_t i = 0; i < factors_.size(); ++i) {
                if (i) out += " x ";
                out += factors_[i].describe();
            }
            return out;
        }
    }
    return "?";
}

GroupElement Group::identity() const {
    switch (kind_) {
        case GroupKind::Cyclic:
        case GroupKind::Integers:
            return GroupElement(std::int64_t{0});
        case GroupKind::Circle:
            return GroupElement(0.0);
        case GroupKind::Matrix:
            return GroupElement(Eigen::MatrixXcd::Identity(dim_, dim_).eval());
        case GroupKind::Product: {
            std::vector<GroupElement> t;
            t.reserve(factors_.size());
            for (const Group& f : factors_) t.push_back(f.identity());
            return GroupElement(std::move(t));
        }
    }
    throw MathError("identity(): bad kind");
}

GroupElement Group::canonical(const GroupElement& a) const {
    switch (kind_) {
        case GroupKind::Cyclic:
            return GroupElement(snf::mod_floor(a.as_int(), order_));
        case GroupKind::Integers:
            return a;
        case GroupKind::Circle:
            return GroupElement(mod_one(a.as_real()));
        case GroupKind::Matrix:
            return a;
        case GroupKind::Product: {
            const auto& t = a.as_tuple();
            if (t.size() != factors_.size()) throw MathError("product element arity mismatch");
            std::vector<GroupElement> out;
            out.reserve(t.size());
            for (size_t i = 0; i < t.size(); ++i) out.push_back(factors_[i].canonical(t[i]));
            return GroupElement(std::move(out));
        }
    }
    throw MathError("canonical(): bad kind");
}

GroupElement Group::mul(const GroupElement& a, const GroupElement& b) const {
    switch (kind_) {
        case GroupKind::Cyclic:
            return GroupElement(snf::mod_floor(a.as_int() + b.as_int(), order_));
        case GroupKind::Integers:
            return GroupElement(snf::checked_add(a.as_int(), b.as_int()));
        case GroupKind::Circle:
            return GroupElement(mod_one(a.as_real() + b.as_real()));
        case GroupKind::Matrix: {
            if (a.as_matrix().rows() != dim_ || b.as_matrix().rows() != dim_)
                throw MathError("matrix dimension mismatch in mul");
            return GroupElement((a.as_matrix() * b.as_matrix()).eval());
        }
        case GroupKind::Product: {
            const auto& ta = a.as_tuple();
            const auto& tb = b.as_tuple();
            if (ta.size() != factors_.size() || tb.size() != factors_.size())
                throw MathError("product element arity mismatch in mul");
            std::vector<GroupElement> out;
            out.reserve(ta.size());
            for (size_t i = 0; i < ta.size(); ++i) out.push_back(factors_[i].mul(ta[i], tb[i]));
            return GroupElement(std::move(out));
        }
    }
    throw MathError("mul(): bad kind");
}

GroupElement Group::inv(const GroupElement& a) const {
    switch (kind_) {
        case GroupKind::Cyclic:
            return GroupElement(snf::mod_floor(-a.as_int(), order_));
        case GroupKind::Integers:
            return GroupElement(-a.as_int());
        case GroupKind::Circle:
            return GroupElement(mod_one(-a.as_real()));
        case GroupKind::Matrix: {
            const Eigen::MatrixXcd& m = a.as_matrix();
            if (family_ == MatrixFamily::Unitary) return GroupElement(m.adjoint().eval());
            if (family_ == MatrixFamily::SpecialOrthogonal) return GroupElement(m.transpose().eval());
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
            if (!lu.isInvertible()) throw MathError("matrix element is not invertible");
            return GroupElement(lu.inverse().eval());
        }
        case GroupKind::Product: {
            const auto& t = a.as_tuple();
            std::vector<GroupElement> out;
            out.reserve(t.size());
            for (size_t i = 0; i < t.size(); ++i) out.push_back(factors_[i].inv(t[i]));
            return GroupElement(std::move(out));
        }
    }
    throw MathError("inv(): bad kind");
}

GroupElement Group::pow(const GroupElement& a, std::int64_t n) const {
    if (n == 0) return identity();
    if (n < 0) return inv(pow(a, -n));
    GroupElement acc = identity();
    GroupElement base = a;
    std::int64_t k = n;
    while (k > 0) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

double Group::distance(const GroupElement& a, const GroupElement& b) const {
    switch (kind_) {
        case GroupKind::Cyclic:
            return snf::mod_floor(a.as_int(), order_) == snf::mod_floor(b.as_int(), order_) ? 0.0 : 1.0;
        case GroupKind::Integers:
            return a.as_int() == b.as_int() ? 0.0 : 1.0;
        case GroupKind::Circle:
            return circle_distance(a.as_real(), b.as_real());
        case GroupKind::Matrix:
            return (a.as_matrix() - b.as_matrix()).norm();
        case GroupKind::Product: {
            const auto& ta = a.as_tuple();
            const auto& tb = b.as_tuple();
            if (ta.size() != tb.size()) throw MathError("product element arity mismatch in distance");
            double d = 0.0;
            for (size_t i = 0; i < ta.size(); ++i) d = std::max(d, factors_[i].distance(ta[i], tb[i]));
            return d;
        }
    }
    throw MathError("distance(): bad kind");
}

bool Group::equal(const GroupElement& a, const GroupElement& b) const {
    double tol = 0.0;
    if (kind_ == GroupKind::Circle) tol = kCircleTol;
    if (kind_ == GroupKind::Matrix) tol = kMatrixTol;
    if (kind_ == GroupKind::Product) tol = kCircleTol;  // max over factors, discrete ones are 0/1
    return equal(a, b, tol);
}

bool Group::equal(const GroupElement& a, const GroupElement& b, double tol) const {
    return distance(a, b) <= tol;
}

void Group::check_member(const GroupElement& a) const {
    switch (kind_) {
        case GroupKind::Cyclic:
        case GroupKind::Integers:
            (void)a.as_int();
            return;
        case GroupKind::Circle:
            if (!std::isfinite(a.as_real())) throw MathError("circle element not finite");
            return;
        case GroupKind::Matrix: {
            const Eigen::MatrixXcd& m = a.as_matrix();
            if (m.rows() != dim_ || m.cols() != dim_) throw MathError("matrix element dimension mismatch");
            if (family_ == MatrixFamily::Unitary) {
                double dev = (m.adjoint() * m - Eigen::MatrixXcd::Identity(dim_, dim_)).norm();
                if (dev > kMatrixTol) throw MathError("matrix element violates unitarity by " + std::to_string(dev));
            } else if (family_ == MatrixFamily::SpecialOrthogonal) {
                if (m.imag().norm() > kMatrixTol) throw MathError("orthogonal element must be real");
                double dev = (m.transpose() * m - Eigen::MatrixXcd::Identity(dim_, dim_)).norm();
                if (dev > kMatrixTol) throw MathError("matrix element violates orthogonality by " + std::to_string(dev));
                if (std::abs(m.determinant().real() - 1.0) > 1e-8) throw MathError("orthogonal element must have det 1");
            } else {
                Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
                if (!lu.isInvertible()) throw MathError("matrix element is singular");
            }
            return;
        }
        case GroupKind::Product: {
            const auto& t = a.as_tuple();
            if (t.size() != factors_.size()) throw MathError("product element arity mismatch");
            for (size_t i = 0; i < t.size(); ++i) factors_[i].check_member(t[i]);
            return;
        }
    }
}

GroupElement Group::sample(std::mt19937_64& rng) const {
    switch (kind_) {
        case GroupKind::Cyclic: {
            std::uniform_int_distribution<std::int64_t> d(0, order_ - 1);
            return GroupElement(d(rng));
        }
        case GroupKind::Integers: {
            std::uniform_int_distribution<std::int64_t> d(-10, 10);
            return GroupElement(d(rng));
        }
        case GroupKind::Circle: {
            std::uniform_real_distribution<double> d(0.0, 1.0);
            return GroupElement(mod_one(d(rng)));
        }
        case GroupKind::Matrix: {
            std::normal_distribution<double> d(0.0, 1.0);
            if (family_ == MatrixFamily::SpecialOrthogonal) {
                Eigen::MatrixXd x(dim_, dim_);
                for (int i = 0; i < dim_; ++i)
                    for (int j = 0; j < dim_; ++j) x(i, j) = d(rng);
                Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
                Eigen::MatrixXd q = qr.householderQ();
                if (q.determinant() < 0) q.col(0) *= -1.0;
                return GroupElement(Eigen::MatrixXcd(q.cast<complexd>()));
            }
            if (family_ == MatrixFamily::Unitary) {
                Eigen::MatrixXcd x(dim_, dim_);
                for (int i = 0; i < dim_; ++i)
                    for (int j = 0; j < dim_; ++j) x(i, j) = complexd(d(rng), d(rng));
                Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x);
                Eigen::MatrixXcd q = qr.householderQ();
                // fix phases so det is 1: keeps samples inside SU(dim) too
                complexd det = q.determinant();
                q *= std::pow(det, -1.0 / dim_);
                return GroupElement(q.eval());
            }
            Eigen::MatrixXcd x(dim_, dim_);
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j) x(i, j) = complexd(d(rng), d(rng));
            x += 3.0 * Eigen::MatrixXcd::Identity(dim_, dim_);  // keep comfortably invertible
            return GroupElement(x);
        }
        case GroupKind::Product: {
            std::vector<GroupElement> t;
            t.reserve(factors_.size());
            for (const Group& f : factors_) t.push_back(f.sample(rng));
            return GroupElement(std::move(t));
        }
    }
    throw MathError("sample(): bad kind");
}

std::vector<GroupElement> Group::elements() const {
    if (!finite()) throw MathError("elements(): group is not finite");
    if (kind_ == GroupKind::Cyclic) {
        std::vector<GroupElement> out;
        for (std::int64_t k = 0; k < order_; ++k) out.push_back(GroupElement(k));
        return out;
    }
    // product of finite groups: odometer over factors
    std::vector<std::vector<GroupElement>> per;
    for (const Group& f : factors_) per.push_back(f.elements());
    std::vector<GroupElement> out;
    std::vector<size_t> idx(per.size(), 0);
    for (;;) {
        std::vector<GroupElement> t;
        for (size_t i = 0; i < per.size(); ++i) t.push_back(per[i][idx[i]]);
        out.push_back(GroupElement(std::move(t)));
        size_t i = per.size();
        while (i > 0) {
            --i;
            if (++idx[i] < per[i].size()) break;
            idx[i] = 0;
            if (i == 0) return out;
        }
    }
}

bool Group::has_algebra() const {
    switch (kind_) {
        case GroupKind::Circle:
        case GroupKind::Matrix:
            return true;
        case GroupKind::Product:
            for (const Group& f : factors_)
                if (f.has_algebra()) return true;
            return false;
        default:
            return false;
    }
}

AlgebraElement Group::algebra_zero() const {
    switch (kind_) {
        case GroupKind::Circle:
            return AlgebraElement(0.0);
        case GroupKind::Matrix:
            return AlgebraElement(Eigen::MatrixXcd::Zero(dim_, dim_).eval());
        case GroupKind::Product: {
            std::vector<AlgebraElement> t;
            t.reserve(factors_.size());
            for (const Group& f : factors_) t.push_back(f.algebra_zero());
            return AlgebraElement(std::move(t));
        }
        default:
            return AlgebraElement();  // trivial algebra
    }
}

AlgebraElement Group::algebra_add(const AlgebraElement& a, const AlgebraElement& b) const {
    switch (kind_) {
        case GroupKind::Circle:
            return AlgebraElement(a.as_real() + b.as_real());
        case GroupKind::Matrix:
            return AlgebraElement((a.as_matrix() + b.as_matrix()).eval());
        case GroupKind::Product: {
            const auto& ta = a.as_tuple();
            const auto& tb = b.as_tuple();
            std::vector<AlgebraElement> out;
            out.reserve(ta.size());
            for (size_t i = 0; i < ta.size(); ++i) out.push_back(factors_[i].algebra_add(ta[i], tb[i]));
            return AlgebraElement(std::move(out));
        }
        default:
            return AlgebraElement();
    }
}

AlgebraElement Group::algebra_sub(const AlgebraElement& a, const AlgebraElement& b) const {
    return algebra_add(a, algebra_scale(-1.0, b));
}

AlgebraElement Group::algebra_scale(double s, const AlgebraElement& a) const {
    switch (kind_) {
        case GroupKind::Circle:
            return AlgebraElement(s * a.as_real());
        case GroupKind::Matrix:
            return AlgebraElement((s * a.as_matrix()).eval());
        case GroupKind::Product: {
            const auto& t = a.as_tuple();
            std::vector<AlgebraElement> out;
            out.reserve(t.size());
            for (size_t i = 0; i < t.size(); ++i) out.push_back(factors_[i].algebra_scale(s, t[i]));
            return AlgebraElement(std::move(out));
        }
        default:
            return AlgebraElement();
    }
}

AlgebraElement Group::algebra_bracket(const AlgebraElement& a, const AlgebraElement& b) const {
    switch (kind_) {
        case GroupKind::Circle:
            return AlgebraElement(0.0);
        case GroupKind::Matrix:
            return AlgebraElement((a.as_matrix() * b.as_matrix() - b.as_matrix() * a.as_matrix()).eval());
        case GroupKind::Product: {
            const auto& ta = a.as_tuple();
            const auto& tb = b.as_tuple();
            std::vector<AlgebraElement> out;
            out.reserve(ta.size());
            for (size_t i = 0; i < ta.size(); ++i) out.push_back(factors_[i].algebra_bracket(ta[i], tb[i]));
            return AlgebraElement(std::move(out));
        }
        default:
            return AlgebraElement();
    }
}

double Group::algebra_norm(const AlgebraElement& a) const {
    switch (kind_) {
        case GroupKind::Circle:
            return std::abs(a.as_real());
        case GroupKind::Matrix:
            return a.as_matrix().norm();
        case GroupKind::Product: {
            const auto& t = a.as_tuple();
            double n = 0.0;
            for (size_t i = 0; i < t.size(); ++i) n = std::max(n, factors_[i].algebra_norm(t[i]));
            return n;
        }
        default:
            return 0.0;
    }
}

void Group::check_algebra_member(const AlgebraElement& a) const {
    switch (kind_) {
        case GroupKind::Circle:
            if (!std::isfinite(a.as_real())) throw MathError("circle algebra value not finite");
            return;
        case GroupKind::Matrix: {
            const Eigen::MatrixXcd& m = a.as_matrix();
            if (m.rows() != dim_ || m.cols() != dim_) throw MathError("algebra element dimension mismatch");
            if (family_ == MatrixFamily::Unitary) {
                if ((m + m.adjoint()).norm() > kMatrixTol) throw MathError("algebra element is not skew-hermitian");
            } else if (family_ == MatrixFamily::SpecialOrthogonal) {
                if (m.imag().norm() > kMatrixTol) throw MathError("orthogonal algebra element must be real");
                if ((m + m.transpose()).norm() > kMatrixTol) throw MathError("algebra element is not skew-symmetric");
            }
            return;
        }
        case GroupKind::Product: {
            const auto& t = a.as_tuple();
            if (t.size() != factors_.size()) throw MathError("product algebra arity mismatch");
            for (size_t i = 0; i < t.size(); ++i) factors_[i].check_algebra_member(t[i]);
            return;
        }
        default:
            if (!a.trivial()) throw MathError("discrete group has trivial algebra");
            return;
    }
}

AlgebraElement Group::algebra_sample(std::mt19937_64& rng, double scale) const {
    std::normal_distribution<double> d(0.0, scale);
    switch (kind_) {
        case GroupKind::Circle:
            return AlgebraElement(d(rng));
        case GroupKind::Matrix: {
            Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(dim_, dim_);
            if (family_ == MatrixFamily::Unitary) {
                for (int i = 0; i < dim_; ++i) {
                    x(i, i) = complexd(0.0, d(rng));
                    for (int j = i + 1; j < dim_; ++j) {
                        complexd z(d(rng), d(rng));
                        x(i, j) = z;
                        x(j, i) = -std::conj(z);
                    }
                }
            } else if (family_ == MatrixFamily::SpecialOrthogonal) {
                for (int i = 0; i < dim_; ++i)
                    for (int j = i + 1; j < dim_; ++j) {
                        double z = d(rng);
                        x(i, j) = z;
                        x(j, i) = -z;
                    }
            } else {
                for (int i = 0; i < dim_; ++i)
                    for (int j = 0; j < dim_; ++j) x(i, j) = complexd(d(rng), d(rng));
            }
            return AlgebraElement(x);
        }
        case GroupKind::Product: {
            std::vector<AlgebraElement> t;
            t.reserve(factors_.size());
            for (const Group& f : factors_) t.push_back(f.algebra_sample(rng, scale));
            return AlgebraElement(std::move(t));
        }
        default:
            return AlgebraElement();
    }
}

int Group::algebra_dim() const {
    switch (kind_) {
        case GroupKind::Circle:
            return 1;
        case GroupKind::Matrix:
            if (family_ == MatrixFamily::Unitary) return dim_ * dim_;
            if (family_ == MatrixFamily::SpecialOrthogonal) return dim_ * (dim_ - 1) / 2;
            return 2 * dim_ * dim_;
        case GroupKind::Product: {
            int n = 0;
            for (const Group& f : factors_) n += f.algebra_dim();
            return n;
        }
        default:
            return 0;
    }
}

std::vector<AlgebraElement> Group::algebra_basis() const {
    std::vector<AlgebraElement> out;
    switch (kind_) {
        case GroupKind::Circle:
            out.push_back(AlgebraElement(1.0));
            return out;
        case GroupKind::Matrix: {
            if (family_ == MatrixFamily::Unitary) {
                for (int i = 0; i < dim_; ++i) {
                    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
                    m(i, i) = complexd(0, 1);
                    out.push_back(AlgebraElement(m));
                }
                for (int i = 0; i < dim_; ++i)
                    for (int j = i + 1; j < dim_; ++j) {
                        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
                        m(i, j) = 1;
                        m(j, i) = -1;
                        out.push_back(AlgebraElement(m));
                        m = Eigen::MatrixXcd::Zero(dim_, dim_);
                        m(i, j) = complexd(0, 1);
                        m(j, i) = complexd(0, 1);
                        out.push_back(AlgebraElement(m));
                    }
                return out;
            }
            if (family_ == MatrixFamily::SpecialOrthogonal) {
                for (int i = 0; i < dim_; ++i)
                    for (int j = i + 1; j < dim_; ++j) {
                        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
                        m(i, j) = 1;
                        m(j, i) = -1;
                        out.push_back(AlgebraElement(m));
                    }
                return out;
            }
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j) {
                    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
                    m(i, j) = 1;
                    out.push_back(AlgebraElement(m));
                    m(i, j) = complexd(0, 1);
                    out.push_back(AlgebraElement(m));
                }
            return out;
        }
        case GroupKind::Product: {
            for (size_t i = 0; i < factors_.size(); ++i) {
                for (const AlgebraElement& b : factors_[i].algebra_basis()) {
                    std::vector<AlgebraElement> t;
                    for (size_t j = 0; j < factors_.size(); ++j)
                        t.push_back(j == i ? b : factors_[j].algebra_zero());
                    out.push_back(AlgebraElement(std::move(t)));
                }
            }
            return out;
        }
        default:
            return out;
    }
}

AlgebraElement Group::ad(const GroupElement& g, const AlgebraElement& x) const {
    switch (kind_) {
        case GroupKind::Circle:
            return x;  // abelian adjoint is the identity
        case GroupKind::Matrix:
            return AlgebraElement((g.as_matrix() * x.as_matrix() * inv(g).as_matrix()).eval());
        case GroupKind::Product: {
            const auto& tg = g.as_tuple();
            const auto& tx = x.as_tuple();
            std::vector<AlgebraElement> out;
            out.reserve(tg.size());
            for (size_t i = 0; i < tg.size(); ++i) out.push_back(factors_[i].ad(tg[i], tx[i]));
            return AlgebraElement(std::move(out));
        }
        case GroupKind::Cyclic:
        case GroupKind::Integers:
            throw MathError("adjoint is not defined for discrete kinds");
    }
    throw MathError("ad(): bad kind");
}

GroupElement Group::exp(const AlgebraElement& x) const {
    switch (kind_) {
        case GroupKind::Circle:
            return GroupElement(mod_one(x.as_real()));
        case GroupKind::Matrix:
            return GroupElement(Eigen::MatrixXcd(x.as_matrix().exp()));
        case GroupKind::Product: {
            const auto& t = x.as_tuple();
            std::vector<GroupElement> out;
            out.reserve(t.size());
            for (size_t i = 0; i < t.size(); ++i) out.push_back(factors_[i].exp(t[i]));
            return GroupElement(std::move(out));
        }
        default:
            if (!x.trivial()) throw MathError("exp: discrete group has trivial algebra");
            return identity();
    }
}

AlgebraElement Group::log(const GroupElement& g) const {
    switch (kind_) {
        case GroupKind::Circle: {
            double x = mod_one(g.as_real());
            if (circle_distance(x, 0.5) < 1e-12)
                throw BranchCutError("circle log at the half-turn branch cut");
            return AlgebraElement(x > 0.5 ? x - 1.0 : x);
        }
        case GroupKind::Matrix: {
            // principal branch via eigendecomposition; unitary and
            // orthogonal elements are normal so this is stable
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g.as_matrix());
            if (es.info() != Eigen::Success) throw MathError("matrix log: eigendecomposition failed");
            Eigen::VectorXcd lam = es.eigenvalues();
            Eigen::MatrixXcd vec = es.eigenvectors();
            Eigen::VectorXcd loglam(lam.size());
            for (int i = 0; i < lam.size(); ++i) {
                complexd l = lam(i);
                if (std::abs(l) < 1e-14) throw MathError("matrix log of a singular element");
                double arg = std::arg(l);
                if (std::abs(std::abs(arg) - M_PI) < 1e-9)
                    throw BranchCutError("matrix log: eigenvalue on the negative real axis");
                loglam(i) = std::log(l);
            }
            Eigen::MatrixXcd inv_vec;
            {
                Eigen::FullPivLU<Eigen::MatrixXcd> lu(vec);
                if (!lu.isInvertible()) throw MathError("matrix log: defective element");
                inv_vec = lu.inverse();
            }
            Eigen::MatrixXcd out = vec * loglam.asDiagonal() * inv_vec;
            double recon = (vec * lam.asDiagonal() * inv_vec - g.as_matrix()).norm();
            if (recon > 1e-8) throw MathError("matrix log: eigendecomposition reconstruction error");
            if (family_ == MatrixFamily::Unitary) out = 0.5 * (out - out.adjoint().eval());
            if (family_ == MatrixFamily::SpecialOrthogonal)
                out = 0.5 * (out.real() - out.real().transpose().eval()).cast<complexd>();
            return AlgebraElement(out);
        }
        case GroupKind::Product: {
            const auto& t = g.as_tuple();
            std::vector<AlgebraElement> out;
            out.reserve(t.size());
            for (size_t i = 0; i < t.size(); ++i) out.push_back(factors_[i].log(t[i]));
            return AlgebraElement(std::move(out));
        }
        default:
            if (!is_identity(g)) throw MathError("log of a non-identity discrete element");
            return AlgebraElement();
    }
}

}  // namespace glift::groups
