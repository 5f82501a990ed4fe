#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace glift::groups {

enum class GroupKind { Cyclic, Integers, Circle, Matrix, Product };
enum class MatrixFamily { Unitary, SpecialOrthogonal, Invertible };

// Tolerances fixed by contract: discrete kinds are exact, the circle snaps
// within 1e-9, matrix kinds within 1e-10.
inline constexpr double kCircleTol = 1e-9;
inline constexpr double kMatrixTol = 1e-10;

struct GroupElement {
    std::variant<long long, double, Eigen::MatrixXcd, std::vector<GroupElement>> v;

    GroupElement() : v(0LL) {}
    explicit GroupElement(long long n) : v(n) {}
    explicit GroupElement(long n) : v(static_cast<long long>(n)) {}
    explicit GroupElement(int n) : v(static_cast<long long>(n)) {}
    explicit GroupElement(double x) : v(x) {}
    explicit GroupElement(Eigen::MatrixXcd m) : v(std::move(m)) {}
    explicit GroupElement(std::vector<GroupElement> t) : v(std::move(t)) {}

    long long as_int() const { return std::get<long long>(v); }
    double as_real() const { return std::get<double>(v); }
    const Eigen::MatrixXcd& as_matrix() const { return std::get<Eigen::MatrixXcd>(v); }
    const std::vector<GroupElement>& as_tuple() const { return std::get<std::vector<GroupElement>>(v); }
};

// Lie algebra values; monostate is the zero algebra of a discrete factor.
struct AlgebraElement {
    std::variant<std::monostate, double, Eigen::MatrixXcd, std::vector<AlgebraElement>> v;

    AlgebraElement() : v(std::monostate{}) {}
    explicit AlgebraElement(double x) : v(x) {}
    explicit AlgebraElement(Eigen::MatrixXcd m) : v(std::move(m)) {}
    explicit AlgebraElement(std::vector<AlgebraElement> t) : v(std::move(t)) {}

    bool trivial() const { return std::holds_alternative<std::monostate>(v); }
    double as_real() const { return std::get<double>(v); }
    const Eigen::MatrixXcd& as_matrix() const { return std::get<Eigen::MatrixXcd>(v); }
    const std::vector<AlgebraElement>& as_tuple() const { return std::get<std::vector<AlgebraElement>>(v); }
};

class Group {
public:
    Group() = default;  // the trivial group Z/1
    static Group cyclic(std::int64_t order);
    static Group integers();
    static Group circle();
    static Group matrix(MatrixFamily family, int dim);
    static Group unitary(int dim) { return matrix(MatrixFamily::Unitary, dim); }
    static Group special_orthogonal(int dim) { return matrix(MatrixFamily::SpecialOrthogonal, dim); }
    static Group product(std::vector<Group> factors);
    static Group trivial() { return cyclic(1); }

    GroupKind kind() const { return kind_; }
    bool abelian() const;
    bool discrete() const;  // cyclic / integers / product of such
    bool finite() const;
    std::int64_t order() const;  // Cyclic only
    int matrix_dim() const { return dim_; }
    MatrixFamily matrix_family() const { return family_; }
    const std::vector<Group>& factors() const { return factors_; }
    bool same_as(const Group& other) const;
    std::string describe() const;

    GroupElement identity() const;
    GroupElement mul(const GroupElement& a, const GroupElement& b) const;
    GroupElement inv(const GroupElement& a) const;
    GroupElement pow(const GroupElement& a, std::int64_t n) const;
    // Canonical representative: cyclic in [0, order), circle in [0, 1).
    GroupElement canonical(const GroupElement& a) const;
    bool equal(const GroupElement& a, const GroupElement& b) const;
    bool equal(const GroupElement& a, const GroupElement& b, double tol) const;
    // Distance used by equality: 0 for equal discrete values, circular
    // distance on the circle, Frobenius distance for matrices, max over
    // factors for products.
    double distance(const GroupElement& a, const GroupElement& b) const;
    bool is_identity(const GroupElement& a) const { return equal(a, identity()); }
    // Throws MathError if the value violates the defining property.
    void check_member(const GroupElement& a) const;
    GroupElement sample(std::mt19937_64& rng) const;
    // All elements of a finite group, canonical order.
    std::vector<GroupElement> elements() const;

    bool has_algebra() const;
    AlgebraElement algebra_zero() const;
    AlgebraElement algebra_add(const AlgebraElement& a, const AlgebraElement& b) const;
    AlgebraElement algebra_sub(const AlgebraElement& a, const AlgebraElement& b) const;
    AlgebraElement algebra_scale(double s, const AlgebraElement& a) const;
    AlgebraElement algebra_bracket(const AlgebraElement& a, const AlgebraElement& b) const;
    double algebra_norm(const AlgebraElement& a) const;
    void check_algebra_member(const AlgebraElement& a) const;
    AlgebraElement algebra_sample(std::mt19937_64& rng, double scale) const;
    // Dimension of the algebra as a real vector space.
    int algebra_dim() const;
    std::vector<AlgebraElement> algebra_basis() const;

    // Adjoint action Ad(g) x = g x g^-1 (identity map for abelian kinds).
    AlgebraElement ad(const GroupElement& g, const AlgebraElement& x) const;
    GroupElement exp(const AlgebraElement& x) const;
    // Principal branch; throws BranchCutError near the cut.
    AlgebraElement log(const GroupElement& g) const;

private:
    GroupKind kind_ = GroupKind::Cyclic;
    std::int64_t order_ = 1;
    int dim_ = 0;
    MatrixFamily family_ = MatrixFamily::Unitary;
    std::vector<Group> factors_;
};

double mod_one(double x);  // representative in [0, 1)
double circle_distance(double a, double b);

}  // namespace glift::groups
