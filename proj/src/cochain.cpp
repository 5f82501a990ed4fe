#include "glift/cochain.hpp"

#include <algorithm>

#include "glift/errors.hpp"

namespace glift::cech {

Cochain::Cochain(NervePtr nerve, int degree, Group group, int samples)
    : nerve_(std::move(nerve)), degree_(degree), group_(std::move(group)), samples_(samples) {
    if (degree_ < 0) throw SchemaError("cochain degree must be nonnegative");
    if (samples_ < 1) throw SchemaError("cochain needs at least one sample");
    std::vector<GroupElement> id(samples_, group_.identity());
    for (const Simplex& s : nerve_->simplices(degree_)) values_[s] = id;
}

Cochain Cochain::identity(NervePtr nerve, int degree, Group group, int samples) {
    return Cochain(std::move(nerve), degree, std::move(group), samples);
}

void Cochain::set(const Simplex& s, GroupElement value, int sample) {
    auto it = values_.find(s);
    if (it == values_.end()) throw SchemaError("cochain: " + geometry::simplex_name(s) + " is not a simplex of degree " +
                                               std::to_string(degree_));
    it->second.at(sample) = group_.canonical(value);
}

void Cochain::set_all_samples(const Simplex& s, const std::vector<GroupElement>& values) {
    if (static_cast<int>(values.size()) != samples_) throw SchemaError("cochain: sample count mismatch");
    auto it = values_.find(s);
    if (it == values_.end()) throw SchemaError("cochain: " + geometry::simplex_name(s) + " is not a simplex");
    for (int i = 0; i < samples_; ++i) it->second[i] = group_.canonical(values[i]);
}

const GroupElement& Cochain::stored(const Simplex& s, int sample) const {
    auto it = values_.find(s);
    if (it == values_.end())
        throw SchemaError("cochain: " + geometry::simplex_name(s) + " is not a simplex of degree " +
                          std::to_string(degree_));
    return it->second.at(sample);
}

GroupElement Cochain::value(const Simplex& tuple, int sample) const {
    if (static_cast<int>(tuple.size()) != degree_ + 1) throw SchemaError("cochain: tuple arity mismatch");
    // sort and track permutation sign
    Simplex sorted = tuple;
    int sign = 1;
    for (size_t i = 0; i < sorted.size(); ++i)
        for (size_t j = i + 1; j < sorted.size(); ++j)
            if (sorted[i] > sorted[j]) {
                std::swap(sorted[i], sorted[j]);
                sign = -sign;
            }
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) return group_.identity();  // degenerate tuple
    const GroupElement& v = stored(sorted, sample);
    if (sign == 1) return v;
    if (!group_.abelian() && degree_ != 1)
        throw MathError("non-ascending lookup needs an abelian group beyond degree 1");
    return group_.inv(v);
}

bool Cochain::values_equal(const Cochain& other) const { return max_distance(other) == 0.0; }

double Cochain::max_distance(const Cochain& other) const {
    if (degree_ != other.degree_ || samples_ != other.samples_ || !group_.same_as(other.group_))
        throw MathError("cochain comparison shape mismatch");
    double d = 0.0;
    for (const auto& [s, vals] : values_)
        for (int i = 0; i < samples_; ++i) d = std::max(d, group_.distance(vals[i], other.stored(s, i)));
    return d;
}

bool Cochain::is_identity_cochain() const {
    GroupElement e = group_.identity();
    for (const auto& [s, vals] : values_)
        for (const GroupElement& v : vals)
            if (!group_.equal(v, e)) return false;
    return true;
}

double Cochain::max_sample_variation() const {
    double d = 0.0;
    for (const auto& [s, vals] : values_)
        for (int i = 1; i < samples_; ++i) d = std::max(d, group_.distance(vals[i], vals[i - 1]));
    return d;
}

Cochain Cochain::map_values(const Group& target, const std::function<GroupElement(const GroupElement&)>& f) const {
    Cochain out(nerve_, degree_, target, samples_);
    for (const auto& [s, vals] : values_)
        for (int i = 0; i < samples_; ++i) out.set(s, f(vals[i]), i);
    return out;
}

Cochain coboundary(const Cochain& c) {
    const Group& g = c.group();
    const int n = c.degree();
    if (!g.abelian() && n >= 2) throw MathError("coboundary of a nonabelian cochain is defined only up to degree 1");
    if (!g.abelian() && n == 1) return nonabelian_deviation(c);
    Cochain out(c.nerve(), n + 1, g, c.samples());
    for (const Simplex& s : c.nerve()->simplices(n + 1)) {
        for (int sample = 0; sample < c.samples(); ++sample) {
            GroupElement acc = g.identity();
            if (!g.abelian()) {
                // degree 0, principal convention: (db)(i,j) = b(i) b(j)^-1
                acc = g.mul(c.value({s[0]}, sample), g.inv(c.value({s[1]}, sample)));
            } else {
                for (size_t k = 0; k < s.size(); ++k) {
                    Simplex face;
                    for (size_t i = 0; i < s.size(); ++i)
                        if (i != k) face.push_back(s[i]);
                    GroupElement v = c.value(face, sample);
                    acc = g.mul(acc, (k % 2 == 0) ? v : g.inv(v));
                }
            }
            out.set(s, acc, sample);
        }
    }
    return out;
}

Cochain nonabelian_deviation(const Cochain& g) {
    if (g.degree() != 1) throw MathError("nonabelian_deviation expects a degree-1 cochain");
    const Group& grp = g.group();
    Cochain out(g.nerve(), 2, grp, g.samples());
    for (const Simplex& s : g.nerve()->simplices(2)) {
        for (int sample = 0; sample < g.samples(); ++sample) {
            GroupElement t = grp.mul(grp.mul(g.value({s[0], s[1]}, sample), g.value({s[1], s[2]}, sample)),
                                     g.value({s[2], s[0]}, sample));
            out.set(s, t, sample);
        }
    }
    return out;
}

std::string CocycleReport::describe() const {
    if (ok) return "cocycle (max residual " + std::to_string(max_residual) + ")";
    return "not a cocycle: residual " + std::to_string(max_residual) + " at " + geometry::simplex_name(worst);
}

CocycleReport is_cocycle(const Cochain& c) {
    CocycleReport rep;
    const Group& g = c.group();
    Cochain delta = g.abelian() || c.degree() == 0 ? coboundary(c) : nonabelian_deviation(c);
    GroupElement e = g.identity();
    for (const Simplex& s : delta.nerve()->simplices(delta.degree())) {
        for (int sample = 0; sample < delta.samples(); ++sample) {
            double d = g.distance(delta.stored(s, sample), e);
            if (d > rep.max_residual) {
                rep.max_residual = d;
                rep.worst = s;
            }
        }
    }
    double tol = 0.0;
    if (!g.discrete()) tol = c.combinatorial() ? groups::kCircleTol : 1e-8;
    rep.ok = rep.max_residual <= tol;
    return rep;
}

}  // namespace glift::cech
