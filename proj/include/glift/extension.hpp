#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "glift/group.hpp"

namespace glift::groups {

// Central extension 1 -> H -> G -> K -> 1 with a set-theoretic section of
// the projection. The section need not send the identity to the identity;
// nothing downstream may assume it does.
class Extension {
public:
    using ElementMap = std::function<GroupElement(const GroupElement&)>;
    using PartialMap = std::function<std::optional<GroupElement>(const GroupElement&)>;
    using AlgebraMap = std::function<AlgebraElement(const AlgebraElement&)>;

    Group H, G, K;

    GroupElement include(const GroupElement& h) const { return include_(h); }
    GroupElement project(const GroupElement& g) const { return project_(g); }
    GroupElement section(const GroupElement& k) const { return section_(k); }
    // Preimage under include; empty when g is not in include(H) within the
    // group tolerance.
    std::optional<GroupElement> retract(const GroupElement& g) const { return retract_(g); }

    const std::string& section_name() const { return section_name_; }
    const std::string& name() const { return name_; }

    // Samples the defining identities: project(include(h)) = e,
    // project(section(k)) = k, centrality of include(H), and the kernel
    // condition. Throws MathError on violation.
    void validate(std::mt19937_64& rng, int samples = 64) const;

    // Lie algebra data of the exact sequence: the derivative of project,
    // a linear section of it, the derivative of include, and the
    // complementary H-component. Present for the continuous families.
    bool has_algebra_splitting() const { return static_cast<bool>(alg_project_); }
    AlgebraElement algebra_project(const AlgebraElement& g) const { return alg_project_(g); }
    AlgebraElement algebra_section(const AlgebraElement& k) const { return alg_section_(k); }
    AlgebraElement algebra_include(const AlgebraElement& h) const { return alg_include_(h); }
    AlgebraElement algebra_h_part(const AlgebraElement& g) const { return alg_h_part_(g); }

    // Z/m -> Z/(m*n) -> Z/n: include multiplies by n, project reduces mod
    // n, section is the least nonnegative representative.
    static Extension cyclic(std::int64_t m, std::int64_t n);
    // Same with a section given by an explicit table on K.
    static Extension cyclic_with_table(std::int64_t m, std::int64_t n,
                                       const std::map<long long, long long>& table);
    // Z/2 -> circle -> circle with project = doubling; the principal
    // section is k -> k/2 on [0, 1).
    static Extension circle_squaring();
    // circle -> circle x circle -> circle, project = first factor.
    static Extension circle_by_circle();
    // Replace the section (the other maps are untouched).
    Extension with_section(ElementMap s, const std::string& section_name) const;

private:
    ElementMap include_, project_, section_;
    PartialMap retract_;
    AlgebraMap alg_project_, alg_section_, alg_include_, alg_h_part_;
    std::string section_name_ = "principal-branch";
    std::string name_;
};

}  // namespace glift::groups
