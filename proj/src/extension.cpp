#include "glift/extension.hpp"

#include <cmath>

#include "glift/errors.hpp"
#include "glift/snf.hpp"

namespace glift::groups {

void Extension::validate(std::mt19937_64& rng, int samples) const {
    for (int s = 0; s < samples; ++s) {
        GroupElement h = H.sample(rng);
        GroupElement g = G.sample(rng);
        GroupElement k = K.sample(rng);
        if (!K.is_identity(project(include(h))))
            throw MathError("extension " + name_ + ": project(include(h)) != e");
        if (!K.equal(project(section(k)), K.canonical(k)))
            throw MathError("extension " + name_ + ": project(section(k)) != k");
        // centrality of include(H) in G
        GroupElement ih = include(h);
        if (!G.equal(G.mul(ih, g), G.mul(g, ih)))
            throw MathError("extension " + name_ + ": include(H) is not central");
        // kernel condition on a random fiber point
        GroupElement fiber = G.mul(section(k), ih);
        GroupElement back = project(fiber);
        if (!K.equal(back, K.canonical(k))) throw MathError("extension " + name_ + ": fiber projection mismatch");
        if (!retract(ih).has_value()) throw MathError("extension " + name_ + ": retract misses include(H)");
        // an element with nontrivial projection must not retract
        if (!K.is_identity(K.canonical(k)) && retract(fiber).has_value())
            throw MathError("extension " + name_ + ": retract accepts an element outside the kernel");
    }
}

Extension Extension::cyclic(std::int64_t m, std::int64_t n) {
    std::map<long long, long long> table;
    for (std::int64_t k = 0; k < n; ++k) table[k] = k;
    Extension e = cyclic_with_table(m, n, table);
    e.section_name_ = "principal-branch";
    return e;
}

Extension Extension::cyclic_with_table(std::int64_t m, std::int64_t n,
                                       const std::map<long long, long long>& table) {
    Extension e;
    e.H = Group::cyclic(m);
    e.G = Group::cyclic(snf::checked_mul(m, n));
    e.K = Group::cyclic(n);
    e.name_ = "Z/" + std::to_string(m) + " -> Z/" + std::to_string(m * n) + " -> Z/" + std::to_string(n);
    const std::int64_t order_g = m * n;
    e.include_ = [n, order_g](const GroupElement& h) {
        return GroupElement(snf::mod_floor(h.as_int() * n, order_g));
    };
    e.project_ = [n](const GroupElement& g) { return GroupElement(snf::mod_floor(g.as_int(), n)); };
    for (const auto& [k, g] : table) {
        if (snf::mod_floor(g, n) != snf::mod_floor(k, n))
            throw SchemaError("section table entry " + std::to_string(k) + " -> " + std::to_string(g) +
                              " is not a section");
    }
    if (static_cast<std::int64_t>(table.size()) != n) throw SchemaError("section table must cover all of K");
    e.section_ = [table, n](const GroupElement& k) {
        return GroupElement(table.at(snf::mod_floor(k.as_int(), n)));
    };
    e.retract_ = [m, n, order_g](const GroupElement& g) -> std::optional<GroupElement> {
        std::int64_t v = snf::mod_floor(g.as_int(), order_g);
        if (v % n != 0) return std::nullopt;
        return GroupElement(snf::mod_floor(v / n, m));
    };
    e.section_name_ = "table";
    return e;
}

Extension Extension::circle_squaring() {
    Extension e;
    e.H = Group::cyclic(2);
    e.G = Group::circle();
    e.K = Group::circle();
    e.name_ = "Z/2 -> circle -> circle (doubling)";
    e.include_ = [](const GroupElement& h) { return GroupElement(snf::mod_floor(h.as_int(), 2) == 0 ? 0.0 : 0.5); };
    e.project_ = [](const GroupElement& g) { return GroupElement(mod_one(2.0 * g.as_real())); };
    e.section_ = [](const GroupElement& k) { return GroupElement(mod_one(k.as_real()) / 2.0); };
    e.retract_ = [](const GroupElement& g) -> std::optional<GroupElement> {
        double x = mod_one(g.as_real());
        if (circle_distance(x, 0.0) <= kCircleTol) return GroupElement(std::int64_t{0});
        if (circle_distance(x, 0.5) <= kCircleTol) return GroupElement(std::int64_t{1});
        return std::nullopt;
    };
    // H is discrete: its contribution to the algebra is zero and the
    // algebra of G maps isomorphically onto the algebra of K (times 2).
    e.alg_project_ = [](const AlgebraElement& x) { return AlgebraElement(2.0 * x.as_real()); };
    e.alg_section_ = [](const AlgebraElement& x) { return AlgebraElement(x.as_real() / 2.0); };
    e.alg_include_ = [](const AlgebraElement&) { return AlgebraElement(0.0); };
    e.alg_h_part_ = [](const AlgebraElement&) { return AlgebraElement(); };
    return e;
}

Extension Extension::circle_by_circle() {
    Extension e;
    e.H = Group::circle();
    e.K = Group::circle();
    e.G = Group::product({Group::circle(), Group::circle()});
    e.name_ = "circle -> circle x circle -> circle (first factor)";
    e.include_ = [](const GroupElement& h) {
        return GroupElement(std::vector<GroupElement>{GroupElement(0.0), GroupElement(mod_one(h.as_real()))});
    };
    e.project_ = [](const GroupElement& g) { return g.as_tuple()[0]; };
    e.section_ = [](const GroupElement& k) {
        return GroupElement(std::vector<GroupElement>{GroupElement(mod_one(k.as_real())), GroupElement(0.0)});
    };
    e.retract_ = [](const GroupElement& g) -> std::optional<GroupElement> {
        const auto& t = g.as_tuple();
        if (circle_distance(t[0].as_real(), 0.0) > kCircleTol) return std::nullopt;
        return GroupElement(mod_one(t[1].as_real()));
    };
    e.alg_project_ = [](const AlgebraElement& x) { return x.as_tuple()[0]; };
    e.alg_section_ = [](const AlgebraElement& x) {
        return AlgebraElement(std::vector<AlgebraElement>{x, AlgebraElement(0.0)});
    };
    e.alg_include_ = [](const AlgebraElement& h) {
        return AlgebraElement(std::vector<AlgebraElement>{AlgebraElement(0.0), h});
    };
    e.alg_h_part_ = [](const AlgebraElement& x) { return x.as_tuple()[1]; };
    return e;
}

Extension Extension::with_section(ElementMap s, const std::string& section_name) const {
    Extension e = *this;
    e.section_ = std::move(s);
    e.section_name_ = section_name;
    return e;
}

}  // namespace glift::groups
