#include "glift/nerve.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "glift/errors.hpp"

namespace glift::geometry {

std::string simplex_name(const Simplex& s) {
    std::string out = "(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + ")";
}

Nerve::Nerve(int vertex_count, const std::vector<Simplex>& simplices) : vertex_count_(vertex_count) {
    if (vertex_count <= 0) throw SchemaError("nerve: vertex_count must be positive");
    std::set<Simplex> closed;
    for (int v = 0; v < vertex_count; ++v) closed.insert({v});
    for (const Simplex& s : simplices) {
        if (s.empty()) throw SchemaError("nerve: empty simplex");
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0 || s[i] >= vertex_count)
                throw SchemaError("nerve: vertex out of range in " + simplex_name(s));
            if (i && s[i] <= s[i - 1])
                throw SchemaError("nerve: simplex not strictly ascending: " + simplex_name(s));
        }
        // insert every nonempty subtuple (downward closure)
        const size_t n = s.size();
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            Simplex face;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) face.push_back(s[i]);
            closed.insert(std::move(face));
        }
    }
    size_t max_len = 1;
    for (const Simplex& s : closed) max_len = std::max(max_len, s.size());
    by_dim_.resize(max_len);
    for (const Simplex& s : closed) by_dim_[s.size() - 1].push_back(s);
    for (auto& level : by_dim_) std::sort(level.begin(), level.end());
    for (const auto& level : by_dim_)
        for (size_t i = 0; i < level.size(); ++i) index_[level[i]] = static_cast<int>(i);
}

const std::vector<Simplex>& Nerve::simplices(int dim) const {
    static const std::vector<Simplex> empty;
    if (dim < 0 || dim > dimension()) return empty;
    return by_dim_[dim];
}

bool Nerve::contains(const Simplex& s) const { return index_.count(s) > 0; }

int Nerve::index_of(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw SchemaError("nerve: unknown simplex " + simplex_name(s));
    return it->second;
}

long long Nerve::euler_characteristic() const {
    long long chi = 0;
    for (int d = 0; d <= dimension(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(count(d));
    return chi;
}

std::vector<Simplex> Nerve::maximal_simplices() const {
    std::vector<Simplex> out;
    for (int d = 0; d <= dimension(); ++d) {
        for (const Simplex& s : simplices(d)) {
            bool covered = false;
            // s is non-maximal iff some coface (s plus one vertex) is present
            for (int v = 0; v < vertex_count_ && !covered; ++v) {
                if (std::binary_search(s.begin(), s.end(), v)) continue;
                Simplex bigger = s;
                bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), v), v);
                covered = contains(bigger);
            }
            if (!covered) out.push_back(s);
        }
    }
    return out;
}

namespace {

NervePtr make_circle3() {
    return std::make_shared<Nerve>(3, std::vector<Simplex>{{0, 1}, {0, 2}, {1, 2}});
}

NervePtr make_sphere4() {
    return std::make_shared<Nerve>(4, std::vector<Simplex>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

// Six-vertex projective plane (antipodal quotient of the icosahedron).
NervePtr make_rp2_6() {
    std::vector<Simplex> faces = {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
                                  {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}};
    return std::make_shared<Nerve>(6, faces);
}

// 3x3 grid torus with diagonals, vertex (i,j) -> 3i+j.
NervePtr make_torus9() {
    auto v = [](int i, int j) { return 3 * ((i % 3 + 3) % 3) + ((j % 3 + 3) % 3); };
    std::vector<Simplex> faces;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Simplex a = {v(i, j), v(i + 1, j), v(i + 1, j + 1)};
            Simplex b = {v(i, j), v(i, j + 1), v(i + 1, j + 1)};
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            faces.push_back(a);
            faces.push_back(b);
        }
    return std::make_shared<Nerve>(9, faces);
}

// Real projective 3-space as the antipodal quotient of the barycentric
// subdivision of the 16-cell boundary. Vertices are antipodal classes of
// proper faces (40 of them); facets are antipodal classes of full flags
// (192 tetrahedra). A flag and its negative never share a vertex class, so
// the quotient is again simplicial.
NervePtr make_rp3_40() {
    // faces of the cross-polytope: subsets of {+-e0..+-e3} without an
    // antipodal pair, encoded as sorted lists of vertex codes 2*axis+sign
    auto negate_face = [](const std::vector<int>& f) {
        std::vector<int> g;
        for (int v : f) g.push_back(v ^ 1);
        std::sort(g.begin(), g.end());
        return g;
    };
    std::vector<std::vector<int>> faces;
    for (unsigned mask = 1; mask < 256; ++mask) {
        bool ok = true;
        std::vector<int> f;
        for (int axis = 0; axis < 4 && ok; ++axis) {
            bool plus = mask & (1u << (2 * axis)), minus = mask & (1u << (2 * axis + 1));
            if (plus && minus) ok = false;
            if (plus) f.push_back(2 * axis);
            if (minus) f.push_back(2 * axis + 1);
        }
        if (ok && !f.empty()) faces.push_back(f);
    }
    // antipodal classes, represented by the lexicographically smaller face
    std::map<std::vector<int>, int> class_of;
    {
        std::set<std::vector<int>> reps;
        for (const auto& f : faces) reps.insert(std::min(f, negate_face(f)));
        int id = 0;
        for (const auto& r : reps) {
            class_of[r] = id;
            class_of[negate_face(r)] = id;
            ++id;
        }
    }
    // full flags F1 < F2 < F3 < F4 inside each facet
    std::set<Simplex> tetra;
    for (const auto& f : faces) {
        if (f.size() != 4) continue;
        std::array<int, 4> perm = {0, 1, 2, 3};
        std::sort(perm.begin(), perm.end());
        do {
            std::vector<int> chain;
            Simplex t;
            for (int k = 0; k < 4; ++k) {
                chain.push_back(f[perm[k]]);
                std::sort(chain.begin(), chain.end());
                t.push_back(class_of.at(chain));
            }
            std::sort(t.begin(), t.end());
            tetra.insert(t);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return std::make_shared<Nerve>(40, std::vector<Simplex>(tetra.begin(), tetra.end()));
}

}  // namespace

NervePtr builtin_nerve(const std::string& name) {
    if (name == "circle3") return make_circle3();
    if (name == "sphere4") return make_sphere4();
    if (name == "rp2_6") return make_rp2_6();
    if (name == "torus9") return make_torus9();
    if (name == "rp3_40") return make_rp3_40();
    throw SchemaError("unknown nerve catalog key: " + name);
}

std::vector<std::string> builtin_nerve_names() { return {"circle3", "sphere4", "rp2_6", "torus9", "rp3_40"}; }

}  // namespace glift::geometry
