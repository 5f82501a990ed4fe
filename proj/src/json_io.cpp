#include "glift/json_io.hpp"

#include <sstream>

#include "glift/errors.hpp"

namespace glift::io {

using groups::Group;
using groups::GroupElement;
using groups::GroupKind;

void check_keys(const json& obj, const std::vector<std::string>& allowed, const std::string& context) {
    if (!obj.is_object()) throw SchemaError(context + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw SchemaError(context + ": unknown field \"" + it.key() + "\"");
    }
}

json nerve_to_json(const geometry::Nerve& nerve) {
    json simplices = json::array();
    for (const auto& s : nerve.maximal_simplices()) simplices.push_back(s);
    return json{{"vertices", nerve.vertex_count()}, {"simplices", simplices}};
}

geometry::NervePtr nerve_from_json(const json& j) {
    if (j.is_string()) return geometry::builtin_nerve(j.get<std::string>());
    check_keys(j, {"vertices", "simplices"}, "nerve");
    if (!j.contains("vertices") || !j.contains("simplices")) throw SchemaError("nerve: vertices and simplices required");
    std::vector<geometry::Simplex> simplices;
    for (const auto& s : j.at("simplices")) simplices.push_back(s.get<geometry::Simplex>());
    return std::make_shared<geometry::Nerve>(j.at("vertices").get<int>(), simplices);
}

json group_to_json(const Group& g) {
    switch (g.kind()) {
        case GroupKind::Cyclic:
            return json{{"kind", "cyclic"}, {"order", g.order()}};
        case GroupKind::Integers:
            return json{{"kind", "integers"}};
        case GroupKind::Circle:
            return json{{"kind", "circle"}};
        case GroupKind::Matrix: {
            const char* k = g.matrix_family() == groups::MatrixFamily::Unitary            ? "su"
                            : g.matrix_family() == groups::MatrixFamily::SpecialOrthogonal ? "so"
                                                                                            : "gl";
            return json{{"kind", k}, {"dim", g.matrix_dim()}};
        }
        case GroupKind::Product: {
            json factors = json::array();
            for (const Group& f : g.factors()) factors.push_back(group_to_json(f));
            return json{{"kind", "product"}, {"factors", factors}};
        }
    }
    throw SchemaError("group_to_json: bad kind");
}

Group group_from_json(const json& j) {
    check_keys(j, {"kind", "order", "dim", "factors"}, "group");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") return Group::cyclic(j.at("order").get<long long>());
    if (kind == "integers") return Group::integers();
    if (kind == "circle") return Group::circle();
    if (kind == "su") return Group::unitary(j.at("dim").get<int>());
    if (kind == "so") return Group::special_orthogonal(j.at("dim").get<int>());
    if (kind == "gl") return Group::matrix(groups::MatrixFamily::Invertible, j.at("dim").get<int>());
    if (kind == "product") {
        std::vector<Group> factors;
        for (const auto& f : j.at("factors")) factors.push_back(group_from_json(f));
        return Group::product(std::move(factors));
    }
    throw SchemaError("unknown group kind: " + kind);
}

json element_to_json(const Group& g, const GroupElement& v) {
    switch (g.kind()) {
        case GroupKind::Cyclic:
        case GroupKind::Integers:
            return json(v.as_int());
        case GroupKind::Circle:
            return json(v.as_real());
        case GroupKind::Matrix: {
            json rows = json::array();
            const Eigen::MatrixXcd& m = v.as_matrix();
            for (int r = 0; r < m.rows(); ++r) {
                json row = json::array();
                for (int c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
                rows.push_back(row);
            }
            return rows;
        }
        case GroupKind::Product: {
            json t = json::array();
            for (size_t i = 0; i < g.factors().size(); ++i)
                t.push_back(element_to_json(g.factors()[i], v.as_tuple()[i]));
            return t;
        }
    }
    throw SchemaError("element_to_json: bad kind");
}

GroupElement element_from_json(const Group& g, const json& j) {
    switch (g.kind()) {
        case GroupKind::Cyclic:
        case GroupKind::Integers:
            return GroupElement(j.get<long long>());
        case GroupKind::Circle:
            return GroupElement(j.get<double>());
        case GroupKind::Matrix: {
            int n = g.matrix_dim();
            Eigen::MatrixXcd m(n, n);
            if (static_cast<int>(j.size()) != n) throw SchemaError("matrix element row count mismatch");
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    m(r, c) = std::complex<double>(j.at(r).at(c).at(0).get<double>(),
                                                   j.at(r).at(c).at(1).get<double>());
            return GroupElement(m);
        }
        case GroupKind::Product: {
            std::vector<GroupElement> t;
            for (size_t i = 0; i < g.factors().size(); ++i)
                t.push_back(element_from_json(g.factors()[i], j.at(i)));
            return GroupElement(std::move(t));
        }
    }
    throw SchemaError("element_from_json: bad kind");
}

namespace {

std::string simplex_key(const geometry::Simplex& s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out;
}

geometry::Simplex parse_simplex_key(const std::string& key) {
    geometry::Simplex s;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) s.push_back(std::stoi(part));
    return s;
}

}  // namespace

json cochain_to_json(const cech::Cochain& c) {
    json values = json::object();
    for (const auto& s : c.nerve()->simplices(c.degree())) values[simplex_key(s)] = element_to_json(c.group(), c.stored(s));
    return json{{"degree", c.degree()}, {"group", group_to_json(c.group())}, {"values", values}};
}

cech::Cochain cochain_from_json(const geometry::NervePtr& nerve, const json& j) {
    check_keys(j, {"degree", "group", "values"}, "cochain");
    Group g = group_from_json(j.at("group"));
    cech::Cochain c(nerve, j.at("degree").get<int>(), g);
    if (j.contains("values")) {
        for (auto it = j.at("values").begin(); it != j.at("values").end(); ++it) {
            geometry::Simplex s = parse_simplex_key(it.key());
            c.set(s, element_from_json(g, it.value()));  // throws on unknown simplices
        }
    }
    return c;
}

json extension_to_json(const groups::Extension& e) {
    return json{{"H", group_to_json(e.H)},
                {"G", group_to_json(e.G)},
                {"K", group_to_json(e.K)},
                {"section", e.section_name()}};
}

groups::Extension extension_from_json(const json& j) {
    check_keys(j, {"H", "G", "K", "section", "table"}, "extension");
    Group h = group_from_json(j.at("H"));
    Group g = group_from_json(j.at("G"));
    Group k = group_from_json(j.at("K"));
    std::string section = j.value("section", std::string("principal-branch"));

    if (h.kind() == GroupKind::Cyclic && g.kind() == GroupKind::Cyclic && k.kind() == GroupKind::Cyclic) {
        if (g.order() != h.order() * k.order())
            throw SchemaError("cyclic extension needs |G| = |H|*|K|");
        if (section == "table") {
            std::map<long long, long long> table;
            for (auto it = j.at("table").begin(); it != j.at("table").end(); ++it)
                table[std::stoll(it.key())] = it.value().get<long long>();
            return groups::Extension::cyclic_with_table(h.order(), k.order(), table);
        }
        return groups::Extension::cyclic(h.order(), k.order());
    }
    if (h.kind() == GroupKind::Cyclic && h.order() == 2 && g.kind() == GroupKind::Circle &&
        k.kind() == GroupKind::Circle)
        return groups::Extension::circle_squaring();
    if (h.kind() == GroupKind::Circle && k.kind() == GroupKind::Circle && g.kind() == GroupKind::Product &&
        g.factors().size() == 2 && g.factors()[0].kind() == GroupKind::Circle &&
        g.factors()[1].kind() == GroupKind::Circle)
        return groups::Extension::circle_by_circle();
    throw SchemaError("unsupported extension family: " + h.describe() + " -> " + g.describe() + " -> " +
                      k.describe());
}

json obstruction_report_to_json(const lifting::ObstructionReport& rep) {
    json out{{"degree", rep.degree},
             {"cocycle", cochain_to_json(rep.cocycle)},
             {"cocycle_residual", rep.cocycle_check.max_residual},
             {"verdict", rep.verdict_name()},
             {"strictly_identity", rep.strictly_identity},
             {"class_coordinates", rep.class_coordinates},
             {"class_moduli", rep.class_moduli}};
    if (rep.witness) out["witness"] = cochain_to_json(*rep.witness);
    if (rep.certificate)
        out["certificate"] = json{{"reason", rep.certificate->reason},
                                  {"snf_index", rep.certificate->snf_index},
                                  {"residue", rep.certificate->residue}};
    return out;
}

std::string digest(const json& doc) {
    std::string dump = doc.dump();
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a-%016llx", h);
    return buf;
}

}  // namespace glift::io
