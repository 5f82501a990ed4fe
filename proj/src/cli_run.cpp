#include <cmath>

#include "glift/errors.hpp"
#include "glift/json_io.hpp"
#include "glift/lifted_connection.hpp"
#include "glift/transport.hpp"

namespace glift::cli {

using io::check_keys;
using io::json;
using namespace glift;

namespace {

constexpr const char* kToolVersion = "0.1.0";

geometry::GeometryPtr load_geometry(const json& doc) {
    int nu = 256, nv = 512;
    if (doc.contains("grid")) {
        nu = doc.at("grid").at(0).get<int>();
        nv = doc.at("grid").at(1).get<int>();
    }
    return geometry::builtin_geometry(doc.at("geometry").get<std::string>(), nu, nv);
}

conn::LocalConnection load_connection(const geometry::GeometryPtr& geom, const json& j) {
    check_keys(j, {"preset", "charge", "coeff_u", "coeff_v"}, "connection");
    std::string preset = j.at("preset").get<std::string>();
    if (preset == "monopole") return conn::monopole_connection(geom, j.at("charge").get<long long>());
    if (preset == "zero") return conn::zero_connection(geom, groups::Group::circle());
    if (preset == "flat")
        return conn::flat_torus_connection(geom, j.value("coeff_u", 0.0), j.value("coeff_v", 0.0));
    throw SchemaError("unknown connection preset: " + preset);
}

hol::PathSpec load_loop(const geometry::GeometryPtr& geom, const json& j) {
    check_keys(j, {"preset", "theta", "turns", "axis"}, "loop");
    std::string preset = j.at("preset").get<std::string>();
    if (preset == "latitude") return hol::latitude_loop(geom, j.at("theta").get<double>(), j.value("turns", 1));
    if (preset == "torus") return hol::torus_loop(geom, j.value("axis", 0), j.value("turns", 1));
    if (preset == "equator-cross") return hol::equator_crossing_loop(geom, j.at("theta").get<double>());
    throw SchemaError("unknown loop preset: " + preset);
}

json run_cohomology(const json& doc) {
    check_keys(doc, {"command", "seed", "budget", "nerve", "coeff", "degree"}, "cohomology document");
    auto nerve = io::nerve_from_json(doc.at("nerve"));
    groups::Group coeff = io::group_from_json(doc.at("coeff"));
    int degree = doc.at("degree").get<int>();
    cech::CohomologyGroup h = cech::cohomology(nerve, coeff, degree);
    json reps = json::array();
    for (const auto& r : h.representatives()) reps.push_back(io::cochain_to_json(r));
    return json{{"factors", h.invariant_factors()}, {"group", h.describe()}, {"representatives", reps}};
}

json run_obstruct(const json& doc) {
    check_keys(doc, {"command", "seed", "budget", "nerve", "extension", "cocycle"}, "obstruct document");
    auto nerve = io::nerve_from_json(doc.at("nerve"));
    groups::Extension ext = io::extension_from_json(doc.at("extension"));
    cech::Cochain k = io::cochain_from_json(nerve, doc.at("cocycle"));
    lifting::ObstructionReport rep = lifting::obstruction({nerve, ext, k});
    return json{{"report", io::obstruction_report_to_json(rep)}};
}

json run_tower(const json& doc) {
    check_keys(doc, {"command", "seed", "budget", "nerve", "levels", "cocycle", "stop_on_obstruction"},
               "tower document");
    auto nerve = io::nerve_from_json(doc.at("nerve"));
    lifting::TowerSpec spec{nerve, {}, io::cochain_from_json(nerve, doc.at("cocycle")),
                            doc.value("stop_on_obstruction", false), false};
    for (const auto& level : doc.at("levels"))
        spec.levels.push_back(lifting::TowerLevel{io::extension_from_json(level)});
    std::vector<lifting::ObstructionReport> reps = lifting::tower_obstructions(spec);
    json out = json::array();
    for (const auto& r : reps) out.push_back(io::obstruction_report_to_json(r));
    return json{{"levels", out}};
}

json run_trivialize(const json& doc) {
    check_keys(doc, {"command", "seed", "budget", "nerve", "cochain"}, "trivialize document");
    auto nerve = io::nerve_from_json(doc.at("nerve"));
    cech::Cochain c = io::cochain_from_json(nerve, doc.at("cochain"));
    cech::TrivializationResult r = cech::solve_trivialization(c);
    json out{{"trivial", r.trivial()}, {"cochain", io::cochain_to_json(c)}};
    if (r.witness) out["witness"] = io::cochain_to_json(*r.witness);
    if (r.certificate)
        out["certificate"] = json{{"reason", r.certificate->reason},
                                  {"snf_index", r.certificate->snf_index},
                                  {"residue", r.certificate->residue}};
    return out;
}

json run_curvature(const json& doc) {
    check_keys(doc, {"command", "seed", "budget", "geometry", "grid", "connection"}, "curvature document");
    auto geom = load_geometry(doc);
    conn::LocalConnection a = load_connection(geom, doc.at("connection"));
    std::vector<forms::FormField> f = conn::curvature(a);
    conn::GaugeReport gauge = conn::gauge_compat_residual(a);
    json charts = json::array();
    for (int c = 0; c < geom->chart_count(); ++c)
        charts.push_back(json{{"chart", geom->chart(c).id}, {"max_curvature_norm", f[c].max_norm()}});
    return json{{"charts", charts},
                {"max_gauge_residual", gauge.max_connection_residual},
                {"max_curvature_covariance_residual", gauge.max_curvature_residual}};
}

json run_chern(const json& doc) {
    check_keys(doc, {"command", "seed", "budget", "geometry", "grid", "connection"}, "chern document");
    auto geom = load_geometry(doc);
    conn::LocalConnection a = load_connection(geom, doc.at("connection"));
    conn::ChernResult r = conn::chern_number(conn::curvature(a), *geom);
    return json{{"integer", r.integer}, {"raw", r.raw}, {"defect", r.defect}};
}

json run_holonomy(const json& doc) {
    check_keys(doc, {"command", "seed", "budget", "geometry", "grid", "connection", "loop", "steps"},
               "holonomy document");
    auto geom = load_geometry(doc);
    conn::LocalConnection a = load_connection(geom, doc.at("connection"));
    hol::PathSpec loop = load_loop(geom, doc.at("loop"));
    int steps = doc.value("steps", 1024);
    groups::GroupElement h = hol::parallel_transport(a, loop, steps);
    return json{{"element", io::element_to_json(a.group(), h)}, {"steps", steps}};
}

json run_td_holonomy(const json& doc) {
    check_keys(doc,
               {"command", "seed", "budget", "geometry", "grid", "connection", "loop", "steps", "uniform_subgroup"},
               "td-holonomy document");
    auto geom = load_geometry(doc);
    conn::LocalConnection a = load_connection(geom, doc.at("connection"));
    hol::PathSpec loop = load_loop(geom, doc.at("loop"));
    int steps = doc.value("steps", 1024);
    const json& u = doc.at("uniform_subgroup");
    hol::TransitiveDistribution td =
        u.is_string() && u.get<std::string>() == "trivial" ? hol::TransitiveDistribution::trivial_uniform(a)
        : u.is_string() && u.get<std::string>() == "full"  ? hol::TransitiveDistribution::full_uniform(a)
                                                           : hol::TransitiveDistribution::circle_mod(a, u.get<long long>());
    groups::GroupElement h = hol::td_holonomy(td, loop, steps);
    return json{{"element", io::element_to_json(td.M, h)}, {"quotient_group", td.M.describe()}, {"steps", steps}};
}

json run_prop1_check(const json& doc) {
    check_keys(doc, {"command", "seed", "budget", "geometry", "grid", "connection", "extension", "h_preset"},
               "prop1-check document");
    auto geom = load_geometry(doc);
    conn::LocalConnection a = load_connection(geom, doc.at("connection"));
    groups::Extension ext = io::extension_from_json(doc.at("extension"));
    std::vector<forms::FormField> h_forms;
    std::string h_preset = doc.value("h_preset", std::string("zero"));
    if (h_preset == "phi" && ext.H.has_algebra()) {
        // distinct H-parts per chart so the overlap differences are nonzero
        for (int c = 0; c < geom->chart_count(); ++c)
            h_forms.push_back(forms::FormField::from_function(
                geom, c, 1, ext.H, [c](int comp, double, double) {
                    return groups::AlgebraElement(comp == 1 ? 0.1 * (c + 1) : 0.0);
                }));
    } else if (h_preset != "zero") {
        throw SchemaError("unknown h_preset: " + h_preset);
    }
    conn::LiftedConnection lifted = conn::lift_connection(a, ext, std::move(h_forms));
    conn::OverlapDifferenceReport rep = conn::overlap_difference(lifted);
    json out{{"r1_evaluated", rep.r1_evaluated},
             {"r2_evaluated", rep.r2_evaluated},
             {"max_base_component", rep.max_base_component}};
    if (rep.r1_evaluated) out["r1"] = rep.r1;
    if (rep.r2_evaluated) out["r2"] = rep.r2;
    if (!rep.warning.empty()) out["warning"] = rep.warning;
    return out;
}

json tolerances_for(const std::string& command) {
    json t = json::object();
    if (command == "chern") t["defect"] = 0.05;
    if (command == "curvature" || command == "prop1-check") t["residual"] = 1e-6;
    if (command == "holonomy" || command == "td-holonomy") t["closed_form_deviation"] = 1e-8;
    if (command == "cohomology" || command == "obstruct" || command == "tower" || command == "trivialize")
        t["combinatorial"] = "exact";
    return t;
}

}  // namespace

RunOutcome run_document(const json& doc, long long seed_override) {
    RunOutcome out;
    try {
        if (!doc.is_object() || !doc.contains("command")) throw SchemaError("document needs a \"command\" field");
        std::string command = doc.at("command").get<std::string>();
        long long seed = seed_override >= 0 ? seed_override : doc.value("seed", 0LL);
        json results;
        if (command == "cohomology")
            results = run_cohomology(doc);
        else if (command == "obstruct")
            results = run_obstruct(doc);
        else if (command == "tower")
            results = run_tower(doc);
        else if (command == "trivialize")
            results = run_trivialize(doc);
        else if (command == "curvature")
            results = run_curvature(doc);
        else if (command == "chern")
            results = run_chern(doc);
        else if (command == "holonomy")
            results = run_holonomy(doc);
        else if (command == "td-holonomy")
            results = run_td_holonomy(doc);
        else if (command == "prop1-check")
            results = run_prop1_check(doc);
        else
            throw SchemaError("unknown command: " + command);

        out.report = json{{"command", command},       {"input_digest", io::digest(doc)},
                          {"tool_version", kToolVersion}, {"seed", seed},
                          {"tolerances", tolerances_for(command)}, {"results", results},
                          {"problem", doc}};
        out.summary = "command " + command + ": ok";
        out.exit_code = 0;
    } catch (const SchemaError& e) {
        out.exit_code = 2;
        out.summary = std::string("schema error: ") + e.what();
    } catch (const nlohmann::json::exception& e) {
        out.exit_code = 2;
        out.summary = std::string("schema error: ") + e.what();
    } catch (const ToleranceError& e) {
        out.exit_code = 4;
        out.summary = std::string("tolerance failure: ") + e.what();
    } catch (const MathError& e) {
        out.exit_code = 3;
        out.summary = std::string("mathematical inconsistency: ") + e.what();
    }
    return out;
}

namespace {

// re-verify one obstruction-style report entry: shipped witness must be an
// exact primitive of the shipped cocycle
void verify_entry(const json& entry, const geometry::NervePtr& nerve, int& checked, int& failed) {
    if (!entry.contains("witness")) return;
    cech::Cochain c = io::cochain_from_json(nerve, entry.at("cocycle"));
    cech::Cochain b = io::cochain_from_json(nerve, entry.at("witness"));
    ++checked;
    if (cech::coboundary(b).max_distance(c) > (c.group().discrete() ? 0.0 : groups::kCircleTol)) ++failed;
}

}  // namespace

RunOutcome verify_report(const json& report) {
    RunOutcome out;
    try {
        if (!report.contains("problem") || !report.contains("results") || !report.contains("command"))
            throw SchemaError("verify: not a report document");
        std::string command = report.at("command").get<std::string>();
        int checked = 0, failed = 0;
        if (command == "obstruct") {
            auto nerve = io::nerve_from_json(report.at("problem").at("nerve"));
            verify_entry(report.at("results").at("report"), nerve, checked, failed);
        } else if (command == "tower") {
            auto nerve = io::nerve_from_json(report.at("problem").at("nerve"));
            for (const auto& level : report.at("results").at("levels")) verify_entry(level, nerve, checked, failed);
        } else if (command == "trivialize") {
            auto nerve = io::nerve_from_json(report.at("problem").at("nerve"));
            verify_entry(report.at("results"), nerve, checked, failed);
        } else if (command == "cohomology") {
            auto nerve = io::nerve_from_json(report.at("problem").at("nerve"));
            for (const auto& rep : report.at("results").at("representatives")) {
                cech::Cochain r = io::cochain_from_json(nerve, rep);
                ++checked;
                if (!cech::is_cocycle(r).ok) ++failed;
            }
        } else {
            throw SchemaError("verify: command \"" + command + "\" ships no witnesses to re-check");
        }
        out.report = json{{"verified", failed == 0}, {"witnesses_checked", checked}, {"failures", failed}};
        if (failed > 0) {
            out.exit_code = 3;
            out.summary = "verification FAILED: " + std::to_string(failed) + " of " + std::to_string(checked);
        } else {
            out.summary = "verified " + std::to_string(checked) + " witnesses";
        }
    } catch (const SchemaError& e) {
        out.exit_code = 2;
        out.summary = std::string("schema error: ") + e.what();
    } catch (const nlohmann::json::exception& e) {
        out.exit_code = 2;
        out.summary = std::string("schema error: ") + e.what();
    } catch (const MathError& e) {
        out.exit_code = 3;
        out.summary = std::string("mathematical inconsistency: ") + e.what();
    }
    return out;
}

}  // namespace glift::cli
