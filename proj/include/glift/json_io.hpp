#pragma once

#include <json.hpp>

#include "glift/cochain.hpp"
#include "glift/extension.hpp"
#include "glift/lifting.hpp"

namespace glift::io {

using nlohmann::json;

// Fails closed: any key outside `allowed` raises SchemaError.
void check_keys(const json& obj, const std::vector<std::string>& allowed, const std::string& context);

json nerve_to_json(const geometry::Nerve& nerve);  // maximal simplices only
geometry::NervePtr nerve_from_json(const json& j);  // catalog name string or inline document

json group_to_json(const groups::Group& g);
groups::Group group_from_json(const json& j);

json element_to_json(const groups::Group& g, const groups::GroupElement& v);
groups::GroupElement element_from_json(const groups::Group& g, const json& j);

json cochain_to_json(const cech::Cochain& c);
cech::Cochain cochain_from_json(const geometry::NervePtr& nerve, const json& j);

json extension_to_json(const groups::Extension& e);
groups::Extension extension_from_json(const json& j);

json obstruction_report_to_json(const lifting::ObstructionReport& rep);

// FNV-1a 64-bit digest of the canonical dump, as a hex string.
std::string digest(const json& doc);

}  // namespace glift::io

namespace glift::cli {

struct RunOutcome {
    int exit_code = 0;
    nlohmann::json report;
    std::string summary;
};

// Executes one problem document. Exit codes: 0 success, 2 schema error,
// 3 mathematical inconsistency, 4 tolerance failure.
RunOutcome run_document(const nlohmann::json& doc, long long seed_override = -1);

// Re-checks the witnesses shipped inside a report document.
RunOutcome verify_report(const nlohmann::json& report);

}  // namespace glift::cli
