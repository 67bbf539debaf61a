#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "checks.hpp"
#include "version.hpp"

namespace lorcost {

// nlohmann::json objects keep keys sorted, so dumps are stable.
using Json = nlohmann::json;

inline Json to_json(const Witness& w) {
    return Json{{"digest", w.digest}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"detail", w.detail}};
}

inline Json to_json(const CheckReport& r) {
    Json j;
    j["check_id"] = r.check_id;
    j["cases_run"] = r.cases_run;
    j["cases_passed"] = r.cases_passed;
    j["pass"] = r.pass();
    if (r.vacuous()) j["note"] = "0 cases";
    j["worst_violation"] = r.worst_violation;
    j["witnesses"] = Json::array();
    for (const auto& w : r.witnesses) j["witnesses"].push_back(to_json(w));
    j["baseline_values"] = Json::object();
    for (const auto& [k, v] : r.baseline_values) j["baseline_values"][k] = v;
    return j;
}

/// Envelope shared by every command that emits a report.
struct ReportDocument {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<std::uint64_t> seeds;

    Json to_json() const {
        Json j;
        j["schema_version"] = "1";
        j["command"] = command;
        j["inputs"] = inputs;
        j["results"] = results;
        j["provenance"] = Json{{"tool_version", version}, {"seeds", seeds}};
        return j;
    }

    std::string dump() const { return to_json().dump(2) + "\n"; }
};

}  // namespace lorcost
