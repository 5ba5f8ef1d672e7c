#include "ordtope/audit.hpp"

namespace ordtope {

nlohmann::json AuditReport::to_json() const {
  nlohmann::json j;
  j["claim"] = claim;
  j["parameters"] = parameters;
  if (paper_value)
    j["paper_value"] = *paper_value;
  else
    j["paper_value"] = nullptr;
  j["computed_value"] = computed_value;
  j["verdict"] = verdict;
  j["runtime_ms"] = runtime_ms;
  j["seed"] = seed;
  j["digits"] = digits;
  return j;
}

AuditReport AuditReport::from_json(const nlohmann::json& j) {
  AuditReport r;
  r.claim = j.at("claim").get<std::string>();
  r.parameters = j.value("parameters", nlohmann::json::object());
  if (j.contains("paper_value") && !j["paper_value"].is_null())
    r.paper_value = j["paper_value"].get<std::string>();
  r.computed_value = j.at("computed_value").get<std::string>();
  r.verdict = j.at("verdict").get<std::string>();
  r.runtime_ms = j.value("runtime_ms", 0.0);
  r.seed = j.value("seed", std::uint64_t{0});
  r.digits = j.value("digits", 0);
  return r;
}

std::optional<std::string> validate_report_json(const nlohmann::json& j) {
  if (!j.is_object()) return "report must be an object";
  for (const char* key : {"claim", "parameters", "paper_value", "computed_value", "verdict",
                          "runtime_ms", "seed", "digits"})
    if (!j.contains(key)) return std::string("missing field: ") + key;
  if (!j["claim"].is_string() || j["claim"].get<std::string>().empty()) return "claim must be a nonempty string";
  if (!j["parameters"].is_object()) return "parameters must be an object";
  if (!j["paper_value"].is_null() && !j["paper_value"].is_string())
    return "paper_value must be a string or null";
  if (!j["computed_value"].is_string()) return "computed_value must be a string";
  static const char* verdicts[] = {"verified", "falsified", "ambiguous", "budget-exceeded"};
  bool ok = false;
  for (const char* v : verdicts)
    if (j["verdict"] == v) ok = true;
  if (!ok) return "verdict must be one of verified|falsified|ambiguous|budget-exceeded";
  if (!j["runtime_ms"].is_number()) return "runtime_ms must be a number";
  if (!j["seed"].is_number_unsigned()) return "seed must be an unsigned number";
  if (!j["digits"].is_number_integer()) return "digits must be an integer";
  // verified demands a comparable paper value
  if (j["verdict"] == "verified" && j["paper_value"].is_null())
    return "verified verdicts require a paper_value";
  return std::nullopt;
}

const char* const kAuditReportSchema = R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "AuditReport",
  "type": "object",
  "required": ["claim", "parameters", "paper_value", "computed_value", "verdict", "runtime_ms", "seed", "digits"],
  "properties": {
    "claim": {"type": "string", "minLength": 1},
    "parameters": {"type": "object"},
    "paper_value": {"type": ["string", "null"]},
    "computed_value": {"type": "string"},
    "verdict": {"enum": ["verified", "falsified", "ambiguous", "budget-exceeded"]},
    "runtime_ms": {"type": "number"},
    "seed": {"type": "integer", "minimum": 0},
    "digits": {"type": "integer"}
  }
})";

}  // namespace ordtope
