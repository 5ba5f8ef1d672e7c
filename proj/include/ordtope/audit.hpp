#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ordtope {

// Machine-readable verdict for one claim check: what the source asserts
// (paper_value) against what brute force finds. Verdicts report; they never
// fail a process.
struct AuditReport {
  std::string claim;                       // stable id, e.g. "eq.prop4"
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::string> paper_value;  // what the source asserts, if anything
  std::string computed_value;              // what brute force found
  std::string verdict;                     // verified | falsified | ambiguous | budget-exceeded
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
  int digits = 0;

  nlohmann::json to_json() const;
  static AuditReport from_json(const nlohmann::json& j);
};

// Structural validation against the shipped report schema; returns an error
// description or nullopt when valid.
std::optional<std::string> validate_report_json(const nlohmann::json& j);

// JSON Schema document for AuditReport (also installed under share/).
extern const char* const kAuditReportSchema;

}  // namespace ordtope
