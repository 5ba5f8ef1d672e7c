#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordtope/audit.hpp"
#include "ordtope/numeric.hpp"

namespace ordtope {

struct AuditConfig {
  std::uint64_t seed = 1;
  int digits = 0;  // 0: modules pick required_digits
  std::size_t budget = kDefaultBudget;
  int jst_k = 1;   // K
  int jst_m = 1;   // M
  unsigned max_exponent = 1;
  std::uint64_t totient_n = 30;
  std::vector<std::uint64_t> totient_primes = {2, 3, 5};
  bool timings = false;
};

// Stable list of auditable claim ids.
std::vector<std::string> claim_ids();

// Runs one claim end to end; unknown ids raise ParameterError.
AuditReport run_claim(const std::string& id, const AuditConfig& config);

std::vector<AuditReport> run_all_claims(const AuditConfig& config);

}  // namespace ordtope
