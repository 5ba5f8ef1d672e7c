#include <doctest.h>

#include <algorithm>

#include "ordtope/claims.hpp"

using namespace ordtope;

TEST_SUITE("audit") {

TEST_CASE("report JSON round trip") {
  AuditReport r;
  r.claim = "eq.prop4";
  r.parameters = {{"K", 1}, {"M", 1}};
  r.paper_value = "9";
  r.computed_value = "4";
  r.verdict = "falsified";
  r.seed = 7;
  r.digits = 3;
  AuditReport back = AuditReport::from_json(r.to_json());
  CHECK(back.claim == r.claim);
  CHECK(back.paper_value == r.paper_value);
  CHECK(back.computed_value == r.computed_value);
  CHECK(back.verdict == r.verdict);
  CHECK(back.seed == r.seed);
}

TEST_CASE("schema validation rejects malformed reports") {
  AuditReport r;
  r.claim = "totient";
  r.computed_value = "8";
  r.verdict = "falsified";
  CHECK_FALSE(validate_report_json(r.to_json()).has_value());

  nlohmann::json bad = r.to_json();
  bad["verdict"] = "maybe";
  CHECK(validate_report_json(bad).has_value());

  bad = r.to_json();
  bad.erase("computed_value");
  CHECK(validate_report_json(bad).has_value());

  // verified verdicts must carry a paper value
  bad = r.to_json();
  bad["verdict"] = "verified";
  CHECK(validate_report_json(bad).has_value());
}

TEST_CASE("claim registry covers the audited claims") {
  auto ids = claim_ids();
  for (const char* required :
       {"delta-f-formula", "eq.prop1", "eq.prop2", "eq.prop3", "eq.prop4", "eq.dirac", "eq.balls",
        "c2-growth", "example-lat", "char-radius-log-bound", "abstract-bound"}) {
    CHECK(std::find(ids.begin(), ids.end(), required) != ids.end());
  }
}

TEST_CASE("totient claim verifies the worked example") {
  AuditConfig cfg;
  AuditReport r = run_claim("totient", cfg);
  CHECK(r.verdict == "verified");
  CHECK(r.computed_value == "8");
  CHECK_FALSE(validate_report_json(r.to_json()).has_value());
}

TEST_CASE("char-radius claim records the counterexample") {
  AuditConfig cfg;
  AuditReport r = run_claim("char-radius-log-bound", cfg);
  CHECK(r.verdict == "falsified");
}

TEST_CASE("unknown claims are rejected") {
  AuditConfig cfg;
  CHECK_THROWS_AS(run_claim("nosuch", cfg), Error);
}

TEST_CASE("claims rerun deterministically") {
  AuditConfig cfg;
  AuditReport a = run_claim("delta-f-formula", cfg);
  AuditReport b = run_claim("delta-f-formula", cfg);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.verdict == "falsified");  // measured gaps do not follow 2^i + 2^(i+1)(i-1)
}

}  // TEST_SUITE
