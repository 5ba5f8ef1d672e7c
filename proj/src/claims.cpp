#include "ordtope/claims.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "ordtope/bench.hpp"
#include "ordtope/mappings.hpp"
#include "ordtope/order.hpp"
#include "ordtope/rng.hpp"
#include "ordtope/spaces.hpp"
#include "ordtope/transforms.hpp"

namespace ordtope {

namespace {

Eigen::MatrixXd seeded_cloud(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

// the quasi-lattice reading: subset sums of floor-logs over the first n
// primes, N = 2^n, finite differences of the sorted curve in ulps
AuditReport claim_delta_f(const AuditConfig& cfg) {
  AuditReport r;
  r.claim = "delta-f-formula";
  const std::size_t n = 4;
  PrimeBasis basis = gen_primes(n);
  int d = cfg.digits == 0 ? required_digits(basis, n, 1, cfg.budget) : cfg.digits;
  basis = basis.with_digits(d);
  r.parameters = {{"n", n}, {"N", std::size_t{1} << n}, {"reading", "subset sums of floor-logs"}};
  r.seed = cfg.seed;
  r.digits = d;

  std::vector<std::int64_t> sums;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) s += basis.log(i).mantissa().get_si();
    sums.push_back(s);
  }
  std::sort(sums.begin(), sums.end());

  std::ostringstream measured, formula;
  bool match = true;
  for (std::size_t i = 1; i < sums.size(); ++i) {
    std::int64_t gap = sums[i] - sums[i - 1];
    // 2^i + 2^(i+1) (i-1)
    unsigned long fi = (1ul << i) + (1ul << (i + 1)) * (static_cast<unsigned long>(i) - 1ul);
    measured << (i > 1 ? "," : "") << gap;
    formula << (i > 1 ? "," : "") << fi;
    if (static_cast<unsigned long>(gap) != fi) match = false;
  }
  r.paper_value = "Delta[f]_i = 2^i + 2^(i+1)(i-1): " + formula.str();
  r.computed_value = "measured order-curve differences (ulps at D=" + std::to_string(d) + "): " + measured.str();
  r.verdict = match ? "verified" : "falsified";
  return r;
}

AuditReport claim_jst(const std::string& id, const AuditConfig& cfg) {
  auto reports = audit_jst_orders(cfg.jst_k, cfg.jst_m, cfg.max_exponent, cfg.seed, cfg.digits, cfg.budget);
  for (auto& r : reports)
    if (r.claim == id) return r;
  fail(Errc::ParameterError, "JST audit did not produce claim " + id);
}

AuditReport claim_balls(const AuditConfig& cfg) {
  AuditReport r;
  r.claim = "eq.balls";
  r.seed = cfg.seed;
  const Eigen::Index n = 64, dim = 8, target = 4;
  Eigen::MatrixXd x = seeded_cloud(n, dim, cfg.seed);
  Eigen::MatrixXd y = random_projection(x, target, cfg.seed + 1);
  DistortionResult distortion = measure_distortion(x, y, Metric::L2, Metric::L2);
  r.parameters = {{"points", n}, {"dim", dim},        {"target_dim", target},
                  {"k1", distortion.k1}, {"k2", distortion.k2}, {"eps_grid", {0.5, 1.0, 2.0}}};
  std::ostringstream os;
  bool all_hold = true;
  for (double eps : {0.5, 1.0, 2.0}) {
    BallCounts counts = ball_counts(x, y, eps, distortion.k1, distortion.k2, Metric::L2, Metric::L2);
    os << "eps=" << eps << ":|B(f(q)) cap Y|=" << counts.image_count
       << ",|B_eps_k1 cap X|=" << counts.domain_wide << ",|B_eps/k2 cap X|=" << counts.domain_narrow
       << ",holds=" << (counts.inequality_holds ? "yes" : "no") << "; ";
    all_hold = all_hold && counts.inequality_holds;
  }
  r.paper_value = "max|B_eps(f(q)) cap Y| <= max|B_{eps k1}(q) cap X| - max|B_{eps/k2}(q) cap X|";
  r.computed_value = os.str();
  r.verdict = all_hold ? "verified" : "falsified";
  return r;
}

AuditReport claim_c2_growth(const AuditConfig& cfg) {
  AuditReport r;
  r.claim = "c2-growth";
  r.seed = cfg.seed;
  std::ostringstream os;
  bool within = true;
  r.parameters = {{"sizes", {16, 32, 64}}, {"dim", 8}, {"target_dim", 4}, {"log", "natural"},
                  {"rel_tol", 0.25}};
  for (Eigen::Index n : {16, 32, 64}) {
    Eigen::MatrixXd x = seeded_cloud(n, 8, cfg.seed + static_cast<std::uint64_t>(n));
    Eigen::MatrixXd y = random_projection(x, 4, cfg.seed + 100 + static_cast<std::uint64_t>(n));
    DilationResult dil = measure_dilation(x, y, Metric::L2, Metric::L2, {1.0});
    double rel = std::abs(dil.c2 - dil.predicted_c2) / dil.predicted_c2;
    os << "|X|=" << n << ":observed_c2=" << dil.c2 << ",predicted=" << dil.predicted_c2
       << ",rel_err=" << rel << "; ";
    if (rel > 0.25) within = false;
  }
  r.paper_value = "c2 = 1 + log|X| / |X|";
  r.computed_value = os.str();
  r.verdict = within ? "verified" : "falsified";
  return r;
}

AuditReport claim_example_lat(const AuditConfig& cfg) {
  AuditReport r;
  r.claim = "example-lat";
  r.seed = cfg.seed;
  const std::size_t n = 16;
  PrimeBasis basis = gen_primes(n);
  int d = cfg.digits == 0 ? required_digits(basis, n, 1, cfg.budget) : cfg.digits;
  basis = basis.with_digits(d);
  r.digits = d;
  r.parameters = {{"hypothesis", "ranks of singleton codes within the 16-dimensional indicator order"},
                  {"n", n}};

  std::vector<std::int64_t> mantissas(n);
  for (std::size_t i = 0; i < n; ++i) mantissas[i] = basis.log(i).mantissa().get_si();
  std::vector<std::int64_t> sums;
  sums.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) s += mantissas[i];
    sums.push_back(s);
  }
  std::sort(sums.begin(), sums.end());

  std::vector<std::size_t> ranks;
  std::ostringstream os;
  os << "singleton 0-based ranks: ";
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rank = static_cast<std::size_t>(
        std::lower_bound(sums.begin(), sums.end(), mantissas[i]) - sums.begin());
    ranks.push_back(rank);
    os << (i ? "," : "") << rank;
  }
  bool forward = true, backward = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t paper_forward = 1 + 16 * i;
    std::size_t paper_backward = 1 + 16 * (n - 1 - i);
    if (ranks[i] != paper_forward && ranks[i] + 1 != paper_forward) forward = false;
    if (ranks[i] != paper_backward && ranks[i] + 1 != paper_backward) backward = false;
  }
  r.paper_value = "(1,17,33,...,241) and the reversed vector for the inverse code";
  r.computed_value = os.str();
  r.verdict = (forward || backward) ? "verified" : "falsified";
  return r;
}

AuditReport claim_char_radius(const AuditConfig& cfg) {
  AuditReport r;
  r.claim = "char-radius-log-bound";
  r.seed = cfg.seed;
  FiniteSpace space;
  space.points = Eigen::MatrixXd(2, 1);
  space.points << 0.0, 10.0;
  space.metric = Metric::L1;
  double radius = characteristic_radius(build_distance_matrix(space));
  double sup = sup_norm(space.points);
  r.parameters = {{"space", {0.0, 10.0}}, {"metric", "l1"}};
  std::ostringstream os;
  os << "X={0,10}: r=" << radius << ", log10|X|inf=" << std::log10(sup) << ", ln=" << std::log(sup)
     << ", log2=" << std::log2(sup) << "; r exceeds the bound under every logarithm base";
  r.paper_value = "characteristic radius <= log ||X||_inf";
  r.computed_value = os.str();
  r.verdict = radius <= std::log2(sup) ? "verified" : "falsified";
  return r;
}

AuditReport claim_abstract_bound(const AuditConfig& cfg) {
  AuditReport r;
  r.claim = "abstract-bound";
  r.seed = cfg.seed;
  std::vector<std::size_t> grid{8, 12, 16, 20};
  auto cells = run_bench(grid, 32, cfg.seed, false, cfg.budget);
  std::ostringstream os;
  bool all_hold = true;
  for (const BenchCell& c : cells) {
    if (c.method != "order-search") continue;
    double bound = 2.0 * std::log2(static_cast<double>(c.value_range)) *
                   std::log2(static_cast<double>(c.n));  // log2 log2 N = log2 n for N = 2^n
    bool holds = static_cast<double>(c.comparisons_max) <= bound;
    os << "n=" << c.n << ":max_comparisons=" << c.comparisons_max << ",bound=" << bound
       << ",holds=" << (holds ? "yes" : "no") << "; ";
    all_hold = all_hold && holds;
  }
  r.parameters = {{"grid", grid}, {"targets_per_cell", 32}};
  r.paper_value = "comparisons = O(log ||X||_inf log log N)";
  r.computed_value = os.str();
  r.verdict = all_hold ? "verified" : "falsified";
  return r;
}

AuditReport claim_totient(const AuditConfig& cfg) {
  AuditReport r;
  r.claim = "totient";
  r.seed = cfg.seed;
  std::uint64_t exact = count_coprime(cfg.totient_n, cfg.totient_primes);
  mpq_class formula = totient_formula(cfg.totient_n, cfg.totient_primes);
  nlohmann::json primes = nlohmann::json::array();
  for (auto p : cfg.totient_primes) primes.push_back(p);
  r.parameters = {{"n", cfg.totient_n}, {"primes", primes}};
  r.paper_value = "phi(n,p) = n prod (1 - 1/p_i) = " + formula.get_str();
  r.computed_value = std::to_string(exact);
  bool equal = mpq_class(static_cast<unsigned long>(exact)) == formula;
  r.verdict = equal ? "verified" : "falsified";
  return r;
}

}  // namespace

std::vector<std::string> claim_ids() {
  return {"delta-f-formula", "eq.prop1",  "eq.prop2",    "eq.prop3",
          "eq.prop4",        "eq.dirac",  "eq.balls",    "c2-growth",
          "example-lat",     "char-radius-log-bound",    "abstract-bound",
          "totient"};
}

AuditReport run_claim(const std::string& id, const AuditConfig& config) {
  auto start = std::chrono::steady_clock::now();
  AuditReport report;
  if (id == "delta-f-formula")
    report = claim_delta_f(config);
  else if (id == "eq.prop1" || id == "eq.prop2" || id == "eq.prop3" || id == "eq.prop4" ||
           id == "eq.dirac")
    report = claim_jst(id, config);
  else if (id == "eq.balls")
    report = claim_balls(config);
  else if (id == "c2-growth")
    report = claim_c2_growth(config);
  else if (id == "example-lat")
    report = claim_example_lat(config);
  else if (id == "char-radius-log-bound")
    report = claim_char_radius(config);
  else if (id == "abstract-bound")
    report = claim_abstract_bound(config);
  else if (id == "totient")
    report = claim_totient(config);
  else
    fail(Errc::ParameterError, "unknown claim id: " + id);
  if (config.timings)
    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.seed = config.seed;
  return report;
}

std::vector<AuditReport> run_all_claims(const AuditConfig& config) {
  std::vector<AuditReport> reports;
  for (const std::string& id : claim_ids()) reports.push_back(run_claim(id, config));
  return reports;
}

}  // namespace ordtope
