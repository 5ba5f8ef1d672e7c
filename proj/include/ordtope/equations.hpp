#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ordtope/spaces.hpp"

namespace ordtope {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double x) const {
    if (x < lo || (x == lo && !lo_closed)) return false;
    if (x > hi || (x == hi && !hi_closed)) return false;
    return true;
  }
  // -K, for the d(X, q) = -k reading of d(X, q) + k = 0
  Interval negated() const { return {-hi, -lo, hi_closed, lo_closed}; }
};

// One range constraint d(x, q) + k = 0, k in the interval. A missing q is a
// placeholder bound by solve()'s query argument.
struct EquationAtom {
  std::optional<Eigen::VectorXd> q;
  Interval k;
};

// A combinator tree of range constraints over a finite discrete space:
// atoms evaluate to index sets, children combine under the node op.
struct DistanceEquation {
  enum class Op { Union, Intersect };
  Metric metric = Metric::L2;
  Op op = Op::Union;
  std::vector<EquationAtom> atoms;
  std::vector<DistanceEquation> children;
};

// ball of radius eps: k in [-eps, 0] so that d in [0, eps]
DistanceEquation ball(const Eigen::VectorXd& q, double eps, Metric metric = Metric::L2);
DistanceEquation ball_here(double eps, Metric metric = Metric::L2);  // placeholder-q ball

// Sorted indices of the space satisfying the equation. Plain linear scan:
// this is the correctness oracle; the order module is the fast path where one
// exists.
std::vector<int> solve(const DistanceEquation& eq, const FiniteSpace& space,
                       const std::optional<Eigen::VectorXd>& query = std::nullopt);

// Decision version: one satisfying index, uniform under the seed.
int solve_decision(const DistanceEquation& eq, const FiniteSpace& space,
                   const std::optional<Eigen::VectorXd>& query, std::uint64_t seed);

// Number of distinct atom-satisfaction patterns over the space (the cell
// count of the induced partition); equations with equal cell counts are
// isomorphic in the k-partition sense.
std::size_t partition_cardinality(const DistanceEquation& eq, const FiniteSpace& space,
                                  const std::optional<Eigen::VectorXd>& query = std::nullopt);

// max(sup_x inf_q, sup_q inf_x) over the two point sets (rows)
double hausdorff(const Eigen::MatrixXd& x, const Eigen::MatrixXd& q, Metric metric = Metric::L2);

// Indices i with H(X_i, Q) + k = 0 for some k in the interval.
std::vector<int> hausdorff_eq(const std::vector<Eigen::MatrixXd>& subsets, const Eigen::MatrixXd& q,
                              Metric metric, const Interval& k);
// Convenience overload with the distance band [eps1, eps2] given directly.
std::vector<int> hausdorff_eq(const std::vector<Eigen::MatrixXd>& subsets, const Eigen::MatrixXd& q,
                              Metric metric, double eps1, double eps2);

// A union of halfspace systems A_i q <= b_i.
struct Arrangement {
  std::vector<Eigen::MatrixXd> a;
  std::vector<Eigen::VectorXd> b;

  std::size_t size() const { return a.size(); }
};

void validate_arrangement(const Arrangement& arr);

// sgn with sgn(0) = -1, the halfspace indicator on cube vertices.
inline int sgn_star(double x) { return x > 0 ? 1 : -1; }

// Direct evaluation: i is returned iff A_i q <= b_i componentwise.
std::vector<int> point_location_direct(const Arrangement& arr, const Eigen::VectorXd& q);

// sgn*-sum form: i is returned iff dim q + sum_j sgn*(a_j . q - b_j) = 0.
// Requires m_i = dim q rows per system.
std::vector<int> point_location_sgn(const Arrangement& arr, const Eigen::VectorXd& q);

// Cosine form: residuals map to the nearest +-1 cube vertex v; i is returned
// iff n + n cos(v, 1) = 0. The sum is integer-spaced so a half-gap tolerance
// absorbs the floating cosine.
std::vector<int> point_location_cosine(const Arrangement& arr, const Eigen::VectorXd& q);

// JSON schema:
// {"metric": "l2", "op": "union"|"intersect",
//  "atoms": [{"q": [..] optional, "interval": [lo, hi],
//             "lo_closed": true, "hi_closed": true}],
//  "children": [...]}
DistanceEquation equation_from_json(const std::string& text);
std::string equation_to_json(const DistanceEquation& eq);

}  // namespace ordtope
