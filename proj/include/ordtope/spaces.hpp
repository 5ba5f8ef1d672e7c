#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "ordtope/errors.hpp"

namespace ordtope {

enum class Metric { L1, L2, Linf };

template <typename DA, typename DB>
double point_distance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b, Metric metric) {
  switch (metric) {
    case Metric::L1:
      return (a - b).template lpNorm<1>();
    case Metric::L2:
      return (a - b).norm();
    case Metric::Linf:
      return (a - b).template lpNorm<Eigen::Infinity>();
  }
  fail(Errc::ParameterError, "unknown metric");
}

// A finite discrete space: one point per row. A custom distance matrix, when
// set, overrides the named metric; it only needs to be symmetric with a zero
// diagonal (distances, not necessarily metric).
struct FiniteSpace {
  Eigen::MatrixXd points;
  Metric metric = Metric::L2;
  std::optional<Eigen::MatrixXd> custom;

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
};

// Pairwise distances; zero diagonal and symmetry hold by construction.
Eigen::MatrixXd build_distance_matrix(const FiniteSpace& space);

// zero diagonal + symmetry + nonnegativity check for externally supplied
// matrices.
void validate_distance_matrix(const Eigen::MatrixXd& d, double tol = 1e-12);

struct MetricReport {
  bool symmetric = false;
  bool zero_diag = false;
  bool triangle_ok = false;
  std::vector<std::tuple<int, int, int>> violations;  // (i, j, k): d(i,k) > d(i,j) + d(j,k)
  double tolerance = 0.0;
};

// Exhaustive triangle scan over ordered triples. The tolerance absorbs
// floating-point rounding of computed metrics.
MetricReport check_metric_axioms(const Eigen::MatrixXd& d, double tol = 1e-9);

// Cut-metric convention as stated in the source: entry 1 when two points'
// neighborhoods intersect, 0 otherwise (closed balls of the given radii).
// The space is discrete exactly when every off-diagonal entry is 0. The
// polarity is the reverse of the usual cut-metric convention; kept as stated.
struct CutMetricResult {
  Eigen::MatrixXd d;
  bool is_discrete = false;
};
CutMetricResult cut_metric(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                           Metric ball_metric = Metric::L2);
CutMetricResult cut_metric(const Eigen::MatrixXd& points, double radius, Metric ball_metric = Metric::L2);

// r = min_{i != j} d(i, j); undefined below two points.
double characteristic_radius(const Eigen::MatrixXd& d);

// max absolute coordinate over the point set
double sup_norm(const Eigen::MatrixXd& points);

// c = ||X||_inf - r
double compactness(const FiniteSpace& space);

// ceil(log2(max + 1)) bits per coordinate; 0 for the degenerate single-symbol
// space.
int code_length_bound(std::uint64_t max_abs_value);

// The realizability half of the bound: fixed-width packing of nonnegative
// integer vectors at `bits` per coordinate.
std::vector<std::uint8_t> fixed_width_encode(const Eigen::MatrixXi& points, int bits);
Eigen::MatrixXi fixed_width_decode(const std::vector<std::uint8_t>& bytes, Eigen::Index rows,
                                   Eigen::Index cols, int bits);

// {"points": [[...], ...], "metric": "l1"|"l2"|"linf"} -> FiniteSpace
FiniteSpace space_from_json(const std::string& text);

// '.' decimals, ',' separators, LF line endings
std::string matrix_csv(const Eigen::MatrixXd& m);

}  // namespace ordtope
