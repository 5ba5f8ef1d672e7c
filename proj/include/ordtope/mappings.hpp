#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ordtope/spaces.hpp"

namespace ordtope {

// Smallest k1, k2 >= 1 with (1/k1) d(x_i, x_j) <= d'(y_i, y_j)
// <= k2 d(x_i, x_j) over all pairs; k1 is infinite when the image collapses a
// separated pair. scale reports the geometric mean of the ratio range, the
// global factor one could cancel; the bounds themselves stay raw.
struct DistortionResult {
  double k1 = 1.0;
  double k2 = 1.0;
  double scale = 1.0;
  std::size_t pair_count = 0;
};
DistortionResult measure_distortion(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Metric dx,
                                    Metric dy);

// Pairs violating declared (k1, k2) bounds.
std::size_t distortion_violations(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Metric dx,
                                  Metric dy, double k1, double k2);

struct MappingReport {
  double k1 = 1.0;
  double k2 = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  std::size_t pair_count = 0;
  std::size_t violation_count = 0;
};

// Measures distortion and dilation of x -> y in one pass; violation_count
// re-checks every pair against the measured (k1, k2).
MappingReport mapping_report(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Metric dx, Metric dy,
                             const std::vector<double>& eps_grid);
std::string mapping_report_json(const MappingReport& report);

// Gaussian random projection to d dimensions, scaled by 1/sqrt(d). Entries
// are drawn from a seeded portable generator, so results are bit-exact under
// a fixed seed. identity_override short-circuits to the identity map for
// d = dim(X) (test hook).
Eigen::MatrixXd random_projection(const Eigen::MatrixXd& x, int d, std::uint64_t seed,
                                  bool identity_override = false);

// Dilation of f over a grid of ball radii: for each eps, X_i = ball solutions
// around every q_i in X, Y_i = ball solutions around f(q_i) in Y with eps'
// widened (doubling) until f(X_i) is contained in Y_i for every i. Bounds c1,
// c2 then sandwich max_i |Y_i| between (1/c1) max_i |X_i| and
// c2 max_i |X_i| over the grid.
struct DilationResult {
  double c1 = 1.0;
  double c2 = 1.0;
  std::vector<double> eps_prime;      // widened image radius per grid entry
  std::vector<std::size_t> max_domain;
  std::vector<std::size_t> max_image;
  double predicted_c2 = 0.0;          // 1 + log|X| / |X|
};
DilationResult measure_dilation(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Metric dx,
                                Metric dy, const std::vector<double>& eps_grid,
                                int widen_budget = 40);

// The three ball counts of the distortion inequality
//   max_i |B_eps(f(q_i)) cap Y| <= max_i |B_{eps k1}(q_i) cap X|
//                                   - max_i |B_{eps/k2}(q_i) cap X|
// with q_i ranging over X and y_i = f(q_i) (closed balls); the verdict is
// whether the displayed inequality holds as stated.
struct BallCounts {
  std::size_t image_count = 0;
  std::size_t domain_wide = 0;
  std::size_t domain_narrow = 0;
  bool inequality_holds = false;
};
BallCounts ball_counts(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double eps, double k1,
                       double k2, Metric dx, Metric dy);

}  // namespace ordtope
