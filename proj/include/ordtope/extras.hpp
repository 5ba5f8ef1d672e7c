#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ordtope/errors.hpp"

namespace ordtope {

// Sibuya's sphere sampler for even n: ordered uniform spacings share their
// square roots as radii of random-angle coordinate pairs, so the squared
// norm telescopes to exactly one.
Eigen::VectorXd sibuya_sphere(int n, std::uint64_t seed);

struct ConcentrationStats {
  double mean = 0.0;
  double stddev = 0.0;
  std::vector<std::size_t> histogram;
  double hist_lo = 0.0;
  double hist_hi = 2.0;
  std::size_t pair_count = 0;
};

// All-pairs l2 distance statistics over `samples` Sibuya draws.
ConcentrationStats concentration_stats(int n, int samples, std::uint64_t seed, int bins = 20);

using BeadMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// Row i is the unary representation of values[i]: a prefix of ones.
BeadMatrix bead_matrix(const std::vector<std::uint64_t>& values, std::uint64_t max_value);

// One sweep of the (1,0) -> fall swap over all columns; returns whether
// anything moved. Iterating to the fixpoint is gravity.
bool bead_gravity_step(BeadMatrix& m);

// Gravity as per-column popcount restacking (the swap fixpoint, O(NM)).
BeadMatrix bead_gravity(const BeadMatrix& m);

std::vector<std::uint64_t> bead_rows(const BeadMatrix& m);

// Sorted ascending; equals comparison sort.
std::vector<std::uint64_t> bead_sort(const std::vector<std::uint64_t>& values, std::uint64_t max_value);

// Radial basis interpolant of the identity on points in R^3 \ {0}:
// phi applied to the gap of reciprocal norms, Gaussian kernel with sigma the
// median nonzero pairwise gap. Nodes with equal norms make the system
// singular and are rejected.
class RbfInterpolant {
 public:
  explicit RbfInterpolant(const Eigen::MatrixXd& points);  // N x 3

  Eigen::Vector3d operator()(const Eigen::Vector3d& x) const;
  double sigma() const { return sigma_; }
  const Eigen::MatrixXd& coefficients() const { return coeffs_; }

 private:
  double kernel(double r) const;
  Eigen::VectorXd inv_norms_;
  Eigen::MatrixXd coeffs_;  // N x 3
  double sigma_ = 1.0;
};

}  // namespace ordtope
