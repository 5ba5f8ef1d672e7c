#include "ordtope/extras.hpp"

#include <algorithm>
#include <cmath>

#include "ordtope/rng.hpp"

namespace ordtope {

Eigen::VectorXd sibuya_sphere(int n, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) fail(Errc::DimensionError, "Sibuya sampling needs an even dimension >= 2");
  const int m = n / 2;
  Rng rng(seed);
  // 0 = s_0 < s_1 < ... < s_{m-1} < s_m = 1
  std::vector<double> s(static_cast<std::size_t>(m) + 1);
  s[0] = 0.0;
  for (int j = 1; j < m; ++j) s[static_cast<std::size_t>(j)] = rng.uniform_open();
  s[static_cast<std::size_t>(m)] = 1.0;
  std::sort(s.begin() + 1, s.end() - (m > 1 ? 1 : 0));
  Eigen::VectorXd x(n);
  for (int j = 1; j <= m; ++j) {
    double radius = std::sqrt(s[static_cast<std::size_t>(j)] - s[static_cast<std::size_t>(j) - 1]);
    double angle = 2.0 * M_PI * rng.uniform();
    x(2 * (j - 1)) = radius * std::cos(angle);
    x(2 * (j - 1) + 1) = radius * std::sin(angle);
  }
  return x;
}

ConcentrationStats concentration_stats(int n, int samples, std::uint64_t seed, int bins) {
  if (samples < 2) fail(Errc::ParameterError, "concentration stats need at least two samples");
  if (bins < 1) fail(Errc::ParameterError, "histogram needs at least one bin");
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) pts.push_back(sibuya_sphere(n, seed + static_cast<std::uint64_t>(i)));

  ConcentrationStats stats;
  stats.histogram.assign(static_cast<std::size_t>(bins), 0);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double d = (pts[i] - pts[j]).norm();
      sum += d;
      sum_sq += d * d;
      ++stats.pair_count;
      int bin = std::min(bins - 1, static_cast<int>(d / (stats.hist_hi - stats.hist_lo) * bins));
      stats.histogram[static_cast<std::size_t>(std::max(0, bin))] += 1;
    }
  }
  double count = static_cast<double>(stats.pair_count);
  stats.mean = sum / count;
  double var = std::max(0.0, sum_sq / count - stats.mean * stats.mean);
  stats.stddev = std::sqrt(var);
  return stats;
}

BeadMatrix bead_matrix(const std::vector<std::uint64_t>& values, std::uint64_t max_value) {
  BeadMatrix m = BeadMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                                  static_cast<Eigen::Index>(max_value));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > max_value)
      fail(Errc::WidthError, "value " + std::to_string(values[i]) + " exceeds the matrix width");
    for (std::uint64_t j = 0; j < values[i]; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1;
  }
  return m;
}

bool bead_gravity_step(BeadMatrix& m) {
  bool moved = false;
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    for (Eigen::Index row = 0; row + 1 < m.rows(); ++row) {
      if (m(row, col) == 1 && m(row + 1, col) == 0) {
        m(row, col) = 0;
        m(row + 1, col) = 1;
        moved = true;
      }
    }
  }
  return moved;
}

BeadMatrix bead_gravity(const BeadMatrix& m) {
  BeadMatrix out = BeadMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    Eigen::Index ones = 0;
    for (Eigen::Index row = 0; row < m.rows(); ++row) ones += m(row, col);
    for (Eigen::Index row = m.rows() - ones; row < m.rows(); ++row) out(row, col) = 1;
  }
  return out;
}

std::vector<std::uint64_t> bead_rows(const BeadMatrix& m) {
  std::vector<std::uint64_t> values(static_cast<std::size_t>(m.rows()), 0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::uint64_t v = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) v += m(i, j);
    values[static_cast<std::size_t>(i)] = v;
  }
  return values;
}

std::vector<std::uint64_t> bead_sort(const std::vector<std::uint64_t>& values, std::uint64_t max_value) {
  if (values.empty()) return {};
  BeadMatrix settled = bead_gravity(bead_matrix(values, max_value));
  return bead_rows(settled);  // gravity leaves the shortest rows on top
}

RbfInterpolant::RbfInterpolant(const Eigen::MatrixXd& points) {
  if (points.rows() < 1 || points.cols() != 3)
    fail(Errc::ShapeError, "interpolant needs N x 3 points");
  const Eigen::Index n = points.rows();
  inv_norms_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double norm = points.row(i).norm();
    if (norm == 0.0) fail(Errc::DomainError, "points must avoid the origin");
    inv_norms_(i) = 1.0 / norm;
  }
  // duplicate norms give identical kernel rows
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(inv_norms_(i) - inv_norms_(j)) < 1e-14)
        fail(Errc::SingularMatrix, "points " + std::to_string(i) + " and " + std::to_string(j) +
                                       " share a norm; the kernel matrix is singular");
    }
  // sigma at the median consecutive gap of the sorted reciprocal norms: the
  // kernel must resolve neighboring nodes or the system degenerates
  if (n < 2) {
    sigma_ = 1.0;
  } else {
    std::vector<double> sorted(inv_norms_.data(), inv_norms_.data() + n);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> gaps;
    for (std::size_t i = 1; i < sorted.size(); ++i) gaps.push_back(sorted[i] - sorted[i - 1]);
    std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2), gaps.end());
    sigma_ = gaps[gaps.size() / 2];
  }

  Eigen::MatrixXd phi(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) phi(i, j) = kernel(std::abs(inv_norms_(i) - inv_norms_(j)));
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(phi);
  coeffs_ = lu.solve(points);
  // one round of iterative refinement keeps node reproduction tight
  coeffs_ += lu.solve(points - phi * coeffs_);
}

double RbfInterpolant::kernel(double r) const { return std::exp(-(r * r) / (sigma_ * sigma_)); }

Eigen::Vector3d RbfInterpolant::operator()(const Eigen::Vector3d& x) const {
  double norm = x.norm();
  if (norm == 0.0) fail(Errc::DomainError, "evaluation point must avoid the origin");
  double inv = 1.0 / norm;
  Eigen::RowVector3d acc = Eigen::RowVector3d::Zero();
  for (Eigen::Index k = 0; k < coeffs_.rows(); ++k)
    acc += kernel(std::abs(inv - inv_norms_(k))) * coeffs_.row(k);
  return acc.transpose();
}

}  // namespace ordtope
