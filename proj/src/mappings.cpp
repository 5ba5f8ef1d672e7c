#include "ordtope/mappings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "ordtope/equations.hpp"
#include "ordtope/rng.hpp"

namespace ordtope {

DistortionResult measure_distortion(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Metric dx,
                                    Metric dy) {
  if (x.rows() != y.rows()) fail(Errc::ShapeError, "domain and image point counts differ");
  if (x.rows() < 2) fail(Errc::ParameterError, "distortion needs at least two points");
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
  std::size_t pairs = 0;
  bool any = false;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) {
      double dd = point_distance(x.row(i), x.row(j), dx);
      double di = point_distance(y.row(i), y.row(j), dy);
      ++pairs;
      if (dd == 0.0) {
        if (di > 0.0) max_ratio = std::numeric_limits<double>::infinity();
        continue;
      }
      any = true;
      double r = di / dd;
      min_ratio = std::min(min_ratio, r);
      max_ratio = std::max(max_ratio, r);
    }
  }
  if (!any) fail(Errc::DomainError, "all domain pairs coincide; distortion undefined");
  DistortionResult result;
  result.pair_count = pairs;
  result.k1 = min_ratio == 0.0 ? std::numeric_limits<double>::infinity() : std::max(1.0, 1.0 / min_ratio);
  result.k2 = std::max(1.0, max_ratio);
  result.scale = (min_ratio > 0.0 && std::isfinite(max_ratio)) ? std::sqrt(min_ratio * max_ratio) : 1.0;
  return result;
}

std::size_t distortion_violations(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Metric dx,
                                  Metric dy, double k1, double k2) {
  if (x.rows() != y.rows()) fail(Errc::ShapeError, "domain and image point counts differ");
  std::size_t violations = 0;
  const double slack = 1e-12;  // absorbs rounding of the measured bounds
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) {
      double dd = point_distance(x.row(i), x.row(j), dx);
      double di = point_distance(y.row(i), y.row(j), dy);
      if (di < dd / k1 * (1.0 - slack) || di > dd * k2 * (1.0 + slack)) ++violations;
    }
  }
  return violations;
}

Eigen::MatrixXd random_projection(const Eigen::MatrixXd& x, int d, std::uint64_t seed,
                                  bool identity_override) {
  if (d < 1) fail(Errc::ParameterError, "target dimension must be >= 1");
  if (identity_override) {
    if (d != x.cols()) fail(Errc::ParameterError, "identity override requires d = dim(X)");
    return x;
  }
  Rng rng(seed);
  Eigen::MatrixXd p(x.cols(), d);
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j) p(i, j) = rng.normal();
  return x * p / std::sqrt(static_cast<double>(d));
}

namespace {

std::size_t ball_count(const Eigen::MatrixXd& pts, const Eigen::VectorXd& center, double eps,
                       Metric metric) {
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    if (point_distance(pts.row(i), center.transpose(), metric) <= eps) ++count;
  return count;
}

}  // namespace

DilationResult measure_dilation(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Metric dx,
                                Metric dy, const std::vector<double>& eps_grid, int widen_budget) {
  if (x.rows() != y.rows()) fail(Errc::ShapeError, "domain and image point counts differ");
  if (x.rows() < 1) fail(Errc::ParameterError, "dilation needs a nonempty space");
  DilationResult result;
  result.predicted_c2 =
      1.0 + std::log(static_cast<double>(x.rows())) / static_cast<double>(x.rows());
  double c1 = 1.0, c2 = 1.0;
  for (double eps : eps_grid) {
    // solution sets around every q_i = x_i
    std::vector<std::vector<int>> domain_sets(static_cast<std::size_t>(x.rows()));
    std::size_t max_domain = 0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      std::vector<int>& set = domain_sets[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < x.rows(); ++j)
        if (point_distance(x.row(j), x.row(i), dx) <= eps) set.push_back(static_cast<int>(j));
      max_domain = std::max(max_domain, set.size());
    }
    // widen eps' until f(X_i) subset of Y_i for every i (Eq. c3)
    double eps_prime = eps;
    int tries = 0;
    while (true) {
      bool contained = true;
      for (Eigen::Index i = 0; i < x.rows() && contained; ++i) {
        for (int j : domain_sets[static_cast<std::size_t>(i)]) {
          if (point_distance(y.row(j), y.row(i), dy) > eps_prime) {
            contained = false;
            break;
          }
        }
      }
      if (contained) break;
      if (++tries > widen_budget)
        fail(Errc::DilationInfeasible, "containment not reached within the widening budget");
      eps_prime *= 2.0;
    }
    std::size_t max_image = 0;
    for (Eigen::Index i = 0; i < y.rows(); ++i)
      max_image = std::max(max_image, ball_count(y, y.row(i).transpose(), eps_prime, dy));
    result.eps_prime.push_back(eps_prime);
    result.max_domain.push_back(max_domain);
    result.max_image.push_back(max_image);
    if (max_domain > 0 && max_image > 0) {
      c2 = std::max(c2, static_cast<double>(max_image) / static_cast<double>(max_domain));
      c1 = std::max(c1, static_cast<double>(max_domain) / static_cast<double>(max_image));
    }
  }
  result.c1 = c1;
  result.c2 = c2;
  return result;
}

MappingReport mapping_report(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Metric dx, Metric dy,
                             const std::vector<double>& eps_grid) {
  MappingReport report;
  DistortionResult distortion = measure_distortion(x, y, dx, dy);
  DilationResult dilation = measure_dilation(x, y, dx, dy, eps_grid);
  report.k1 = distortion.k1;
  report.k2 = distortion.k2;
  report.c1 = dilation.c1;
  report.c2 = dilation.c2;
  report.pair_count = distortion.pair_count;
  report.violation_count = std::isfinite(distortion.k1) && std::isfinite(distortion.k2)
                               ? distortion_violations(x, y, dx, dy, distortion.k1, distortion.k2)
                               : 0;
  return report;
}

std::string mapping_report_json(const MappingReport& report) {
  nlohmann::json j{{"k1", report.k1},     {"k2", report.k2},
                   {"c1", report.c1},     {"c2", report.c2},
                   {"pair_count", report.pair_count}, {"violation_count", report.violation_count}};
  return j.dump();
}

BallCounts ball_counts(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double eps, double k1,
                       double k2, Metric dx, Metric dy) {
  if (x.rows() != y.rows()) fail(Errc::ShapeError, "domain and image point counts differ");
  BallCounts counts;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    counts.image_count = std::max(counts.image_count, ball_count(y, y.row(i).transpose(), eps, dy));
    counts.domain_wide =
        std::max(counts.domain_wide, ball_count(x, x.row(i).transpose(), eps * k1, dx));
    counts.domain_narrow =
        std::max(counts.domain_narrow, ball_count(x, x.row(i).transpose(), eps / k2, dx));
  }
  counts.inequality_holds =
      counts.image_count + counts.domain_narrow <= counts.domain_wide;
  return counts;
}

}  // namespace ordtope
