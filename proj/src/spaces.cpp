#include "ordtope/spaces.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace ordtope {

Eigen::MatrixXd build_distance_matrix(const FiniteSpace& space) {
  const Eigen::Index n = space.size();
  if (n < 1) fail(Errc::ShapeError, "space must contain at least one point");
  if (space.custom) {
    if (space.custom->rows() != n || space.custom->cols() != n)
      fail(Errc::ShapeError, "custom distance matrix does not match the point count");
    validate_distance_matrix(*space.custom);
    return *space.custom;
  }
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double v = point_distance(space.points.row(i), space.points.row(j), space.metric);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

void validate_distance_matrix(const Eigen::MatrixXd& d, double tol) {
  if (d.rows() != d.cols()) fail(Errc::ShapeError, "distance matrix must be square");
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (std::abs(d(i, i)) > tol) fail(Errc::ShapeError, "distance matrix diagonal must be zero");
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (d(i, j) < -tol) fail(Errc::ShapeError, "distances must be nonnegative");
      if (std::abs(d(i, j) - d(j, i)) > tol) fail(Errc::ShapeError, "distance matrix must be symmetric");
    }
  }
}

MetricReport check_metric_axioms(const Eigen::MatrixXd& d, double tol) {
  MetricReport report;
  report.tolerance = tol;
  if (d.rows() != d.cols()) fail(Errc::ShapeError, "distance matrix must be square");
  const Eigen::Index n = d.rows();
  report.zero_diag = true;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(d(i, i)) > tol) report.zero_diag = false;
  report.symmetric = true;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(d(i, j) - d(j, i)) > tol) report.symmetric = false;
  report.triangle_ok = true;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (d(i, k) > d(i, j) + d(j, k) + tol) {
          report.triangle_ok = false;
          report.violations.emplace_back(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k));
        }
      }
    }
  return report;
}

CutMetricResult cut_metric(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii, Metric ball_metric) {
  const Eigen::Index n = points.rows();
  if (radii.size() != n) fail(Errc::ShapeError, "one radius per point required");
  CutMetricResult result;
  result.d = Eigen::MatrixXd::Zero(n, n);
  result.is_discrete = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      bool intersect = point_distance(points.row(i), points.row(j), ball_metric) <= radii(i) + radii(j);
      if (intersect) {
        result.d(i, j) = 1.0;
        result.d(j, i) = 1.0;
        result.is_discrete = false;
      }
    }
  }
  return result;
}

CutMetricResult cut_metric(const Eigen::MatrixXd& points, double radius, Metric ball_metric) {
  return cut_metric(points, Eigen::VectorXd::Constant(points.rows(), radius), ball_metric);
}

double characteristic_radius(const Eigen::MatrixXd& d) {
  if (d.rows() != d.cols()) fail(Errc::ShapeError, "distance matrix must be square");
  if (d.rows() < 2) fail(Errc::UndefinedRadius, "characteristic radius needs at least two points");
  double r = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    for (Eigen::Index j = 0; j < d.cols(); ++j)
      if (i != j) r = std::min(r, d(i, j));
  return r;
}

double sup_norm(const Eigen::MatrixXd& points) {
  if (points.size() == 0) fail(Errc::ShapeError, "empty point set");
  return points.cwiseAbs().maxCoeff();
}

double compactness(const FiniteSpace& space) {
  return sup_norm(space.points) - characteristic_radius(build_distance_matrix(space));
}

int code_length_bound(std::uint64_t max_abs_value) {
  int bits = 0;
  while (max_abs_value > 0) {
    ++bits;
    max_abs_value >>= 1;
  }
  return bits;
}

std::vector<std::uint8_t> fixed_width_encode(const Eigen::MatrixXi& points, int bits) {
  if (bits < 0 || bits > 31) fail(Errc::ParameterError, "bit width must be in [0, 31]");
  std::vector<std::uint8_t> out;
  std::uint64_t acc = 0;
  int used = 0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      int v = points(i, j);
      if (v < 0 || (bits < 31 && v >= (1 << bits)))
        fail(Errc::ParameterError, "coordinate exceeds the declared bit width");
      acc |= static_cast<std::uint64_t>(v) << used;
      used += bits;
      while (used >= 8) {
        out.push_back(static_cast<std::uint8_t>(acc & 0xff));
        acc >>= 8;
        used -= 8;
      }
    }
  }
  if (used > 0) out.push_back(static_cast<std::uint8_t>(acc & 0xff));
  return out;
}

Eigen::MatrixXi fixed_width_decode(const std::vector<std::uint8_t>& bytes, Eigen::Index rows,
                                   Eigen::Index cols, int bits) {
  if (bits < 0 || bits > 31) fail(Errc::ParameterError, "bit width must be in [0, 31]");
  Eigen::MatrixXi points = Eigen::MatrixXi::Zero(rows, cols);
  std::uint64_t acc = 0;
  int have = 0;
  std::size_t cursor = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      while (have < bits) {
        if (cursor >= bytes.size()) fail(Errc::ShapeError, "byte stream too short for the declared shape");
        acc |= static_cast<std::uint64_t>(bytes[cursor++]) << have;
        have += 8;
      }
      points(i, j) = bits == 0 ? 0 : static_cast<int>(acc & ((std::uint64_t{1} << bits) - 1));
      acc >>= bits;
      have -= bits;
    }
  }
  return points;
}

FiniteSpace space_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParameterError, std::string("bad space JSON: ") + e.what());
  }
  if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
    fail(Errc::ShapeError, "space JSON needs a nonempty points array");
  const auto& pts = j["points"];
  const std::size_t dim = pts[0].size();
  FiniteSpace space;
  space.points.resize(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].size() != dim) fail(Errc::ShapeError, "point dimensions must be uniform");
    for (std::size_t d = 0; d < dim; ++d)
      space.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = pts[i][d].get<double>();
  }
  std::string metric = j.value("metric", "l2");
  if (metric == "l1")
    space.metric = Metric::L1;
  else if (metric == "l2")
    space.metric = Metric::L2;
  else if (metric == "linf")
    space.metric = Metric::Linf;
  else
    fail(Errc::ParameterError, "unknown metric: " + metric);
  return space;
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ordtope
