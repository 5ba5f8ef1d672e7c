#include "ordtope/equations.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "ordtope/rng.hpp"

namespace ordtope {

DistanceEquation ball(const Eigen::VectorXd& q, double eps, Metric metric) {
  DistanceEquation eq;
  eq.metric = metric;
  eq.atoms.push_back({q, Interval{-eps, 0.0, true, true}});
  return eq;
}

DistanceEquation ball_here(double eps, Metric metric) {
  DistanceEquation eq;
  eq.metric = metric;
  eq.atoms.push_back({std::nullopt, Interval{-eps, 0.0, true, true}});
  return eq;
}

namespace {

std::vector<int> solve_atom(const EquationAtom& atom, Metric metric, const FiniteSpace& space,
                            const std::optional<Eigen::VectorXd>& query) {
  const Eigen::VectorXd* q = atom.q ? &*atom.q : (query ? &*query : nullptr);
  if (!q) fail(Errc::ShapeError, "atom has no query point and none was supplied");
  if (q->size() != space.dim()) fail(Errc::ShapeError, "query dimension does not match the space");
  Interval band = atom.k.negated();  // distances satisfying d + k = 0
  std::vector<int> out;
  for (Eigen::Index i = 0; i < space.size(); ++i) {
    double d = point_distance(space.points.row(i), q->transpose(), metric);
    if (band.contains(d)) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> set_union(std::vector<int> a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_intersect(std::vector<int> a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void collect_atoms(const DistanceEquation& eq, std::vector<const EquationAtom*>& atoms,
                   std::vector<Metric>& metrics) {
  for (const auto& a : eq.atoms) {
    atoms.push_back(&a);
    metrics.push_back(eq.metric);
  }
  for (const auto& c : eq.children) collect_atoms(c, atoms, metrics);
}

}  // namespace

std::vector<int> solve(const DistanceEquation& eq, const FiniteSpace& space,
                       const std::optional<Eigen::VectorXd>& query) {
  if (space.size() == 0) return {};
  std::vector<std::vector<int>> parts;
  for (const auto& atom : eq.atoms) parts.push_back(solve_atom(atom, eq.metric, space, query));
  for (const auto& child : eq.children) parts.push_back(solve(child, space, query));
  if (parts.empty()) return {};
  std::vector<int> acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = eq.op == DistanceEquation::Op::Union ? set_union(std::move(acc), parts[i])
                                               : set_intersect(std::move(acc), parts[i]);
  return acc;
}

int solve_decision(const DistanceEquation& eq, const FiniteSpace& space,
                   const std::optional<Eigen::VectorXd>& query, std::uint64_t seed) {
  std::vector<int> solution = solve(eq, space, query);
  if (solution.empty()) fail(Errc::NoSolution, "decision version of an empty solution set");
  Rng rng(seed);
  return solution[static_cast<std::size_t>(rng.below(solution.size()))];
}

std::size_t partition_cardinality(const DistanceEquation& eq, const FiniteSpace& space,
                                  const std::optional<Eigen::VectorXd>& query) {
  std::vector<const EquationAtom*> atoms;
  std::vector<Metric> metrics;
  collect_atoms(eq, atoms, metrics);
  std::set<std::vector<bool>> cells;
  for (Eigen::Index i = 0; i < space.size(); ++i) {
    std::vector<bool> pattern;
    pattern.reserve(atoms.size());
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      const Eigen::VectorXd* q = atoms[a]->q ? &*atoms[a]->q : (query ? &*query : nullptr);
      if (!q) fail(Errc::ShapeError, "atom has no query point and none was supplied");
      double d = point_distance(space.points.row(i), q->transpose(), metrics[a]);
      pattern.push_back(atoms[a]->k.negated().contains(d));
    }
    cells.insert(std::move(pattern));
  }
  return cells.size();
}

double hausdorff(const Eigen::MatrixXd& x, const Eigen::MatrixXd& q, Metric metric) {
  if (x.rows() == 0 || q.rows() == 0) fail(Errc::DomainError, "Hausdorff distance of an empty set");
  if (x.cols() != q.cols()) fail(Errc::ShapeError, "point dimensions do not match");
  auto directed = [&](const Eigen::MatrixXd& from, const Eigen::MatrixXd& to) {
    double sup = 0.0;
    for (Eigen::Index i = 0; i < from.rows(); ++i) {
      double inf = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < to.rows(); ++j)
        inf = std::min(inf, point_distance(from.row(i), to.row(j), metric));
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(directed(x, q), directed(q, x));
}

std::vector<int> hausdorff_eq(const std::vector<Eigen::MatrixXd>& subsets, const Eigen::MatrixXd& q,
                              Metric metric, const Interval& k) {
  Interval band = k.negated();
  std::vector<int> out;
  for (std::size_t i = 0; i < subsets.size(); ++i)
    if (band.contains(hausdorff(subsets[i], q, metric))) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> hausdorff_eq(const std::vector<Eigen::MatrixXd>& subsets, const Eigen::MatrixXd& q,
                              Metric metric, double eps1, double eps2) {
  return hausdorff_eq(subsets, q, metric, Interval{-eps2, -eps1, true, true});
}

void validate_arrangement(const Arrangement& arr) {
  if (arr.a.size() != arr.b.size()) fail(Errc::ShapeError, "arrangement A/b length mismatch");
  for (std::size_t i = 0; i < arr.a.size(); ++i) {
    if (arr.a[i].rows() != arr.b[i].size()) fail(Errc::ShapeError, "A_i rows must match b_i length");
    if (arr.a[i].rows() == 0) fail(Errc::ShapeError, "arrangement systems must be non-trivial");
    for (Eigen::Index r = 0; r < arr.a[i].rows(); ++r)
      if (arr.a[i].row(r).isZero(0.0)) fail(Errc::ShapeError, "arrangement rows must be nonzero");
  }
}

std::vector<int> point_location_direct(const Arrangement& arr, const Eigen::VectorXd& q) {
  validate_arrangement(arr);
  std::vector<int> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (arr.a[i].cols() != q.size()) fail(Errc::ShapeError, "arrangement dimension mismatch");
    if (((arr.a[i] * q).array() <= arr.b[i].array()).all()) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> point_location_sgn(const Arrangement& arr, const Eigen::VectorXd& q) {
  validate_arrangement(arr);
  const Eigen::Index n = q.size();
  std::vector<int> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (arr.a[i].cols() != n) fail(Errc::ShapeError, "arrangement dimension mismatch");
    if (arr.a[i].rows() != n)
      fail(Errc::FormulationMismatch, "sgn*-sum form needs m_i = dim q (use the direct form)");
    Eigen::VectorXd residual = arr.a[i] * q - arr.b[i];
    long sum = n;
    for (Eigen::Index j = 0; j < n; ++j) sum += sgn_star(residual(j));
    if (sum == 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> point_location_cosine(const Arrangement& arr, const Eigen::VectorXd& q) {
  validate_arrangement(arr);
  const Eigen::Index n = q.size();
  std::vector<int> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (arr.a[i].cols() != n) fail(Errc::ShapeError, "arrangement dimension mismatch");
    if (arr.a[i].rows() != n)
      fail(Errc::FormulationMismatch, "cosine form needs m_i = dim q (use the direct form)");
    Eigen::VectorXd residual = arr.a[i] * q - arr.b[i];
    Eigen::VectorXd vertex(n);
    for (Eigen::Index j = 0; j < n; ++j) vertex(j) = sgn_star(residual(j));
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    double c = vertex.dot(ones) / (vertex.norm() * ones.norm());
    double value = static_cast<double>(n) + static_cast<double>(n) * c;
    // exact values are spaced by 2; half-gap tolerance
    if (std::abs(value) < 1.0) out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

nlohmann::json interval_to_json(const Interval& k) {
  return nlohmann::json{{"interval", {k.lo, k.hi}}, {"lo_closed", k.lo_closed}, {"hi_closed", k.hi_closed}};
}

DistanceEquation equation_from_json_node(const nlohmann::json& j) {
  DistanceEquation eq;
  std::string metric = j.value("metric", "l2");
  if (metric == "l1")
    eq.metric = Metric::L1;
  else if (metric == "l2")
    eq.metric = Metric::L2;
  else if (metric == "linf")
    eq.metric = Metric::Linf;
  else
    fail(Errc::ParameterError, "unknown metric: " + metric);
  std::string op = j.value("op", "union");
  if (op == "union")
    eq.op = DistanceEquation::Op::Union;
  else if (op == "intersect")
    eq.op = DistanceEquation::Op::Intersect;
  else
    fail(Errc::ParameterError, "unknown op: " + op);
  if (j.contains("atoms")) {
    for (const auto& a : j["atoms"]) {
      EquationAtom atom;
      if (a.contains("q")) {
        Eigen::VectorXd q(a["q"].size());
        for (std::size_t i = 0; i < a["q"].size(); ++i) q(static_cast<Eigen::Index>(i)) = a["q"][i].get<double>();
        atom.q = std::move(q);
      }
      if (!a.contains("interval") || a["interval"].size() != 2)
        fail(Errc::ParameterError, "atom needs an [lo, hi] interval");
      atom.k.lo = a["interval"][0].get<double>();
      atom.k.hi = a["interval"][1].get<double>();
      atom.k.lo_closed = a.value("lo_closed", true);
      atom.k.hi_closed = a.value("hi_closed", true);
      eq.atoms.push_back(std::move(atom));
    }
  }
  if (j.contains("children"))
    for (const auto& c : j["children"]) eq.children.push_back(equation_from_json_node(c));
  return eq;
}

nlohmann::json equation_to_json_node(const DistanceEquation& eq) {
  nlohmann::json j;
  j["metric"] = eq.metric == Metric::L1 ? "l1" : eq.metric == Metric::L2 ? "l2" : "linf";
  j["op"] = eq.op == DistanceEquation::Op::Union ? "union" : "intersect";
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : eq.atoms) {
    nlohmann::json atom = interval_to_json(a.k);
    if (a.q) {
      atom["q"] = nlohmann::json::array();
      for (Eigen::Index i = 0; i < a.q->size(); ++i) atom["q"].push_back((*a.q)(i));
    }
    j["atoms"].push_back(std::move(atom));
  }
  j["children"] = nlohmann::json::array();
  for (const auto& c : eq.children) j["children"].push_back(equation_to_json_node(c));
  return j;
}

}  // namespace

DistanceEquation equation_from_json(const std::string& text) {
  try {
    return equation_from_json_node(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParameterError, std::string("bad equation JSON: ") + e.what());
  }
}

std::string equation_to_json(const DistanceEquation& eq) { return equation_to_json_node(eq).dump(); }

}  // namespace ordtope
