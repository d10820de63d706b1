#pragma once

// Shifted RBF networks  H(x) = sum_i w_i g(|x - c_i| - nu_i)  and the classic
// form  G(x) = sum_i w_i g(|x - c_i| / sigma_i), with least-squares and
// greedy fitting over a dictionary of (centroid, shift) atoms.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "srbf/activations.hpp"
#include "srbf/errors.hpp"
#include "srbf/geometry.hpp"
#include "srbf/point_io.hpp"

namespace srbf {

inline constexpr double kDefaultRidge = 1e-10;

struct ShiftedTerm {
  double weight;
  Point centroid;
  double shift;
};

class ShiftedRbfModel {
 public:
  ShiftedRbfModel(Activation activation, std::vector<ShiftedTerm> terms)
      : activation_(std::move(activation)), terms_(std::move(terms)) {
    detail::require(!terms_.empty(), "a model needs at least one term");
    dim_ = terms_.front().centroid.dim();
    for (const auto& t : terms_) {
      detail::require(t.centroid.dim() == dim_, "model centroids have inconsistent dimensions");
      detail::require(std::isfinite(t.weight) && std::isfinite(t.shift), "model terms must be finite");
    }
  }

  const Activation& activation() const { return activation_; }
  const std::vector<ShiftedTerm>& terms() const { return terms_; }
  std::size_t dim() const { return dim_; }

 private:
  Activation activation_;
  std::vector<ShiftedTerm> terms_;
  std::size_t dim_ = 0;
};

/// Sum over terms, in term order.
inline double eval_shifted(const ShiftedRbfModel& model, const Point& x) {
  detail::require(x.dim() == model.dim(), "evaluation point has the wrong dimension");
  double sum = 0.0;
  for (const auto& t : model.terms()) sum += t.weight * model.activation()(distance(x, t.centroid) - t.shift);
  return sum;
}

struct ClassicTerm {
  double weight;
  Point centroid;
  double smoothing;
};

class ClassicRbfModel {
 public:
  ClassicRbfModel(Activation activation, std::vector<ClassicTerm> terms)
      : activation_(std::move(activation)), terms_(std::move(terms)) {
    detail::require(!terms_.empty(), "a model needs at least one term");
    dim_ = terms_.front().centroid.dim();
    for (const auto& t : terms_) {
      detail::require(t.centroid.dim() == dim_, "model centroids have inconsistent dimensions");
      detail::require(t.smoothing > 0.0 && std::isfinite(t.smoothing), "smoothing factors must be positive");
    }
  }

  const Activation& activation() const { return activation_; }
  const std::vector<ClassicTerm>& terms() const { return terms_; }
  std::size_t dim() const { return dim_; }

 private:
  Activation activation_;
  std::vector<ClassicTerm> terms_;
  std::size_t dim_ = 0;
};

inline double eval_classic(const ClassicRbfModel& model, const Point& x) {
  detail::require(x.dim() == model.dim(), "evaluation point has the wrong dimension");
  double sum = 0.0;
  for (const auto& t : model.terms()) sum += t.weight * model.activation()(distance(x, t.centroid) / t.smoothing);
  return sum;
}

/// Finite sample of a compact set, optionally with target values.
class EvaluationGrid {
 public:
  explicit EvaluationGrid(std::vector<Point> samples, std::optional<std::vector<double>> targets = std::nullopt)
      : samples_(std::move(samples)), targets_(std::move(targets)) {
    detail::common_dimension(samples_, "grid samples");
    detail::require_distinct(samples_, distinctness_tolerance(samples_), "grid sample");
    if (targets_) {
      detail::require(targets_->size() == samples_.size(), "target count does not match sample count");
      for (double v : *targets_) detail::require(std::isfinite(v), "targets must be finite");
    }
  }

  std::size_t size() const { return samples_.size(); }
  std::size_t dim() const { return samples_.front().dim(); }
  const std::vector<Point>& samples() const { return samples_; }
  bool has_targets() const { return targets_.has_value(); }
  const std::vector<double>& targets() const {
    detail::require(targets_.has_value(), "grid has no targets");
    return *targets_;
  }

 private:
  std::vector<Point> samples_;
  std::optional<std::vector<double>> targets_;
};

/// Regular grid over [lo, hi]^d with `per_axis` points per axis, first
/// coordinate varying slowest.
inline std::vector<Point> lattice(std::size_t d, double lo, double hi, std::size_t per_axis) {
  detail::require(d >= 1 && per_axis >= 1, "lattice needs d >= 1 and at least one point per axis");
  std::vector<double> axis(per_axis);
  for (std::size_t i = 0; i < per_axis; ++i) {
    axis[i] = per_axis == 1 ? 0.5 * (lo + hi)
                            : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(per_axis - 1);
  }
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= per_axis;
  std::vector<Point> out;
  out.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<double> c(d);
    std::size_t rem = idx;
    for (std::size_t k = d; k-- > 0;) {
      c[k] = axis[rem % per_axis];
      rem /= per_axis;
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

struct ShiftGrid {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;

  double spacing() const { return count > 1 ? (max - min) / static_cast<double>(count - 1) : 0.0; }
  std::vector<double> values() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = min + spacing() * static_cast<double>(i);
    if (count > 1) v.back() = max;
    return v;
  }
};

/// `count` uniformly spaced shifts covering [lo - h, hi + h], h being the
/// grid spacing itself.
inline ShiftGrid shift_grid_covering(double lo, double hi, std::size_t count) {
  detail::require(count >= 1 && lo <= hi, "invalid shift range");
  if (count == 1) return {0.5 * (lo + hi), 0.5 * (lo + hi), 1};
  if (count < 4 || hi - lo <= 0.0) return {lo - 1.0, hi + 1.0, count};
  const double h = (hi - lo) / static_cast<double>(count - 3);
  return {lo - h, hi + h, count};
}

struct Atom {
  std::size_t centroid;  // index into Dictionary::centroids()
  double shift;
};

class Dictionary {
 public:
  Dictionary(std::vector<Point> centroids, ShiftGrid shifts, Activation activation, bool fixed_centroids)
      : centroids_(std::move(centroids)), shifts_(shifts), activation_(std::move(activation)),
        fixed_centroids_(fixed_centroids) {
    detail::require(!centroids_.empty(), "dictionary needs at least one centroid");
    detail::common_dimension(centroids_, "dictionary centroids");
    detail::require(shifts_.count >= 1, "shift grid needs at least one shift");
    detail::require(shifts_.min <= shifts_.max, "shift grid needs min <= max");
    detail::require(std::isfinite(shifts_.min) && std::isfinite(shifts_.max), "shift grid must be finite");
    detail::require_distinct(centroids_, distinctness_tolerance(centroids_), "dictionary centroid");
    const auto nu = shifts_.values();
    for (std::size_t c = 0; c < centroids_.size(); ++c)
      for (double v : nu) atoms_.push_back({c, v});
  }

  const std::vector<Point>& centroids() const { return centroids_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const ShiftGrid& shifts() const { return shifts_; }
  const Activation& activation() const { return activation_; }
  bool fixed_centroids() const { return fixed_centroids_; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<Point> centroids_;
  ShiftGrid shifts_;
  Activation activation_;
  bool fixed_centroids_;
  std::vector<Atom> atoms_;
};

/// Atoms restricted to the fixed centroids S.
inline Dictionary build_dictionary(const CentroidSet& S, ShiftGrid shifts, Activation g) {
  return Dictionary({S.points().begin(), S.points().end()}, shifts, std::move(g), true);
}

/// Free-centroid mode: any list of centroids, e.g. a lattice.
inline Dictionary build_dictionary(std::vector<Point> centroids, ShiftGrid shifts, Activation g) {
  return Dictionary(std::move(centroids), shifts, std::move(g), false);
}

inline double uniform_error(const ShiftedRbfModel& model, const EvaluationGrid& grid) {
  const auto& f = grid.targets();
  double worst = 0.0;
  for (std::size_t s = 0; s < grid.size(); ++s)
    worst = std::max(worst, std::abs(eval_shifted(model, grid.samples()[s]) - f[s]));
  return worst;
}

inline double uniform_error(const ClassicRbfModel& model, const EvaluationGrid& grid) {
  const auto& f = grid.targets();
  double worst = 0.0;
  for (std::size_t s = 0; s < grid.size(); ++s)
    worst = std::max(worst, std::abs(eval_classic(model, grid.samples()[s]) - f[s]));
  return worst;
}

struct FitReport {
  double rms = 0.0;
  double uniform_error = 0.0;
  double objective = 0.0;  // residual sum of squares + ridge * |w|^2
  std::size_t numerical_rank = 0;
  std::vector<std::size_t> dropped_atoms;
  std::vector<std::string> warnings;
};

struct FitResult {
  ShiftedRbfModel model;
  FitReport report;
};

namespace detail {

/// Design matrix: rows are samples, columns are atoms.
inline Eigen::MatrixXd design_matrix(const Dictionary& dict, const EvaluationGrid& grid) {
  detail::require(grid.dim() == dict.centroids().front().dim(), "grid and dictionary dimensions differ");
  Eigen::MatrixXd dist(grid.size(), dict.centroids().size());
  for (std::size_t s = 0; s < grid.size(); ++s)
    for (std::size_t c = 0; c < dict.centroids().size(); ++c)
      dist(s, c) = distance(grid.samples()[s], dict.centroids()[c]);
  Eigen::MatrixXd A(grid.size(), dict.size());
  const auto& g = dict.activation();
  for (std::size_t j = 0; j < dict.size(); ++j) {
    const auto& atom = dict.atoms()[j];
    for (std::size_t s = 0; s < grid.size(); ++s) A(s, j) = g(dist(s, atom.centroid) - atom.shift);
  }
  return A;
}

inline Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct LeastSquaresSolution {
  Eigen::VectorXd weights;
  std::size_t rank = 0;
};

/// Minimizes |A w - f|^2 + ridge |w|^2 through a thin SVD. With ridge = 0
/// singular values below max(rows, cols) * eps * s_max are discarded, which
/// yields the minimum-norm least-squares solution.
inline LeastSquaresSolution solve_least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& f,
                                                double ridge) {
  detail::require(ridge >= 0.0 && std::isfinite(ridge), "ridge must be nonnegative");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (!s.allFinite() || !svd.matrixU().allFinite()) throw NumericalError("SVD of the design matrix failed");
  const double smax = s.size() ? s(0) : 0.0;
  const double cutoff = static_cast<double>(std::max(A.rows(), A.cols())) *
                        std::numeric_limits<double>::epsilon() * smax;
  Eigen::VectorXd uf = svd.matrixU().transpose() * f;
  LeastSquaresSolution out;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double si = s(i);
    double phi = 0.0;
    if (ridge > 0.0) {
      phi = si / (si * si + ridge);
    } else if (si > cutoff) {
      phi = 1.0 / si;
    }
    if (si > cutoff) ++out.rank;
    uf(i) *= phi;
  }
  out.weights = svd.matrixV() * uf;
  return out;
}

}  // namespace detail

/// Least-squares weights for every atom of the dictionary. Atoms whose column
/// vanishes on the grid are dropped with a warning.
inline FitResult fit_least_squares(const Dictionary& dict, const EvaluationGrid& grid,
                                   double ridge = kDefaultRidge) {
  detail::require(grid.has_targets(), "fitting needs target values");
  const Eigen::MatrixXd full = detail::design_matrix(dict, grid);

  FitReport report;
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < dict.size(); ++j) {
    if (full.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff() == 0.0) {
      report.dropped_atoms.push_back(j);
    } else {
      kept.push_back(j);
    }
  }
  if (!report.dropped_atoms.empty()) {
    report.warnings.push_back("dropped " + std::to_string(report.dropped_atoms.size()) +
                              " atom(s) that vanish on every sample");
  }
  if (kept.empty()) throw NumericalError("every dictionary atom vanishes on the grid");

  Eigen::MatrixXd A(full.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j)
    A.col(static_cast<Eigen::Index>(j)) = full.col(static_cast<Eigen::Index>(kept[j]));
  const Eigen::VectorXd f = detail::to_vector(grid.targets());
  const auto sol = detail::solve_least_squares(A, f, ridge);

  std::vector<ShiftedTerm> terms;
  terms.reserve(kept.size());
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const auto& atom = dict.atoms()[kept[j]];
    terms.push_back({sol.weights(static_cast<Eigen::Index>(j)), dict.centroids()[atom.centroid], atom.shift});
  }
  ShiftedRbfModel model(dict.activation(), std::move(terms));

  const Eigen::VectorXd residual = A * sol.weights - f;
  report.numerical_rank = sol.rank;
  report.objective = residual.squaredNorm() + ridge * sol.weights.squaredNorm();
  report.rms = std::sqrt(residual.squaredNorm() / static_cast<double>(grid.size()));
  report.uniform_error = uniform_error(model, grid);
  return {std::move(model), std::move(report)};
}

struct GreedyResult {
  ShiftedRbfModel model;
  double uniform_error = 0.0;
  bool met_tolerance = false;
  std::vector<std::size_t> selected;  // atom indices, in selection order
};

/// Orthogonal matching pursuit: add the atom whose normalized column is most
/// correlated with the residual (lowest index on ties), refit all selected
/// weights, stop at `max_terms` atoms or once the uniform error drops below
/// `tol`.
inline GreedyResult greedy_fit(const Dictionary& dict, const EvaluationGrid& grid, std::size_t max_terms,
                               double tol, double ridge = 0.0) {
  detail::require(max_terms >= 1, "greedy fit needs max_terms >= 1");
  detail::require(grid.has_targets(), "fitting needs target values");
  const Eigen::MatrixXd A = detail::design_matrix(dict, grid);
  const Eigen::VectorXd f = detail::to_vector(grid.targets());
  const Eigen::VectorXd norms = A.colwise().norm();

  std::vector<std::size_t> selected;
  std::vector<bool> used(dict.size(), false);
  Eigen::VectorXd residual = f;
  Eigen::VectorXd weights;
  double err = residual.cwiseAbs().maxCoeff();

  while (selected.size() < std::min(max_terms, dict.size()) && !(err < tol)) {
    std::size_t best = dict.size();
    double best_score = -1.0;
    for (std::size_t j = 0; j < dict.size(); ++j) {
      const auto col = static_cast<Eigen::Index>(j);
      if (used[j] || norms(col) == 0.0) continue;
      const double score = std::abs(A.col(col).dot(residual)) / norms(col);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    if (best == dict.size()) break;
    used[best] = true;
    selected.push_back(best);

    Eigen::MatrixXd sub(A.rows(), static_cast<Eigen::Index>(selected.size()));
    for (std::size_t k = 0; k < selected.size(); ++k)
      sub.col(static_cast<Eigen::Index>(k)) = A.col(static_cast<Eigen::Index>(selected[k]));
    weights = detail::solve_least_squares(sub, f, ridge).weights;
    residual = f - sub * weights;
    err = residual.cwiseAbs().maxCoeff();
  }
  if (selected.empty()) throw NumericalError("greedy fit could not select any atom");

  std::vector<ShiftedTerm> terms;
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const auto& atom = dict.atoms()[selected[k]];
    terms.push_back({weights(static_cast<Eigen::Index>(k)), dict.centroids()[atom.centroid], atom.shift});
  }
  GreedyResult out{ShiftedRbfModel(dict.activation(), std::move(terms)), 0.0, false, std::move(selected)};
  out.uniform_error = uniform_error(out.model, grid);
  out.met_tolerance = out.uniform_error < tol;
  return out;
}

struct ClassicFitResult {
  ClassicRbfModel model;
  double uniform_error = 0.0;
  double rms = 0.0;
};

/// Least squares over all (centroid, smoothing) pairs of the classic form.
inline ClassicFitResult fit_classic_least_squares(const std::vector<Point>& centroids,
                                                  const std::vector<double>& smoothings, const Activation& g,
                                                  const EvaluationGrid& grid, double ridge = kDefaultRidge) {
  detail::require(!centroids.empty() && !smoothings.empty(), "classic fit needs centroids and smoothings");
  detail::require(grid.has_targets(), "fitting needs target values");
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto m = static_cast<Eigen::Index>(centroids.size() * smoothings.size());
  Eigen::MatrixXd A(n, m);
  std::vector<ClassicTerm> terms;
  for (const auto& c : centroids) {
    for (double sigma : smoothings) {
      detail::require(sigma > 0.0, "smoothing factors must be positive");
      const auto col = static_cast<Eigen::Index>(terms.size());
      for (Eigen::Index s = 0; s < n; ++s)
        A(s, col) = g(distance(grid.samples()[static_cast<std::size_t>(s)], c) / sigma);
      terms.push_back({0.0, c, sigma});
    }
  }
  const Eigen::VectorXd f = detail::to_vector(grid.targets());
  const auto sol = detail::solve_least_squares(A, f, ridge);
  for (std::size_t j = 0; j < terms.size(); ++j) terms[j].weight = sol.weights(static_cast<Eigen::Index>(j));
  ClassicFitResult out{ClassicRbfModel(g, std::move(terms)), 0.0, 0.0};
  out.uniform_error = uniform_error(out.model, grid);
  out.rms = std::sqrt((A * sol.weights - f).squaredNorm() / static_cast<double>(n));
  return out;
}

// Model files:
//   activation <id>
//   dimension <d>
//   <weight> <shift> <c_1> ... <c_d>      one line per term
// Numbers are written in shortest round-trip form.

inline void write_model(std::ostream& out, const ShiftedRbfModel& model) {
  out << "# shifted rbf model: weight shift centroid...\n";
  out << "activation " << model.activation().id() << '\n';
  out << "dimension " << model.dim() << '\n';
  for (const auto& t : model.terms()) {
    out << io::format_double(t.weight) << ' ' << io::format_double(t.shift);
    for (std::size_t i = 0; i < t.centroid.dim(); ++i) out << ' ' << io::format_double(t.centroid[i]);
    out << '\n';
  }
}

inline ShiftedRbfModel read_model(std::istream& in, const std::string& source = "<model>") {
  std::optional<std::string> activation;
  std::optional<std::size_t> dim;
  std::vector<ShiftedTerm> terms;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head) || head.front() == '#') continue;
    if (head == "activation") {
      std::string id;
      detail::require(static_cast<bool>(ss >> id), where + ": missing activation id");
      activation = id;
      continue;
    }
    if (head == "dimension") {
      std::string tok;
      detail::require(static_cast<bool>(ss >> tok), where + ": missing dimension");
      const double d = io::parse_double(tok, where);
      detail::require(d >= 1 && d == std::floor(d), where + ": invalid dimension");
      dim = static_cast<std::size_t>(d);
      continue;
    }
    detail::require(dim.has_value(), where + ": term before dimension line");
    std::vector<double> v{io::parse_double(head, where)};
    std::string tok;
    while (ss >> tok) v.push_back(io::parse_double(tok, where));
    detail::require(v.size() == *dim + 2, where + ": expected " + std::to_string(*dim + 2) + " numbers");
    terms.push_back({v[0], Point(std::vector<double>(v.begin() + 2, v.end())), v[1]});
  }
  detail::require(activation.has_value(), source + ": missing activation line");
  return ShiftedRbfModel(activation_from_id(*activation), std::move(terms));
}

}  // namespace srbf
