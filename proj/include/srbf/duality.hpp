#pragma once

// Annihilating functionals F(f) = sum_j lambda_j f(x_j) built from cycle
// witnesses. F vanishes on every sum of radial functions about the
// centroids, so for any such h and any target f
//
//     max_j |f(x_j) - h(x_j)|  >=  |F(f)| / sum_j |lambda_j|.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srbf/cycles.hpp"
#include "srbf/errors.hpp"
#include "srbf/geometry.hpp"
#include "srbf/network.hpp"

namespace srbf {

class AnnihilatingFunctional {
 public:
  /// Restricts the witness to its support after checking it against X and S.
  static AnnihilatingFunctional from_witness(const CycleWitness& witness, const PointConfiguration& X,
                                             const CentroidSet& S, double tol) {
    if (!verify_witness(X, S, witness.lambda(), tol)) {
      throw InputError("witness does not satisfy the level-sum equations");
    }
    AnnihilatingFunctional F;
    F.support_ = witness.support();
    for (PointIndex p : F.support_) {
      const exact::Integer l = witness.lambda()[p];
      F.lambda_.push_back(l);
      F.norm_ += static_cast<double>(l < 0 ? -l : l);
    }
    return F;
  }

  const IndexSet& support() const { return support_; }
  const std::vector<exact::Integer>& lambda() const { return lambda_; }
  double norm() const { return norm_; }

 private:
  AnnihilatingFunctional() = default;
  IndexSet support_;
  std::vector<exact::Integer> lambda_;
  double norm_ = 0.0;
};

/// sum_j lambda_j * values_j, values aligned with the support.
inline double functional_apply(const AnnihilatingFunctional& F, std::span<const double> values) {
  detail::require(values.size() == F.support().size(),
                  "expected " + std::to_string(F.support().size()) + " values, got " +
                      std::to_string(values.size()));
  double sum = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) sum += static_cast<double>(F.lambda()[j]) * values[j];
  return sum;
}

/// sign(lambda_j) on the support; |F(target)| equals the norm of F.
inline std::vector<double> worst_case_target(const AnnihilatingFunctional& F) {
  std::vector<double> v;
  v.reserve(F.lambda().size());
  for (auto l : F.lambda()) v.push_back(l > 0 ? 1.0 : -1.0);
  return v;
}

/// The same target on all n points of the configuration, zero off the support.
inline std::vector<double> worst_case_target(const AnnihilatingFunctional& F, std::size_t n) {
  std::vector<double> v(n, 0.0);
  const auto on_support = worst_case_target(F);
  for (std::size_t j = 0; j < F.support().size(); ++j) {
    detail::require(F.support()[j] < n, "configuration is smaller than the functional's support");
    v[F.support()[j]] = on_support[j];
  }
  return v;
}

inline double lower_bound(const AnnihilatingFunctional& F, std::span<const double> values) {
  return std::abs(functional_apply(F, values)) / F.norm();
}

/// Values of `values_on_X` (one per point of X) at the support of F.
inline std::vector<double> restrict_to_support(const AnnihilatingFunctional& F,
                                               std::span<const double> values_on_X) {
  std::vector<double> out;
  for (PointIndex p : F.support()) {
    detail::require(p < values_on_X.size(), "value list is shorter than the configuration");
    out.push_back(values_on_X[p]);
  }
  return out;
}

namespace detail {

inline void require_centroids_in(const ShiftedRbfModel& model, const CentroidSet& S) {
  const double tol = distinctness_tolerance(S.points());
  for (std::size_t t = 0; t < model.terms().size(); ++t) {
    bool found = false;
    for (const auto& c : S.points()) {
      if (c.dim() == model.dim() && distance(model.terms()[t].centroid, c) <= tol) {
        found = true;
        break;
      }
    }
    if (!found) throw InputError("model term " + std::to_string(t) + " has a centroid outside S");
  }
}

}  // namespace detail

/// |F(H)| for a model whose centroids all lie in S; zero up to rounding.
inline double check_annihilation(const AnnihilatingFunctional& F, const ShiftedRbfModel& model,
                                 const PointConfiguration& X, const CentroidSet& S) {
  detail::require_centroids_in(model, S);
  std::vector<double> values;
  for (PointIndex p : F.support()) values.push_back(eval_shifted(model, X[p]));
  return std::abs(functional_apply(F, values));
}

/// 1e-9 * (1 + sum_i |w_i| * max |g| over the arguments the model sees on the
/// support).
inline double annihilation_tolerance(const AnnihilatingFunctional& F, const ShiftedRbfModel& model,
                                     const PointConfiguration& X) {
  double scale = 0.0;
  for (const auto& t : model.terms()) {
    double sup = 0.0;
    for (PointIndex p : F.support())
      sup = std::max(sup, std::abs(model.activation()(distance(X[p], t.centroid) - t.shift)));
    scale += std::abs(t.weight) * sup;
  }
  return kRelativeTolerance * (1.0 + scale);
}

}  // namespace srbf
