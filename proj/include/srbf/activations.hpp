#pragma once

// Activation functions g: R -> R and numerical checks of the hypotheses the
// density theorems place on them. The checks are probes, not proofs: a
// verdict is Pass or Fail only when the numerics are unambiguous and Unknown
// otherwise. Built-ins carry analytically known flags that take precedence
// over probing.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srbf/errors.hpp"
#include "srbf/point_io.hpp"
#include "srbf/quadrature.hpp"

namespace srbf {

struct AnalyticFlags {
  bool continuous = true;
  bool bounded = true;
  bool monotone = false;
  bool nonconstant = true;
  std::optional<double> limit_plus;   // limit at +infinity
  std::optional<double> limit_minus;  // limit at -infinity
};

class Activation {
 public:
  using Function = std::function<double(double)>;

  Activation(std::string id, Function fn, std::optional<AnalyticFlags> flags = std::nullopt)
      : id_(std::move(id)), fn_(std::move(fn)), flags_(std::move(flags)) {
    detail::require(static_cast<bool>(fn_), "activation needs a function");
  }

  const std::string& id() const { return id_; }
  const std::optional<AnalyticFlags>& declared_flags() const { return flags_; }
  double operator()(double t) const { return fn_(t); }

 private:
  std::string id_;
  Function fn_;
  std::optional<AnalyticFlags> flags_;
};

namespace activations {

inline double logistic(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

inline Activation gaussian() {
  return {"gaussian", [](double t) { return std::exp(-t * t); },
          AnalyticFlags{.monotone = false, .limit_plus = 0.0, .limit_minus = 0.0}};
}

inline Activation logistic_sigmoid() {
  return {"logistic", logistic, AnalyticFlags{.monotone = true, .limit_plus = 1.0, .limit_minus = 0.0}};
}

inline Activation sech() {
  return {"sech",
          [](double t) {
            const double a = std::abs(t);
            const double e = std::exp(-a);
            return 2.0 * e / (1.0 + e * e);
          },
          AnalyticFlags{.monotone = false, .limit_plus = 0.0, .limit_minus = 0.0}};
}

inline Activation triangular_bump() {
  return {"triangular-bump", [](double t) { return std::max(0.0, 1.0 - std::abs(t)); },
          AnalyticFlags{.monotone = false, .limit_plus = 0.0, .limit_minus = 0.0}};
}

inline Activation inverse_quadratic() {
  return {"inverse-quadratic", [](double t) { return 1.0 / (1.0 + t * t); },
          AnalyticFlags{.monotone = false, .limit_plus = 0.0, .limit_minus = 0.0}};
}

inline Activation constant_one() {
  return {"constant-one", [](double) { return 1.0; },
          AnalyticFlags{.monotone = true, .nonconstant = false, .limit_plus = 1.0, .limit_minus = 1.0}};
}

}  // namespace activations

inline std::vector<std::string> builtin_names() {
  return {"gaussian", "logistic", "sech", "triangular-bump", "inverse-quadratic", "constant-one"};
}

inline Activation builtin(std::string_view name) {
  if (name == "gaussian") return activations::gaussian();
  if (name == "logistic") return activations::logistic_sigmoid();
  if (name == "sech") return activations::sech();
  if (name == "triangular-bump") return activations::triangular_bump();
  if (name == "inverse-quadratic") return activations::inverse_quadratic();
  if (name == "constant-one") return activations::constant_one();
  throw InputError("unknown activation '" + std::string(name) + "'");
}

/// h(t) = g(t + alpha) - g(t - alpha). Continuous monotone bounded g gives an
/// integrable h.
inline Activation funahashi_transform(const Activation& g, double alpha) {
  detail::require(alpha > 0.0 && std::isfinite(alpha), "funahashi transform needs alpha > 0");
  auto id = "funahashi(" + g.id() + "," + io::format_double(alpha) + ")";
  return {std::move(id), [g, alpha](double t) { return g(t + alpha) - g(t - alpha); }};
}

/// Built-in name or "funahashi(<id>,<alpha>)", as written into model files.
inline Activation activation_from_id(std::string_view id) {
  constexpr std::string_view prefix = "funahashi(";
  if (id.starts_with(prefix) && id.ends_with(")")) {
    const std::string_view inner = id.substr(prefix.size(), id.size() - prefix.size() - 1);
    const auto comma = inner.rfind(',');
    detail::require(comma != std::string_view::npos, "malformed activation id '" + std::string(id) + "'");
    const double alpha = io::parse_double(inner.substr(comma + 1), "activation id");
    return funahashi_transform(activation_from_id(inner.substr(0, comma)), alpha);
  }
  return builtin(id);
}

enum class Verdict { kPass, kFail, kUnknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    default: return "unknown";
  }
}

struct ProbeSettings {
  double window = 32.0;              // monotonicity grid covers [-window, window]
  std::size_t monotone_points = 10000;
  double monotone_eps = 1e-12;       // differences at or below this are ignored
  double panel_tolerance = 1e-10;    // adaptive Simpson, per unit panel
  double domain_cap = 16384.0;       // 2^14
  double convergence_tolerance = 1e-12;
  double divergence_growth = 0.01;   // per-doubling relative growth that signals divergence
  double limit_tolerance = 1e-6;
  bool use_declared_flags = true;
};

struct IntegralEstimate {
  double value = 0.0;
  double last_change = 0.0;  // increment of the final doubling
  double domain = 0.0;       // half-width (or upper limit) reached
  Verdict verdict = Verdict::kUnknown;
};

struct LimitEstimate {
  Verdict verdict = Verdict::kUnknown;
  double value = 0.0;       // g at the largest probe point
  double diagnostic = 0.0;  // |g(cap) - g(cap/2)|
};

struct HypothesisReport {
  std::string activation;
  int dimension = 1;
  double p = 1.0;
  double bounded_estimate = 0.0;
  Verdict bounded = Verdict::kUnknown;
  Verdict monotone = Verdict::kUnknown;
  Verdict nonconstant = Verdict::kUnknown;
  LimitEstimate limit_plus;
  LimitEstimate limit_minus;
  IntegralEstimate lp;      // integral of |g|^p over R
  IntegralEstimate radial;  // integral of t^(d-1) |g(t)| over [0, inf)
  bool continuous_assumed = true;
  bool eligible_thm21 = false;  // g in C(R) and L^p, t^(d-1) g(t) integrable
  bool eligible_cor21 = false;  // continuous, monotone, bounded, radial integrable
  bool eligible_thm22 = false;  // nonconstant, continuous, bounded, limit at +-infinity
};

namespace detail {

/// Grows the domain by doubling, integrating only the new tail pieces, until
/// the increment falls below tolerance (Pass), the estimate keeps growing by
/// more than the divergence threshold up to the cap (Fail), or neither.
template <class TailFn>
IntegralEstimate doubling_integral(const TailFn& piece, const ProbeSettings& ps) {
  IntegralEstimate est;
  double T = 1.0;
  est.value = piece(0.0, T);
  est.domain = T;
  int growth_streak = 0;
  while (T < ps.domain_cap) {
    const double inc = piece(T, 2.0 * T);
    T *= 2.0;
    const double previous = est.value;
    est.value += inc;
    est.last_change = inc;
    est.domain = T;
    if (!std::isfinite(est.value)) {
      est.verdict = Verdict::kFail;
      return est;
    }
    if (std::abs(inc) < ps.convergence_tolerance) {
      est.verdict = Verdict::kPass;
      return est;
    }
    growth_streak = (inc > ps.divergence_growth * std::abs(previous)) ? growth_streak + 1 : 0;
  }
  est.verdict = growth_streak >= 3 ? Verdict::kFail : Verdict::kUnknown;
  return est;
}

inline Verdict from_bool(bool b) { return b ? Verdict::kPass : Verdict::kFail; }

}  // namespace detail

inline HypothesisReport classify(const Activation& g, int d, double p, const ProbeSettings& ps = {}) {
  detail::require(d >= 1, "dimension must be >= 1");
  detail::require(p >= 1.0 && std::isfinite(p), "exponent p must satisfy 1 <= p < infinity");

  HypothesisReport r;
  r.activation = g.id();
  r.dimension = d;
  r.p = p;

  // Monotonicity, constancy and sup on a uniform grid.
  const std::size_t N = std::max<std::size_t>(ps.monotone_points, 2);
  double lo = g(-ps.window), hi = lo, sup_window = std::abs(lo);
  bool increasing = false, decreasing = false;
  double prev = lo;
  for (std::size_t i = 1; i < N; ++i) {
    const double t = -ps.window + 2.0 * ps.window * static_cast<double>(i) / static_cast<double>(N - 1);
    const double v = g(t);
    const double diff = v - prev;
    if (diff > ps.monotone_eps) increasing = true;
    if (diff < -ps.monotone_eps) decreasing = true;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sup_window = std::max(sup_window, std::abs(v));
    prev = v;
  }
  r.monotone = detail::from_bool(!(increasing && decreasing));

  // Growth of sup |g| over [-2^j, 2^j].
  double sup_half = sup_window, sup_full = sup_window;
  for (double t = 1.0; t <= ps.domain_cap; t *= 2.0) {
    const double m = std::max(std::abs(g(t)), std::abs(g(-t)));
    lo = std::min({lo, g(t), g(-t)});
    hi = std::max({hi, g(t), g(-t)});
    if (t < ps.domain_cap) sup_half = std::max(sup_half, m);
    sup_full = std::max(sup_full, m);
  }
  r.bounded_estimate = sup_full;
  if (!std::isfinite(sup_full) || sup_full > (1.0 + ps.divergence_growth) * sup_half) {
    r.bounded = Verdict::kFail;
  } else if (sup_full <= sup_half * (1.0 + 1e-9) + 1e-300) {
    r.bounded = Verdict::kPass;
  }
  r.nonconstant = detail::from_bool(hi - lo > ps.monotone_eps);

  auto limit = [&](double sign) {
    LimitEstimate e;
    const double a = g(sign * ps.domain_cap);
    const double b = g(sign * ps.domain_cap / 2.0);
    const double c = g(sign * ps.domain_cap / 4.0);
    e.value = a;
    e.diagnostic = std::abs(a - b);
    if (std::isfinite(a) && e.diagnostic <= ps.limit_tolerance && std::abs(b - c) <= ps.limit_tolerance) {
      e.verdict = Verdict::kPass;
    } else if (!std::isfinite(a) || e.diagnostic > 1e-2) {
      e.verdict = Verdict::kFail;
    }
    return e;
  };
  r.limit_plus = limit(1.0);
  r.limit_minus = limit(-1.0);

  const double tol = ps.panel_tolerance;
  auto lp_integrand = [&](double t) { return std::pow(std::abs(g(t)), p); };
  r.lp = detail::doubling_integral(
      [&](double a, double b) {
        return quadrature::integrate(lp_integrand, a, b, tol) +
               quadrature::integrate(lp_integrand, -b, -a, tol);
      },
      ps);
  auto radial_integrand = [&](double t) { return std::pow(t, d - 1) * std::abs(g(t)); };
  r.radial = detail::doubling_integral(
      [&](double a, double b) { return quadrature::integrate(radial_integrand, a, b, tol); }, ps);

  if (ps.use_declared_flags && g.declared_flags()) {
    const auto& f = *g.declared_flags();
    r.continuous_assumed = f.continuous;
    r.bounded = detail::from_bool(f.bounded);
    r.monotone = detail::from_bool(f.monotone);
    r.nonconstant = detail::from_bool(f.nonconstant);
    r.limit_plus.verdict = detail::from_bool(f.limit_plus.has_value());
    if (f.limit_plus) r.limit_plus.value = *f.limit_plus;
    r.limit_minus.verdict = detail::from_bool(f.limit_minus.has_value());
    if (f.limit_minus) r.limit_minus.value = *f.limit_minus;
  }

  const bool cont = r.continuous_assumed;
  r.eligible_thm21 = cont && r.lp.verdict == Verdict::kPass && r.radial.verdict == Verdict::kPass;
  r.eligible_cor21 = cont && r.monotone == Verdict::kPass && r.bounded == Verdict::kPass &&
                     r.radial.verdict == Verdict::kPass;
  r.eligible_thm22 = cont && r.bounded == Verdict::kPass && r.nonconstant == Verdict::kPass &&
                     (r.limit_plus.verdict == Verdict::kPass || r.limit_minus.verdict == Verdict::kPass);
  return r;
}

}  // namespace srbf
