#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "srbf/activations.hpp"

using namespace srbf;

namespace {

// Reference integrals by composite Gauss-Legendre (5 nodes) on a fine uniform
// mesh; independent of the adaptive Simpson code under test.
template <class F>
double gauss_legendre(const F& f, double a, double b, int panels) {
  static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                              0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                              0.2369268850561891};
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double mid = a + h * (i + 0.5);
    for (int j = 0; j < 5; ++j) sum += w[j] * f(mid + 0.5 * h * x[j]) * 0.5 * h;
  }
  return sum;
}

Activation fermi() {
  return Activation("fermi", [](double t) { return 1.0 - activations::logistic(t); });
}

}  // namespace

TEST(Builtins, Values) {
  EXPECT_DOUBLE_EQ(builtin("gaussian")(1.5), std::exp(-2.25));
  EXPECT_DOUBLE_EQ(builtin("sech")(0.7), 2.0 / (std::exp(0.7) + std::exp(-0.7)));
  EXPECT_DOUBLE_EQ(builtin("sech")(-800.0), 0.0);
  EXPECT_DOUBLE_EQ(builtin("logistic")(0.0), 0.5);
  EXPECT_DOUBLE_EQ(builtin("logistic")(-800.0), 0.0);
  EXPECT_DOUBLE_EQ(builtin("logistic")(800.0), 1.0);
  EXPECT_DOUBLE_EQ(builtin("triangular-bump")(0.25), 0.75);
  EXPECT_DOUBLE_EQ(builtin("triangular-bump")(-3.0), 0.0);
  EXPECT_DOUBLE_EQ(builtin("inverse-quadratic")(2.0), 0.2);
  EXPECT_DOUBLE_EQ(builtin("constant-one")(123.0), 1.0);
  EXPECT_THROW(builtin("relu"), InputError);
}

TEST(Builtins, DeclaredFlags) {
  const auto g = builtin("gaussian").declared_flags();
  ASSERT_TRUE(g.has_value());
  EXPECT_TRUE(g->continuous && g->bounded && !g->monotone);
  EXPECT_EQ(g->limit_plus, 0.0);
  EXPECT_EQ(g->limit_minus, 0.0);
  EXPECT_FALSE(builtin("constant-one").declared_flags()->nonconstant);
  EXPECT_TRUE(builtin("logistic").declared_flags()->monotone);
}

TEST(Funahashi, Examples) {
  const auto h = funahashi_transform(builtin("logistic"), 1.0);
  EXPECT_NEAR(h(0.0), 0.46211715726000974, 1e-15);
  EXPECT_EQ(h.id(), "funahashi(logistic,1)");
  const auto z = funahashi_transform(builtin("constant-one"), 0.5);
  for (double t : {-100.0, -1.0, 0.0, 2.5, 1e6}) EXPECT_EQ(z(t), 0.0);
  EXPECT_THROW(funahashi_transform(builtin("logistic"), 0.0), InputError);
  EXPECT_THROW(funahashi_transform(builtin("logistic"), -1.0), InputError);
}

TEST(Funahashi, IdRoundTrips) {
  const auto h = funahashi_transform(funahashi_transform(builtin("sech"), 0.25), 2.0);
  const auto back = activation_from_id(h.id());
  EXPECT_EQ(back.id(), h.id());
  for (double t : {-3.0, 0.1, 4.0}) EXPECT_EQ(back(t), h(t));
  EXPECT_THROW(activation_from_id("funahashi(logistic)"), InputError);
  EXPECT_THROW(activation_from_id("funahashi(logistic,0)"), InputError);
}

TEST(Quadrature, MatchesClosedForms) {
  auto gauss = [](double t) { return std::exp(-t * t); };
  EXPECT_NEAR(quadrature::integrate(gauss, -8, 8, 1e-12), std::sqrt(std::numbers::pi), 1e-10);
  auto poly = [](double t) { return t * t * t - 2 * t; };
  EXPECT_NEAR(quadrature::adaptive_simpson(poly, 0, 3, 1e-12), 81.0 / 4 - 9, 1e-12);
}

TEST(Classify, GaussianEligibleForEverythingIntegrable) {
  for (int d = 1; d <= 3; ++d) {
    for (double p : {1.0, 2.0}) {
      const auto r = classify(builtin("gaussian"), d, p);
      EXPECT_TRUE(r.eligible_thm21) << d << " " << p;
      EXPECT_EQ(r.lp.verdict, Verdict::kPass);
      EXPECT_EQ(r.radial.verdict, Verdict::kPass);
      EXPECT_NEAR(r.lp.value, std::sqrt(std::numbers::pi / p), 1e-8);
    }
  }
  const double radial[3] = {std::sqrt(std::numbers::pi) / 2, 0.5, std::sqrt(std::numbers::pi) / 4};
  for (int d = 1; d <= 3; ++d) EXPECT_NEAR(classify(builtin("gaussian"), d, 1).radial.value, radial[d - 1], 1e-8);
  const auto r = classify(builtin("gaussian"), 2, 1);
  EXPECT_FALSE(r.eligible_cor21);
  EXPECT_TRUE(r.eligible_thm22);
  EXPECT_EQ(r.bounded, Verdict::kPass);
}

TEST(Classify, LogisticOnlyLimitTheorem) {
  const auto r = classify(builtin("logistic"), 2, 1);
  EXPECT_EQ(r.bounded, Verdict::kPass);
  EXPECT_EQ(r.monotone, Verdict::kPass);
  EXPECT_EQ(r.limit_plus.verdict, Verdict::kPass);
  EXPECT_EQ(r.limit_minus.verdict, Verdict::kPass);
  EXPECT_DOUBLE_EQ(r.limit_plus.value, 1.0);
  EXPECT_DOUBLE_EQ(r.limit_minus.value, 0.0);
  EXPECT_EQ(r.lp.verdict, Verdict::kFail);
  EXPECT_EQ(r.radial.verdict, Verdict::kFail);
  EXPECT_FALSE(r.eligible_thm21);
  EXPECT_FALSE(r.eligible_cor21);
  EXPECT_TRUE(r.eligible_thm22);
}

TEST(Classify, ConstantEligibleForNothing) {
  const auto r = classify(builtin("constant-one"), 1, 1);
  EXPECT_EQ(r.nonconstant, Verdict::kFail);
  EXPECT_FALSE(r.eligible_thm21 || r.eligible_cor21 || r.eligible_thm22);
  ProbeSettings raw;
  raw.use_declared_flags = false;
  EXPECT_EQ(classify(builtin("constant-one"), 1, 1, raw).nonconstant, Verdict::kFail);
}

TEST(Classify, FermiFunctionInThreeDimensions) {
  const auto g = fermi();
  const auto r = classify(g, 3, 1);
  EXPECT_EQ(r.monotone, Verdict::kPass);
  EXPECT_EQ(r.bounded, Verdict::kPass);
  EXPECT_EQ(r.radial.verdict, Verdict::kPass);
  const double reference = gauss_legendre([](double t) { return t * t / (1.0 + std::exp(t)); }, 0.0, 80.0, 4000);
  EXPECT_NEAR(reference, 1.5 * 1.2020569031595942, 1e-12);
  EXPECT_NEAR(r.radial.value, reference, 1e-8);
  EXPECT_TRUE(r.eligible_cor21);
  EXPECT_TRUE(r.eligible_thm22);
  EXPECT_FALSE(r.eligible_thm21);
}

TEST(Classify, FunahashiLogisticIsIntegrable) {
  const auto h = funahashi_transform(builtin("logistic"), 1.0);
  const auto r = classify(h, 1, 1);
  EXPECT_EQ(r.lp.verdict, Verdict::kPass);
  EXPECT_NEAR(r.lp.value, 2.0, 1e-8);
  EXPECT_TRUE(r.eligible_thm21);
}

TEST(Classify, ProbesAgreeWithDeclaredFlags) {
  ProbeSettings raw;
  raw.use_declared_flags = false;
  for (const auto& name : builtin_names()) {
    const auto g = builtin(name);
    const auto& f = *g.declared_flags();
    const auto r = classify(g, 1, 1, raw);
    auto agrees = [&](Verdict v, bool declared) {
      return v == Verdict::kUnknown || (v == Verdict::kPass) == declared;
    };
    EXPECT_TRUE(agrees(r.bounded, f.bounded)) << name;
    EXPECT_TRUE(agrees(r.monotone, f.monotone)) << name;
    EXPECT_TRUE(agrees(r.nonconstant, f.nonconstant)) << name;
    EXPECT_TRUE(agrees(r.limit_plus.verdict, f.limit_plus.has_value())) << name;
    EXPECT_TRUE(agrees(r.limit_minus.verdict, f.limit_minus.has_value())) << name;
    if (r.limit_plus.verdict == Verdict::kPass) {
      EXPECT_NEAR(r.limit_plus.value, *f.limit_plus, 1e-6) << name;
    }
    if (r.limit_minus.verdict == Verdict::kPass) {
      EXPECT_NEAR(r.limit_minus.value, *f.limit_minus, 1e-6) << name;
    }
  }
}

TEST(Classify, DetectsUnboundedAndOscillating) {
  ProbeSettings raw;
  raw.use_declared_flags = false;
  const auto r = classify(Activation("square", [](double t) { return t * t; }), 1, 1, raw);
  EXPECT_EQ(r.bounded, Verdict::kFail);
  EXPECT_EQ(r.lp.verdict, Verdict::kFail);
  const auto s = classify(Activation("sin", [](double t) { return std::sin(t); }), 1, 1, raw);
  EXPECT_EQ(s.monotone, Verdict::kFail);
  EXPECT_FALSE(s.eligible_thm22);
}

TEST(Classify, DeterministicAndValidated) {
  const auto a = classify(builtin("sech"), 2, 1.5);
  const auto b = classify(builtin("sech"), 2, 1.5);
  EXPECT_EQ(a.lp.value, b.lp.value);
  EXPECT_EQ(a.radial.value, b.radial.value);
  EXPECT_THROW(classify(builtin("sech"), 0, 1), InputError);
  EXPECT_THROW(classify(builtin("sech"), 1, 0.5), InputError);
  EXPECT_THROW(classify(builtin("sech"), 1, INFINITY), InputError);
}
