#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "srbf/cycles.hpp"

using namespace srbf;
using exact::Integer;

namespace {

CentroidSet two_centroids() { return CentroidSet{Point{0.0, 0.0}, Point{4.0, 0.0}}; }

Point on_circles(double r1, double r2) {
  const double x = (r1 * r1 - r2 * r2 + 16.0) / 8.0;
  return Point{x, std::sqrt(r1 * r1 - x * x)};
}

PointConfiguration two_points() { return PointConfiguration{Point{2, 1}, Point{2, -1}}; }

std::vector<Point> four_point_list() {
  return {Point{1.375, std::sqrt(2.109375)}, Point{0.5, std::sqrt(3.75)}, Point{1.125, std::sqrt(7.734375)},
          Point{2.0, std::sqrt(5.0)}};
}

PointConfiguration four_points() { return PointConfiguration(four_point_list()); }

PointConfiguration hexagon() {
  return PointConfiguration{on_circles(2, 3),   on_circles(2, 3.5), on_circles(2.5, 3.5),
                            on_circles(2.5, 4), on_circles(3, 4),   on_circles(3, 3)};
}

std::vector<Integer> negated(std::vector<Integer> v) {
  for (auto& x : v) x = -x;
  return v;
}

bool same_up_to_sign(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  return a == b || a == negated(b);
}

constexpr double kTol = 1e-9;

}  // namespace

TEST(DetectCycle, TwoPointExample) {
  const auto w = detect_cycle(two_points(), two_centroids(), kTol);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(same_up_to_sign(w->lambda(), {-1, 1}));
  EXPECT_EQ(w->lambda(), (std::vector<Integer>{1, -1}));
  EXPECT_EQ(w->support(), (IndexSet{0, 1}));
}

TEST(DetectCycle, SinglePointHasNone) {
  EXPECT_FALSE(detect_cycle(PointConfiguration{Point{1, 2}}, two_centroids(), kTol).has_value());
  EXPECT_FALSE(detect_cycle(PointConfiguration{Point{1, 2}}, CentroidSet{Point{0, 0}}, kTol).has_value());
}

TEST(DetectCycle, FourPointExample) {
  const auto w = detect_cycle(four_points(), two_centroids(), kTol);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(same_up_to_sign(w->lambda(), {-1, 1, -1, 1}));
}

TEST(DetectCycle, GenericHasNone) {
  const PointConfiguration X{Point{0.3, 1.7}, Point{-2.2, 0.4}, Point{1.9, -3.1}};
  EXPECT_FALSE(detect_cycle(X, two_centroids(), kTol).has_value());
}

TEST(DetectCycle, OneCentroidPairOnSphere) {
  const PointConfiguration X{Point{1, 0}, Point{0, 1}, Point{3, 3}};
  const auto w = detect_cycle(X, CentroidSet{Point{0, 0}}, kTol);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->lambda(), (std::vector<Integer>{1, -1, 0}));
  EXPECT_EQ(w->support(), (IndexSet{0, 1}));
}

TEST(VerifyWitness, Examples) {
  const auto X = two_points();
  const auto S = two_centroids();
  EXPECT_TRUE(verify_witness(X, S, std::vector<Integer>{-1, 1}, kTol));
  EXPECT_FALSE(verify_witness(X, S, std::vector<Integer>{1, 1}, kTol));
  EXPECT_THROW(verify_witness(X, S, std::vector<Integer>{0, 0}, kTol), InputError);
  EXPECT_THROW(verify_witness(X, S, std::vector<Integer>{1, -1, 0}, kTol), InputError);
  EXPECT_TRUE(verify_witness(four_points(), S, std::vector<Integer>{-1, 1, -1, 1}, kTol));
  EXPECT_FALSE(verify_witness(four_points(), S, std::vector<Integer>{-1, 1, 1, -1}, kTol));
}

TEST(DetectCycle, AgreesWithBruteForce) {
  std::mt19937_64 rng(101);
  int cycles = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const std::size_t k = 1 + (trial / 6) % 3;
    const auto inst = oracle::random_instance(rng, n, k, static_cast<oracle::InstanceKind>(trial % 3));
    const PointConfiguration X(inst.points);
    const CentroidSet S(inst.centroids);
    const double tol = default_tolerance(X, S);
    const auto w = detect_cycle(X, S, tol);
    EXPECT_EQ(w.has_value(), oracle::brute_force_cycle(inst.points, inst.centroids, tol)) << "trial " << trial;
    if (w) {
      ++cycles;
      EXPECT_TRUE(verify_witness(X, S, w->lambda(), tol));
      EXPECT_EQ(w->lambda(), exact::canonicalize(w->lambda()));
    }
  }
  EXPECT_GT(cycles, 20);
}

TEST(DetectCycle, WitnessFollowsPermutationUpToSign) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = oracle::random_instance(rng, 5, 2, oracle::InstanceKind::kMirrored);
    const PointConfiguration X(inst.points);
    const CentroidSet S(inst.centroids);
    const auto A = exact::IntegerMatrix::from(incidence_matrix(group_levels(X, S, kTol)));
    if (exact::rank(A) + 1 != X.size()) continue;
    const auto w = detect_cycle(X, S, kTol);
    ASSERT_TRUE(w.has_value());
    std::vector<std::size_t> perm(X.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Point> permuted;
    std::vector<Integer> expected;
    for (auto p : perm) {
      permuted.push_back(inst.points[p]);
      expected.push_back(w->lambda()[p]);
    }
    const auto wp = detect_cycle(PointConfiguration(permuted), S, kTol);
    ASSERT_TRUE(wp.has_value());
    EXPECT_TRUE(same_up_to_sign(wp->lambda(), expected));
    EXPECT_EQ(detect_cycle(X, S, kTol)->lambda(), w->lambda());
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Tau, Examples) {
  const auto S = two_centroids();
  const auto X2 = two_points();
  EXPECT_EQ(tau_step(X2.all_indices(), X2, S, kTol), X2.all_indices());

  const PointConfiguration G{Point{0.3, 1.7}, Point{-2.2, 0.4}, Point{1.9, -3.1}};
  EXPECT_TRUE(tau_step(G.all_indices(), G, S, kTol).empty());

  auto five = four_point_list();
  five.push_back(Point{-1.7, -2.9});
  const PointConfiguration X5(five);
  EXPECT_EQ(tau_step(X5.all_indices(), X5, S, kTol), (IndexSet{0, 1, 2, 3}));
}

TEST(Tau, FixpointExamples) {
  const auto S = two_centroids();
  const auto X4 = four_points();
  const auto t4 = tau_fixpoint(X4.all_indices(), X4, S, kTol);
  EXPECT_EQ(t4.terminal, X4.all_indices());
  EXPECT_EQ(t4.steps, 1u);
  EXPECT_FALSE(t4.cycle_free());

  const auto empty = tau_fixpoint({}, X4, S, kTol);
  EXPECT_TRUE(empty.terminal.empty());
  EXPECT_EQ(empty.steps, 0u);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> pts, cs;
    for (int i = 0; i < 10; ++i) pts.push_back(Point{coord(rng), coord(rng)});
    for (int i = 0; i < 3; ++i) cs.push_back(Point{coord(rng), coord(rng)});
    const PointConfiguration X(pts);
    const CentroidSet C(cs);
    const auto t = tau_fixpoint(X.all_indices(), X, C, default_tolerance(X, C));
    EXPECT_TRUE(t.terminal.empty());
    EXPECT_LE(t.steps, 2u);
  }
}

TEST(Tau, TraceIsDecreasingAndKeepsCycles) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = oracle::random_instance(rng, 6, 1 + trial % 3, static_cast<oracle::InstanceKind>(trial % 3));
    const PointConfiguration X(inst.points);
    const CentroidSet S(inst.centroids);
    const double tol = default_tolerance(X, S);
    const auto t = tau_fixpoint(X.all_indices(), X, S, tol);
    EXPECT_LE(t.steps, X.size());
    for (std::size_t i = 1; i < t.iterates.size(); ++i)
      EXPECT_TRUE(std::includes(t.iterates[i - 1].begin(), t.iterates[i - 1].end(), t.iterates[i].begin(),
                                t.iterates[i].end()));
    for (std::size_t i = 1; i + 1 < t.iterates.size(); ++i) EXPECT_LT(t.iterates[i].size(), t.iterates[i - 1].size());
    if (const auto w = detect_cycle(X, S, tol)) {
      const auto support = w->support();
      EXPECT_TRUE(std::includes(t.terminal.begin(), t.terminal.end(), support.begin(), support.end()));
      const auto ts = tau_fixpoint(support, X, S, tol);
      EXPECT_EQ(ts.terminal, support);
    }
  }
}

TEST(ClosedPath, FourPointExample) {
  const auto X = four_points();
  const auto S = two_centroids();
  const auto path = find_closed_path(X, S, kTol);
  ASSERT_TRUE(path.has_value());
  EXPECT_EQ(path->points, (std::vector<PointIndex>{0, 1, 2, 3}));
  EXPECT_EQ(path->start, Relation::kFirstCentroid);
  EXPECT_TRUE(is_closed_path(*path, X, S, kTol));
  const auto w = path_witness(*path, X, S, kTol);
  EXPECT_TRUE(same_up_to_sign(w.lambda(), {-1, 1, -1, 1}));
}

TEST(ClosedPath, TwoPointExample) {
  const auto X = two_points();
  const auto S = two_centroids();
  const auto path = find_closed_path(X, S, kTol);
  ASSERT_TRUE(path.has_value());
  EXPECT_EQ(path->points, (std::vector<PointIndex>{0, 1}));
  EXPECT_TRUE(same_up_to_sign(path_witness(*path, X, S, kTol).lambda(), {-1, 1}));
}

TEST(ClosedPath, Hexagon) {
  const auto X = hexagon();
  const auto S = two_centroids();
  const auto path = find_closed_path(X, S, kTol);
  ASSERT_TRUE(path.has_value());
  EXPECT_EQ(path->points.size(), 6u);
  const auto w = path_witness(*path, X, S, kTol);
  EXPECT_TRUE(same_up_to_sign(w.lambda(), {-1, 1, -1, 1, -1, 1}));
  EXPECT_TRUE(verify_witness(X, S, w.lambda(), kTol));
  EXPECT_TRUE(same_up_to_sign(detect_cycle(X, S, kTol)->lambda(), {-1, 1, -1, 1, -1, 1}));
}

TEST(ClosedPath, GenericHasNone) {
  const PointConfiguration X{Point{0.3, 1.7}, Point{-2.2, 0.4}, Point{1.9, -3.1}, Point{-0.6, -1.3},
                             Point{3.3, 2.8}};
  EXPECT_FALSE(find_closed_path(X, two_centroids(), kTol).has_value());
}

TEST(ClosedPath, RejectsInvalidInput) {
  const auto X = four_points();
  const auto S = two_centroids();
  EXPECT_THROW(find_closed_path(X, CentroidSet{Point{0, 0}}, kTol), InputError);
  EXPECT_THROW(find_closed_path(X, CentroidSet{Point{0, 0}, Point{4, 0}, Point{0, 4}}, kTol), InputError);
  EXPECT_FALSE(is_closed_path(ClosedPath{{0, 2, 1, 3}, Relation::kFirstCentroid}, X, S, kTol));
  EXPECT_FALSE(is_closed_path(ClosedPath{{0, 1, 2, 3}, Relation::kSecondCentroid}, X, S, kTol));
  EXPECT_FALSE(is_closed_path(ClosedPath{{0, 1, 2}, Relation::kFirstCentroid}, X, S, kTol));
  EXPECT_THROW(path_witness(ClosedPath{{0, 2, 1, 3}, Relation::kFirstCentroid}, X, S, kTol), InputError);
}

TEST(ClosedPath, ExistsIffCycle) {
  std::mt19937_64 rng(29);
  int with_path = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = oracle::random_instance(rng, 2 + trial % 6, 2, static_cast<oracle::InstanceKind>(trial % 3));
    const PointConfiguration X(inst.points);
    const CentroidSet S(inst.centroids);
    const double tol = default_tolerance(X, S);
    const auto path = find_closed_path(X, S, tol);
    const auto w = detect_cycle(X, S, tol);
    EXPECT_EQ(path.has_value(), w.has_value()) << "trial " << trial;
    if (path) {
      ++with_path;
      EXPECT_TRUE(is_closed_path(*path, X, S, tol));
      const auto pw = path_witness(*path, X, S, tol);
      EXPECT_TRUE(verify_witness(X, S, pw.lambda(), tol));
      const auto orb = orbits(X, S, tol);
      for (PointIndex p : path->points) EXPECT_EQ(orb.orbit_of[p], orb.orbit_of[path->points[0]]);
    }
  }
  EXPECT_GT(with_path, 20);
}

TEST(Orbits, Examples) {
  const auto S = two_centroids();
  const auto o4 = orbits(four_points(), S, kTol);
  ASSERT_EQ(o4.orbits.size(), 1u);
  EXPECT_EQ(o4.orbits[0], (IndexSet{0, 1, 2, 3}));

  const PointConfiguration G{Point{0.3, 1.7}, Point{-2.2, 0.4}, Point{1.9, -3.1}, Point{-0.6, -1.3},
                             Point{3.3, 2.8}};
  EXPECT_EQ(orbits(G, S, kTol).orbits.size(), 5u);

  auto six = four_point_list();
  six.push_back(Point{10.0, 7.3});
  six.push_back(Point{-8.1, 5.9});
  const auto o6 = orbits(PointConfiguration(six), S, kTol);
  ASSERT_EQ(o6.orbits.size(), 3u);
  EXPECT_EQ(o6.orbits[0], (IndexSet{0, 1, 2, 3}));
  EXPECT_EQ(o6.orbits[1], (IndexSet{4}));
  EXPECT_EQ(o6.orbits[2], (IndexSet{5}));
  EXPECT_THROW(orbits(four_points(), CentroidSet{Point{0, 0}}, kTol), InputError);
}

TEST(Orbits, MatchIndependentConnectivity) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = oracle::random_instance(rng, 6, 2, static_cast<oracle::InstanceKind>(trial % 3));
    const PointConfiguration X(inst.points);
    const CentroidSet S(inst.centroids);
    const double tol = default_tolerance(X, S);
    const auto o = orbits(X, S, tol);
    // Reachability by repeated relaxation over the two equal-distance relations.
    const auto l1 = oracle::level_ids(inst.points, inst.centroids[0], tol);
    const auto l2 = oracle::level_ids(inst.points, inst.centroids[1], tol);
    const std::size_t n = X.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) reach[a][b] = a == b || l1[a] == l1[b] || l2[a] == l2[b];
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) reach[a][b] = reach[a][b] || (reach[a][m] && reach[m][b]);
    std::size_t covered = 0;
    for (const auto& orbit : o.orbits) covered += orbit.size();
    EXPECT_EQ(covered, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) EXPECT_EQ(o.orbit_of[a] == o.orbit_of[b], reach[a][b]);
  }
}
