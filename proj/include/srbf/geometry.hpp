#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srbf/errors.hpp"

namespace srbf {

/// Points are identified by their position in a PointConfiguration. Every
/// witness, path and orbit refers to points through these indices.
using PointIndex = std::size_t;

/// Sorted, duplicate-free list of point indices.
using IndexSet = std::vector<PointIndex>;

inline constexpr double kRelativeTolerance = 1e-9;

class Point {
 public:
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
    detail::require(!coords_.empty(), "point must have at least one coordinate");
    for (double v : coords_) {
      detail::require(std::isfinite(v), "point coordinates must be finite");
    }
  }
  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  double norm() const {
    double s = 0.0;
    for (double v : coords_) s += v * v;
    return std::sqrt(s);
  }

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

/// Euclidean distance. Returns exactly 0 for identical points.
inline double distance(const Point& x, const Point& c) {
  if (x.dim() != c.dim()) {
    throw InputError("dimension mismatch: " + std::to_string(x.dim()) + " vs " +
                     std::to_string(c.dim()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double diff = x[i] - c[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

namespace detail {

inline double max_norm(std::span<const Point> pts) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, p.norm());
  return m;
}

inline void require_distinct(std::span<const Point> pts, double tol, const char* what) {
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (distance(pts[a], pts[b]) <= tol) {
        throw InputError(std::string("duplicate ") + what + " at indices " +
                         std::to_string(a) + " and " + std::to_string(b));
      }
    }
  }
}

inline std::size_t common_dimension(std::span<const Point> pts, const char* what) {
  detail::require(!pts.empty(), std::string(what) + " must not be empty");
  const std::size_t d = pts.front().dim();
  for (const auto& p : pts) {
    if (p.dim() != d) {
      throw InputError(std::string(what) + " have inconsistent dimensions");
    }
  }
  return d;
}

}  // namespace detail

/// Tolerance used to reject near-duplicate points of a set.
inline double distinctness_tolerance(std::span<const Point> pts) {
  return kRelativeTolerance * (1.0 + detail::max_norm(pts));
}

/// The fixed centroids c_1..c_k.
class CentroidSet {
 public:
  explicit CentroidSet(std::vector<Point> centroids) : centroids_(std::move(centroids)) {
    dim_ = detail::common_dimension(centroids_, "centroids");
    detail::require_distinct(centroids_, distinctness_tolerance(centroids_), "centroid");
  }
  CentroidSet(std::initializer_list<Point> centroids)
      : CentroidSet(std::vector<Point>(centroids)) {}

  std::size_t size() const { return centroids_.size(); }
  std::size_t dim() const { return dim_; }
  const Point& operator[](std::size_t i) const { return centroids_[i]; }
  std::span<const Point> points() const { return centroids_; }

 private:
  std::vector<Point> centroids_;
  std::size_t dim_ = 0;
};

/// A finite set X of pairwise distinct points.
class PointConfiguration {
 public:
  explicit PointConfiguration(std::vector<Point> points) : points_(std::move(points)) {
    dim_ = detail::common_dimension(points_, "points");
    detail::require_distinct(points_, distinctness_tolerance(points_), "point");
  }
  PointConfiguration(std::initializer_list<Point> points)
      : PointConfiguration(std::vector<Point>(points)) {}

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return dim_; }
  const Point& operator[](PointIndex i) const { return points_[i]; }
  std::span<const Point> points() const { return points_; }

  IndexSet all_indices() const {
    IndexSet idx(points_.size());
    std::iota(idx.begin(), idx.end(), PointIndex{0});
    return idx;
  }

 private:
  std::vector<Point> points_;
  std::size_t dim_ = 0;
};

inline void require_compatible(const PointConfiguration& X, const CentroidSet& S) {
  if (X.dim() != S.dim()) {
    throw InputError("points have dimension " + std::to_string(X.dim()) +
                     " but centroids have dimension " + std::to_string(S.dim()));
  }
}

/// 1e-9 * (1 + largest point-to-centroid distance).
inline double default_tolerance(const PointConfiguration& X, const CentroidSet& S) {
  require_compatible(X, S);
  double m = 0.0;
  for (const auto& x : X.points())
    for (const auto& c : S.points()) m = std::max(m, distance(x, c));
  return kRelativeTolerance * (1.0 + m);
}

struct LevelGroup {
  double level = 0.0;           // mean distance of the members
  std::vector<PointIndex> members;  // ascending
};

/// Grouping of the points by distance to a single centroid.
struct CentroidLevels {
  static constexpr std::size_t kNotGrouped = std::numeric_limits<std::size_t>::max();

  std::vector<LevelGroup> levels;     // ascending by level
  std::vector<std::size_t> level_of;  // per point index; kNotGrouped outside the subset
};

struct DistanceLevelGrouping {
  std::vector<CentroidLevels> centroids;
  IndexSet points;  // the grouped subset (all of X unless restricted)
  std::size_t point_count = 0;  // size of the underlying configuration
  double tolerance = 0.0;

  std::size_t total_levels() const {
    std::size_t s = 0;
    for (const auto& c : centroids) s += c.levels.size();
    return s;
  }
  bool same_level(std::size_t centroid, PointIndex a, PointIndex b) const {
    const auto& lv = centroids[centroid].level_of;
    return lv[a] != CentroidLevels::kNotGrouped && lv[a] == lv[b];
  }
};

namespace detail {

inline void require_subset(const IndexSet& Z, std::size_t n) {
  for (std::size_t i = 0; i < Z.size(); ++i) {
    detail::require(Z[i] < n, "index " + std::to_string(Z[i]) + " out of range");
    detail::require(i == 0 || Z[i - 1] < Z[i], "index set must be sorted and unique");
  }
}

}  // namespace detail

/// Groups the points of `subset` by distance to every centroid. Distances are
/// sorted and split wherever two consecutive values differ by more than
/// `tol`, so a long chain of sub-tolerance gaps ends up in a single level.
inline DistanceLevelGrouping group_levels(const PointConfiguration& X, const CentroidSet& S,
                                          const IndexSet& subset, double tol) {
  require_compatible(X, S);
  detail::require(tol > 0.0 && std::isfinite(tol), "tolerance must be positive");
  detail::require_subset(subset, X.size());

  DistanceLevelGrouping out;
  out.points = subset;
  out.point_count = X.size();
  out.tolerance = tol;
  out.centroids.resize(S.size());

  std::vector<std::pair<double, PointIndex>> dist(subset.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    auto& cl = out.centroids[i];
    cl.level_of.assign(X.size(), CentroidLevels::kNotGrouped);
    for (std::size_t j = 0; j < subset.size(); ++j) {
      dist[j] = {distance(X[subset[j]], S[i]), subset[j]};
    }
    std::sort(dist.begin(), dist.end());

    std::size_t start = 0;
    for (std::size_t j = 1; j <= dist.size(); ++j) {
      if (j < dist.size() && dist[j].first - dist[j - 1].first <= tol) continue;
      LevelGroup g;
      double sum = 0.0;
      for (std::size_t m = start; m < j; ++m) {
        g.members.push_back(dist[m].second);
        sum += dist[m].first;
      }
      std::sort(g.members.begin(), g.members.end());
      g.level = sum / static_cast<double>(j - start);
      for (PointIndex p : g.members) cl.level_of[p] = cl.levels.size();
      cl.levels.push_back(std::move(g));
      start = j;
    }
  }
  return out;
}

inline DistanceLevelGrouping group_levels(const PointConfiguration& X, const CentroidSet& S,
                                          double tol) {
  return group_levels(X, S, X.all_indices(), tol);
}

/// The 0/1 system behind the cycle condition: one row per (centroid, level),
/// one column per grouped point.
struct IncidenceMatrix {
  struct RowLabel {
    std::size_t centroid;
    std::size_t level;
  };

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> entries;  // row-major
  std::vector<RowLabel> row_labels;
  std::vector<PointIndex> column_points;

  std::uint8_t at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

inline IncidenceMatrix incidence_matrix(const DistanceLevelGrouping& grouping) {
  IncidenceMatrix A;
  A.cols = grouping.points.size();
  A.column_points = grouping.points;
  A.rows = grouping.total_levels();
  A.entries.assign(A.rows * A.cols, 0);

  std::vector<std::size_t> column_of(grouping.point_count, 0);
  for (std::size_t c = 0; c < A.cols; ++c) column_of[grouping.points[c]] = c;

  std::size_t r = 0;
  for (std::size_t i = 0; i < grouping.centroids.size(); ++i) {
    const auto& levels = grouping.centroids[i].levels;
    for (std::size_t j = 0; j < levels.size(); ++j, ++r) {
      A.row_labels.push_back({i, j});
      for (PointIndex p : levels[j].members) A.entries[r * A.cols + column_of[p]] = 1;
    }
  }
  return A;
}

}  // namespace srbf
