#pragma once

// Cycles of a finite point set with respect to fixed centroids.
//
// A set {x_1..x_n} is a cycle when some nonzero integer vector lambda makes
// every level sum vanish: for each centroid c_i and each distance value t,
// the sum of lambda_j over the points with |x_j - c_i| = t is zero. That is
// the homogeneous 0/1 system of the incidence matrix, so existence is a rank
// question and is decided exactly over the integers.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srbf/errors.hpp"
#include "srbf/exact_linalg.hpp"
#include "srbf/geometry.hpp"

namespace srbf {

/// Nonzero integer vector over all n points of a configuration, with no
/// common divisor and a positive first nonzero entry. Entries may be zero;
/// the support is then the contained cycle.
class CycleWitness {
 public:
  static CycleWitness canonical(std::vector<exact::Integer> lambda) {
    return CycleWitness(exact::canonicalize(std::move(lambda)));
  }

  const std::vector<exact::Integer>& lambda() const { return lambda_; }
  std::size_t size() const { return lambda_.size(); }

  IndexSet support() const {
    IndexSet s;
    for (std::size_t j = 0; j < lambda_.size(); ++j)
      if (lambda_[j] != 0) s.push_back(j);
    return s;
  }

  bool operator==(const CycleWitness&) const = default;

 private:
  explicit CycleWitness(std::vector<exact::Integer> lambda) : lambda_(std::move(lambda)) {}
  std::vector<exact::Integer> lambda_;
};

inline std::optional<CycleWitness> detect_cycle(const PointConfiguration& X, const CentroidSet& S,
                                                double tol) {
  const auto grouping = group_levels(X, S, tol);
  const auto A = exact::IntegerMatrix::from(incidence_matrix(grouping));
  auto v = exact::null_vector(A);
  if (!v) return std::nullopt;
  return CycleWitness::canonical(std::move(*v));
}

/// True iff every level sum of `lambda` vanishes. The zero vector is not a
/// witness and is rejected as input.
inline bool verify_witness(const PointConfiguration& X, const CentroidSet& S,
                           std::span<const exact::Integer> lambda, double tol) {
  detail::require(lambda.size() == X.size(),
                  "witness has length " + std::to_string(lambda.size()) + " but there are " +
                      std::to_string(X.size()) + " points");
  detail::require(std::any_of(lambda.begin(), lambda.end(), [](auto v) { return v != 0; }),
                  "witness must be a nonzero vector");
  const auto grouping = group_levels(X, S, tol);
  for (const auto& centroid : grouping.centroids) {
    for (const auto& level : centroid.levels) {
      exact::Integer sum = 0;
      for (PointIndex p : level.members) {
        if (__builtin_add_overflow(sum, lambda[p], &sum)) {
          throw NumericalError("integer overflow while summing witness entries");
        }
      }
      if (sum != 0) return false;
    }
  }
  return true;
}

/// Keeps the points of Z that, for every centroid, share their distance
/// level with at least one other point of Z. Levels are regrouped on Z.
inline IndexSet tau_step(const IndexSet& Z, const PointConfiguration& X, const CentroidSet& S,
                         double tol) {
  const auto grouping = group_levels(X, S, Z, tol);
  IndexSet out;
  for (PointIndex p : Z) {
    bool keep = true;
    for (const auto& centroid : grouping.centroids) {
      if (centroid.levels[centroid.level_of[p]].members.size() < 2) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(p);
  }
  return out;
}

struct TauTrace {
  std::vector<IndexSet> iterates;  // Z, tau(Z), tau^2(Z), ...
  IndexSet terminal;
  std::size_t steps = 0;

  /// An empty terminal proves Z contains no cycle. A nonempty terminal is
  /// inconclusive.
  bool cycle_free() const { return terminal.empty(); }
};

inline TauTrace tau_fixpoint(const IndexSet& Z, const PointConfiguration& X, const CentroidSet& S,
                             double tol) {
  TauTrace trace;
  trace.iterates.push_back(Z);
  IndexSet current = Z;
  while (!current.empty()) {
    IndexSet next = tau_step(current, X, S, tol);
    ++trace.steps;
    trace.iterates.push_back(next);
    if (next == current) break;
    current = std::move(next);
  }
  trace.terminal = trace.iterates.back();
  return trace;
}

enum class Relation { kFirstCentroid, kSecondCentroid };

inline Relation other(Relation r) {
  return r == Relation::kFirstCentroid ? Relation::kSecondCentroid : Relation::kFirstCentroid;
}

inline const char* to_string(Relation r) {
  return r == Relation::kFirstCentroid ? "c1" : "c2";
}

/// Even-length point sequence whose consecutive pairs share a distance level
/// alternately for c1 and c2, including the closing pair back to the start.
struct ClosedPath {
  std::vector<PointIndex> points;
  Relation start = Relation::kFirstCentroid;  // relation linking points[0] and points[1]
};

namespace detail {

inline void require_two_centroids(const CentroidSet& S) {
  require(S.size() == 2, "closed paths and orbits need exactly 2 centroids, got " +
                             std::to_string(S.size()));
}

/// Bipartite multigraph: vertices are the levels of c1 followed by the levels
/// of c2, and each point is an edge joining its two levels.
struct LevelGraph {
  std::size_t c1_levels = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edge_ends;      // per point
  std::vector<std::vector<std::pair<PointIndex, std::size_t>>> adj;  // (edge, neighbour)

  explicit LevelGraph(const DistanceLevelGrouping& g) {
    c1_levels = g.centroids[0].levels.size();
    adj.resize(c1_levels + g.centroids[1].levels.size());
    edge_ends.resize(g.point_count);
    for (PointIndex p : g.points) {
      const std::size_t u = g.centroids[0].level_of[p];
      const std::size_t v = c1_levels + g.centroids[1].level_of[p];
      edge_ends[p] = {u, v};
      adj[u].push_back({p, v});
      adj[v].push_back({p, u});
    }
  }

  Relation vertex_relation(std::size_t v) const {
    return v < c1_levels ? Relation::kFirstCentroid : Relation::kSecondCentroid;
  }
};

inline bool is_closed_path(const ClosedPath& path, const DistanceLevelGrouping& g) {
  const auto& pts = path.points;
  if (pts.size() < 2 || pts.size() % 2 != 0) return false;
  for (PointIndex p : pts)
    if (p >= g.point_count || g.centroids[0].level_of[p] == CentroidLevels::kNotGrouped) return false;
  Relation r = path.start;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const PointIndex a = pts[i];
    const PointIndex b = pts[(i + 1) % pts.size()];
    if (a == b) return false;
    if (!g.same_level(r == Relation::kFirstCentroid ? 0 : 1, a, b)) return false;
    r = other(r);
  }
  return true;
}

}  // namespace detail

/// Returns a closed path iff the level graph contains a cycle (a pair of
/// parallel edges counts). Depth-first search from the lowest vertex, edges
/// taken in ascending point order, so the output is deterministic.
inline std::optional<ClosedPath> find_closed_path(const PointConfiguration& X, const CentroidSet& S,
                                                  double tol) {
  detail::require_two_centroids(S);
  const auto grouping = group_levels(X, S, tol);
  const detail::LevelGraph graph(grouping);
  const std::size_t V = graph.adj.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<int> state(V, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<std::size_t> parent_vertex(V, kNone);
  std::vector<PointIndex> parent_edge(V, kNone);
  std::optional<std::vector<PointIndex>> cycle_edges;

  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    state[u] = 1;
    for (const auto& [edge, v] : graph.adj[u]) {
      if (cycle_edges) return;
      if (edge == parent_edge[u]) continue;
      if (state[v] == 1) {
        // back edge closes a cycle: v -> ... -> u along tree edges, then edge back to v
        std::vector<PointIndex> edges;
        for (std::size_t w = u; w != v; w = parent_vertex[w]) edges.push_back(parent_edge[w]);
        std::reverse(edges.begin(), edges.end());
        edges.push_back(edge);
        cycle_edges = std::move(edges);
        return;
      }
      if (state[v] == 0) {
        parent_vertex[v] = u;
        parent_edge[v] = edge;
        dfs(v);
      }
    }
    state[u] = 2;
  };
  for (std::size_t s = 0; s < V && !cycle_edges; ++s)
    if (state[s] == 0) dfs(s);
  if (!cycle_edges) return std::nullopt;

  auto& edges = *cycle_edges;
  // Rotate so the smallest point index leads, then orient towards its smaller neighbour.
  const auto min_it = std::min_element(edges.begin(), edges.end());
  std::rotate(edges.begin(), min_it, edges.end());
  if (edges.size() > 2 && edges.back() < edges[1]) std::reverse(edges.begin() + 1, edges.end());

  ClosedPath path;
  path.points = edges;
  path.start = graph.edge_ends[edges[0]].first == graph.edge_ends[edges[1]].first
                   ? Relation::kFirstCentroid
                   : Relation::kSecondCentroid;
  return path;
}

/// Alternating +-1 weights along the path, canonicalized over all n points.
inline CycleWitness path_witness(const ClosedPath& path, const PointConfiguration& X,
                                 const CentroidSet& S, double tol) {
  detail::require_two_centroids(S);
  const auto grouping = group_levels(X, S, tol);
  if (!detail::is_closed_path(path, grouping)) {
    throw InputError("sequence is not a closed path with respect to the centroids");
  }
  std::vector<exact::Integer> lambda(X.size(), 0);
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    lambda[path.points[i]] += (i % 2 == 0) ? -1 : 1;
  }
  return CycleWitness::canonical(std::move(lambda));
}

inline bool is_closed_path(const ClosedPath& path, const PointConfiguration& X, const CentroidSet& S,
                           double tol) {
  detail::require_two_centroids(S);
  return detail::is_closed_path(path, group_levels(X, S, tol));
}

struct OrbitPartition {
  std::vector<IndexSet> orbits;  // ordered by smallest member
  std::vector<std::size_t> orbit_of;
};

/// Connected components of the level graph, read as sets of points.
inline OrbitPartition orbits(const PointConfiguration& X, const CentroidSet& S, double tol) {
  detail::require_two_centroids(S);
  const auto grouping = group_levels(X, S, tol);
  const detail::LevelGraph graph(grouping);

  std::vector<std::size_t> root(graph.adj.size());
  std::iota(root.begin(), root.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (const auto& [u, v] : graph.edge_ends) root[find(u)] = find(v);

  OrbitPartition out;
  out.orbit_of.assign(X.size(), 0);
  std::vector<std::size_t> orbit_of_root(graph.adj.size(), static_cast<std::size_t>(-1));
  for (PointIndex p = 0; p < X.size(); ++p) {
    const std::size_t r = find(graph.edge_ends[p].first);
    if (orbit_of_root[r] == static_cast<std::size_t>(-1)) {
      orbit_of_root[r] = out.orbits.size();
      out.orbits.emplace_back();
    }
    out.orbit_of[p] = orbit_of_root[r];
    out.orbits[orbit_of_root[r]].push_back(p);
  }
  return out;
}

}  // namespace srbf
