#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "lassopath/dijkstra.hpp"
#include "lassopath/errors.hpp"
#include "lassopath/graph.hpp"
#include "lassopath/lars.hpp"

namespace lassopath {

/// The two disjoint rooted trees the active set spans while the homotopy
/// runs on a graph: one grows from the source, one from the target, and
/// every vertex is in exactly one of {source tree, target tree, unassigned}.
/// len[v] is the weighted distance to the respective root.
class TwinTrees {
 public:
  enum class Kind { interior, extension, bridge, detached };

  TwinTrees(const Graph& g, int s, int t) : g_(&g), s_(s), t_(t) {
    if (s == t) throw SameEndpoints("source equals target");
    side_.assign(g.n, 0);
    len_.assign(g.n, 0.0);
    parent_.assign(g.n, -1);
    parent_edge_.assign(g.n, -1);
    side_[s] = 1;
    side_[t] = 2;
    count_ = {0, 1, 1};
    sum_len_ = {0.0, 0.0, 0.0};
  }

  /// How an inactive edge relates to the current forest.  For extensions,
  /// anchor is the endpoint already in a tree and leaf the one outside.
  Kind classify(int edge, int* tree = nullptr, int* anchor = nullptr,
                int* leaf = nullptr) const {
    const Edge& e = g_->edges[edge];
    const int su = side_[e.tail];
    const int sv = side_[e.head];
    if (su == 0 && sv == 0) return Kind::detached;
    if (su != 0 && sv != 0) return su == sv ? Kind::interior : Kind::bridge;
    const int in = su != 0 ? e.tail : e.head;
    const int out = su != 0 ? e.head : e.tail;
    if (tree) *tree = side_[in];
    if (anchor) *anchor = in;
    if (leaf) *leaf = out;
    return Kind::extension;
  }

  /// Grows a tree along an extension edge.  Anything else is a structural
  /// error: interior edges would close a cycle, bridges merge the trees.
  void attach(int edge) {
    int tree = 0, anchor = -1, leaf = -1;
    switch (classify(edge, &tree, &anchor, &leaf)) {
      case Kind::extension:
        break;
      case Kind::bridge:
        throw InconsistentTrees("edge " + std::to_string(edge) +
                                " bridges the two trees");
      case Kind::interior:
        throw InconsistentTrees("edge " + std::to_string(edge) +
                                " closes a cycle inside a tree");
      case Kind::detached:
        throw InconsistentTrees("edge " + std::to_string(edge) +
                                " touches neither tree");
    }
    side_[leaf] = tree;
    len_[leaf] = len_[anchor] + g_->edges[edge].weight;
    parent_[leaf] = anchor;
    parent_edge_[leaf] = edge;
    count_[tree] += 1;
    sum_len_[tree] += len_[leaf];
    edges_.push_back(edge);
  }

  int side(int v) const { return side_[v]; }
  double root_length(int v) const { return len_[v]; }
  int tree_size(int tree) const { return count_[tree]; }
  double tree_length_sum(int tree) const { return sum_len_[tree]; }
  const std::vector<int>& active_edges() const { return edges_; }
  int source() const { return s_; }
  int target() const { return t_; }
  const Graph& graph() const { return *g_; }
  int parent_edge_of(int v) const { return parent_edge_[v]; }

 private:
  friend double joining_time_tree(const TwinTrees&, int);
  friend double crossing_ratio_tree(const TwinTrees&, int);
  const Graph* g_;
  int s_, t_;
  std::vector<int> side_;
  std::vector<double> len_;
  std::vector<int> parent_, parent_edge_;
  std::array<int, 3> count_;
  std::array<double, 3> sum_len_;
  std::vector<int> edges_;
};

/// Closed-form joining value of an inactive edge given the forest state, no
/// least-squares solve involved.  Extensions of a tree T with leaf distance
/// l join at 1 / (|T| l - sum_T len); edges inside a tree or fully outside
/// never join (0); a bridge with through-length L = l_s + w + l_t joins at
///   (|S| + |T|) / (|S||T| L - |S| sum_T len - |T| sum_S len).
inline double joining_time_tree(const TwinTrees& tt, int edge) {
  int tree = 0, anchor = -1, leaf = -1;
  const TwinTrees::Kind kind = tt.classify(edge, &tree, &anchor, &leaf);
  const Graph& g = tt.graph();
  switch (kind) {
    case TwinTrees::Kind::interior:
    case TwinTrees::Kind::detached:
      return 0.0;
    case TwinTrees::Kind::extension: {
      const double l = tt.len_[anchor] + g.edges[edge].weight;
      const double denom =
          tt.count_[tree] * l - tt.sum_len_[tree];
      return denom > 0.0 ? 1.0 / denom : 0.0;
    }
    case TwinTrees::Kind::bridge: {
      const Edge& e = g.edges[edge];
      const int vs = tt.side_[e.tail] == 1 ? e.tail : e.head;
      const int vt = tt.side_[e.tail] == 2 ? e.tail : e.head;
      const double through = tt.len_[vs] + e.weight + tt.len_[vt];
      const double ns = tt.count_[1];
      const double nt = tt.count_[2];
      const double denom = ns * nt * through - ns * tt.sum_len_[2] -
                           nt * tt.sum_len_[1];
      return denom > 0.0 ? (ns + nt) / denom : 0.0;
    }
  }
  return 0.0;
}

/// Closed-form zero-crossing value of an active tree edge: with R the set of
/// vertices whose root path uses the edge and T its tree,
///   1 / ((|T| / |R|) sum_R len - sum_T len).
/// Nonpositive denominators mean the coefficient never crosses.
inline double crossing_ratio_tree(const TwinTrees& tt, int edge) {
  const auto it = std::find(tt.edges_.begin(), tt.edges_.end(), edge);
  if (it == tt.edges_.end())
    throw EdgeNotActive("edge " + std::to_string(edge) +
                        " is not part of the forest");
  const Graph& g = tt.graph();
  const Edge& e = g.edges[edge];
  // The child endpoint is the one whose parent edge this is.
  const int child = tt.parent_edge_[e.tail] == edge ? e.tail : e.head;
  const int tree = tt.side_[child];
  // R: vertices of the tree whose climb passes through child.
  double sum_r = 0.0;
  int n_r = 0;
  for (int v = 0; v < g.n; ++v) {
    if (tt.side_[v] != tree) continue;
    for (int u = v;; u = tt.parent_[u]) {
      if (u == child) {
        sum_r += tt.len_[v];
        ++n_r;
        break;
      }
      if (tt.parent_[u] < 0) break;
    }
  }
  const double denom =
      (static_cast<double>(tt.count_[tree]) / n_r) * sum_r - tt.sum_len_[tree];
  return denom > 0.0 ? 1.0 / denom : 0.0;
}

struct EquivalenceIssue {
  int k = 0;
  double lambda = 0;
  int edge = -1;
  std::string what;
};

/// Outcome of replaying a path against the twin-tree theory.  checked is
/// false when the assumptions do not hold (shortest path trees not unique),
/// in which case nothing was asserted.
struct EquivalenceReport {
  bool checked = false;
  std::string skip_reason;
  std::vector<EquivalenceIssue> violations;
  double distance = 0.0;  // Dijkstra distance, for convenience
  bool ok() const { return checked && violations.empty(); }
};

/// Replays a homotopy run and checks the structural claims that make it a
/// shortest path algorithm: every breakpoint joins an edge (no crossings),
/// each join extends one of the two trees at the closed-form value, leaf
/// distances match Dijkstra labels, the first bridge ends the path, and the
/// terminal support is the shortest s-t path.
inline EquivalenceReport verify_dijkstra_equivalence(const Graph& g, int s,
                                                     int t,
                                                     const LassoPath& path,
                                                     double tol = 1e-8) {
  EquivalenceReport rep;
  const ShortestPathTree from_s = dijkstra(g, s);
  const ShortestPathTree from_t = dijkstra(g, t);
  rep.distance = from_s.dist[t];
  {
    const UniquenessReport us = terminal_uniqueness_check(g, from_s);
    const UniquenessReport ut = terminal_uniqueness_check(g, from_t);
    if (!us.unique || !ut.unique) {
      rep.skip_reason = "shortest path trees are not unique (" +
                        std::to_string(us.ambiguous.size()) + " ambiguous from s, " +
                        std::to_string(ut.ambiguous.size()) + " from t)";
      return rep;
    }
  }
  rep.checked = true;

  TwinTrees tt(g, s, t);
  auto flag = [&](int k, double lambda, int edge, std::string what) {
    rep.violations.push_back({k, lambda, edge, std::move(what)});
  };

  bool terminated = false;
  for (std::size_t i = 0; i < path.events.size();) {
    const int k = path.events[i].k;
    const double lambda = path.events[i].lambda;
    std::size_t end = i;
    while (end < path.events.size() && path.events[end].k == k) ++end;

    if (terminated)
      flag(k, lambda, path.events[i].edge, "event after the bridging step");

    // The breakpoint must equal the best joining value over all edges.
    double best_join = 0.0;
    for (int j = 0; j < g.m(); ++j) {
      if (std::find(tt.active_edges().begin(), tt.active_edges().end(), j) !=
          tt.active_edges().end())
        continue;
      best_join = std::max(best_join, joining_time_tree(tt, j));
    }
    if (std::abs(best_join - lambda) > tol * std::max(1.0, lambda))
      flag(k, lambda, -1,
           "breakpoint does not equal the best closed-form joining value " +
               g17(best_join));

    bool bridged = false;
    for (std::size_t e = i; e < end; ++e) {
      const PathEvent& ev = path.events[e];
      if (!ev.join) {
        flag(k, lambda, ev.edge, "coefficient crossed zero");
        continue;
      }
      const double tj = joining_time_tree(tt, ev.edge);
      if (std::abs(tj - lambda) > tol * std::max(1.0, lambda))
        flag(k, lambda, ev.edge,
             "joined away from its closed-form value " + g17(tj));
      int tree = 0, anchor = -1, leaf = -1;
      switch (tt.classify(ev.edge, &tree, &anchor, &leaf)) {
        case TwinTrees::Kind::extension: {
          const double l = tt.root_length(anchor) + g.edges[ev.edge].weight;
          const ShortestPathTree& ref = tree == 1 ? from_s : from_t;
          if (std::abs(l - ref.dist[leaf]) > tol * std::max(1.0, ref.dist[leaf]))
            flag(k, lambda, ev.edge,
                 "leaf distance " + g17(l) + " disagrees with Dijkstra " +
                     g17(ref.dist[leaf]));
          tt.attach(ev.edge);
          break;
        }
        case TwinTrees::Kind::bridge:
          bridged = true;
          break;
        case TwinTrees::Kind::interior:
          flag(k, lambda, ev.edge, "join closes a cycle inside a tree");
          break;
        case TwinTrees::Kind::detached:
          flag(k, lambda, ev.edge, "join touches neither tree");
          break;
      }
    }

    if (bridged) terminated = true;

    // On the piece below this breakpoint no active edge may cross zero.
    const double next_lambda = end < path.events.size()
                                   ? path.events[end].lambda
                                   : 0.0;
    for (const int j : tt.active_edges()) {
      const double r = crossing_ratio_tree(tt, j);
      if (r > next_lambda * (1.0 + tol) && r < lambda * (1.0 - tol))
        flag(k, lambda, j,
             "active edge would cross zero at " + g17(r) +
                 " inside the next piece");
    }
    i = end;
  }

  if (!terminated)
    flag(path.n_breakpoints(), 0.0, -1, "path ended without a bridging step");

  try {
    const Path p = extract_path(g, s, t, path.terminal_beta);
    if (std::abs(p.length - rep.distance) > tol * std::max(1.0, rep.distance))
      flag(path.n_breakpoints(), 0.0, -1,
           "terminal path length " + g17(p.length) +
               " differs from the Dijkstra distance " + g17(rep.distance));
    const Path ref = tree_path(g, from_s, t);
    std::vector<int> got = p.edges, want = ref.edges;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want)
      flag(path.n_breakpoints(), 0.0, -1,
           "terminal support is a different path than the Dijkstra tree's");
  } catch (const NotAPath& err) {
    flag(path.n_breakpoints(), 0.0, -1,
         std::string("terminal support is not an s-t path: ") + err.what());
  }
  return rep;
}

/// Throwing wrapper for pipelines that treat any violation as fatal.
inline void require_equivalence(const Graph& g, int s, int t,
                                const LassoPath& path, double tol = 1e-8) {
  const EquivalenceReport rep = verify_dijkstra_equivalence(g, s, t, path, tol);
  if (!rep.checked) return;  // assumptions absent: nothing to assert
  if (!rep.violations.empty()) {
    const EquivalenceIssue& v = rep.violations.front();
    throw PropertyViolation("at breakpoint " + std::to_string(v.k) +
                            " (lambda " + g17(v.lambda) + ", edge " +
                            std::to_string(v.edge) + "): " + v.what +
                            (rep.violations.size() > 1
                                 ? " (+" + std::to_string(rep.violations.size() - 1) +
                                       " more)"
                                 : ""));
  }
}

}  // namespace lassopath
