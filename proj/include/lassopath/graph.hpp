#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lassopath/errors.hpp"
#include "lassopath/rng.hpp"
#include "lassopath/sparse.hpp"

namespace lassopath {

/// One undirected edge with the reference orientation fixed at build time.
/// Orientation only determines the sign convention of the incidence column;
/// all algorithms treat the edge as traversable both ways.
struct Edge {
  int tail = 0;
  int head = 0;
  double weight = 0.0;
};

struct Arc {
  int edge = 0;
  int to = 0;
  double weight = 0.0;
};

/// Connected weighted graph over vertices 0..n-1.
///
/// External vertex labels (64-bit, arbitrary) are kept alongside so files
/// written by the generators survive a round trip unchanged.  `adj` is built
/// once and shared by every traversal.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<Arc>> adj;
  std::vector<std::int64_t> labels;                    // index -> label
  std::unordered_map<std::int64_t, int> label_index;   // label -> index

  int m() const { return static_cast<int>(edges.size()); }

  int index_of(std::int64_t label) const {
    auto it = label_index.find(label);
    if (it == label_index.end())
      throw ParseError("unknown vertex label " + std::to_string(label));
    return it->second;
  }
};

struct LabeledEdge {
  std::int64_t u = 0;
  std::int64_t v = 0;
  double w = 0.0;
};

/// Validates and indexes an edge list.  Vertices are numbered by first
/// appearance.  Rejects self loops, repeated unordered pairs, non-positive
/// weights and disconnected inputs; edge order is preserved because edge ids
/// are part of the on-disk format.
inline Graph build_graph(const std::vector<LabeledEdge>& input) {
  Graph g;
  auto intern = [&](std::int64_t label) {
    auto [it, inserted] = g.label_index.try_emplace(label, g.n);
    if (inserted) {
      g.labels.push_back(label);
      ++g.n;
    }
    return it->second;
  };
  std::unordered_map<std::uint64_t, int> seen;
  seen.reserve(input.size() * 2);
  for (const auto& e : input) {
    const int u = intern(e.u);
    const int v = intern(e.v);
    if (u == v)
      throw SelfLoop("self loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0))
      throw NonPositiveWeight("edge (" + std::to_string(e.u) + "," +
                              std::to_string(e.v) + ") has weight " +
                              std::to_string(e.w));
    const std::uint64_t key =
        (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
        static_cast<std::uint64_t>(std::max(u, v));
    if (!seen.try_emplace(key, g.m()).second)
      throw DuplicateEdge("repeated edge (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ")");
    g.edges.push_back({u, v, e.w});
  }
  g.adj.resize(g.n);
  for (int j = 0; j < g.m(); ++j) {
    const Edge& e = g.edges[j];
    g.adj[e.tail].push_back({j, e.head, e.weight});
    g.adj[e.head].push_back({j, e.tail, e.weight});
  }
  // Connectivity: iterative DFS from vertex 0.
  std::vector<char> mark(g.n, 0);
  std::vector<int> stack{0};
  if (g.n > 0) mark[0] = 1;
  int reached = g.n > 0 ? 1 : 0;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const Arc& a : g.adj[u]) {
      if (!mark[a.to]) {
        mark[a.to] = 1;
        ++reached;
        stack.push_back(a.to);
      }
    }
  }
  if (reached != g.n)
    throw DisconnectedGraph("graph has " + std::to_string(g.n - reached) +
                            " unreachable vertices");
  return g;
}

/// Vertex-edge incidence D, n x m: column j is +1 at the tail and -1 at the
/// head of edge j.
inline SparseMatrix incidence(const Graph& g) {
  std::vector<SparseMatrix::Triplet> trips;
  trips.reserve(static_cast<std::size_t>(g.m()) * 2);
  for (int j = 0; j < g.m(); ++j) {
    trips.emplace_back(g.edges[j].tail, j, 1.0);
    trips.emplace_back(g.edges[j].head, j, -1.0);
  }
  return SparseMatrix::from_triplets(g.n, g.m(), std::move(trips));
}

/// Weight-normalized incidence Q = D W^-1: column j is +-1/w_j at the
/// endpoints of edge j.  This is the design matrix of the l1 problem.
inline SparseMatrix weighted_incidence(const Graph& g) {
  std::vector<SparseMatrix::Triplet> trips;
  trips.reserve(static_cast<std::size_t>(g.m()) * 2);
  for (int j = 0; j < g.m(); ++j) {
    const double inv = 1.0 / g.edges[j].weight;
    trips.emplace_back(g.edges[j].tail, j, inv);
    trips.emplace_back(g.edges[j].head, j, -inv);
  }
  return SparseMatrix::from_triplets(g.n, g.m(), std::move(trips));
}

/// Source/sink indicator y = e_s - e_t.
inline Eigen::VectorXd indicator(const Graph& g, int s, int t) {
  if (s == t) throw SameEndpoints("source equals target");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(g.n);
  y[s] = 1.0;
  y[t] = -1.0;
  return y;
}

/// Simple path described by its vertex sequence and the edges between them.
struct Path {
  std::vector<int> vertices;  // front() = s, back() = t
  std::vector<int> edges;     // edges[i] connects vertices[i], vertices[i+1]
  double length = 0.0;
};

/// Reads a path off a signed edge support.  The support must be exactly the
/// edge set of a simple s-t path, and each sign must agree with the direction
/// the walk traverses the edge (+1 tail->head).  Anything else is NotAPath.
inline Path path_from_support(const Graph& g, int s, int t,
                              const std::vector<std::pair<int, int>>& support) {
  if (s == t) throw SameEndpoints("source equals target");
  std::unordered_map<int, int> sign_of;  // edge id -> expected sign
  std::unordered_map<int, std::vector<int>> at;  // vertex -> incident support
  for (const auto& [j, sgn] : support) {
    if (j < 0 || j >= g.m()) throw NotAPath("edge id out of range");
    if (sgn != 1 && sgn != -1) throw NotAPath("sign must be +-1");
    if (!sign_of.emplace(j, sgn).second) throw NotAPath("edge repeated in support");
    at[g.edges[j].tail].push_back(j);
    at[g.edges[j].head].push_back(j);
  }
  Path p;
  p.vertices.push_back(s);
  int cur = s;
  int prev_edge = -1;
  while (cur != t) {
    auto it = at.find(cur);
    // Interior vertices see the incoming edge plus exactly one continuation.
    const int expected = prev_edge < 0 ? 1 : 2;
    if (it == at.end() || static_cast<int>(it->second.size()) != expected)
      throw NotAPath("support does not continue the walk at vertex " +
                     std::to_string(g.labels[cur]));
    int next_edge = -1;
    for (int j : it->second)
      if (j != prev_edge) next_edge = j;
    const Edge& e = g.edges[next_edge];
    const bool forward = e.tail == cur;
    const int next = forward ? e.head : e.tail;
    if (sign_of[next_edge] != (forward ? 1 : -1))
      throw NotAPath("edge sign opposes walk direction on edge " +
                     std::to_string(next_edge));
    p.edges.push_back(next_edge);
    p.length += e.weight;
    p.vertices.push_back(next);
    prev_edge = next_edge;
    cur = next;
    if (p.edges.size() > sign_of.size())
      throw NotAPath("walk revisits support");  // cycle guard
  }
  if (p.edges.size() != sign_of.size())
    throw NotAPath("support has edges detached from the walk");
  auto it = at.find(t);
  if (it == at.end() || it->second.size() != 1)
    throw NotAPath("target is not an endpoint of the support");
  return p;
}

/// Multiplies each weight by (1 + eps * u), u uniform in (-1, 1).  Used to
/// break exact ties before path verification; relative so the jitter cannot
/// flip a weight's sign.
inline Graph perturb_weights(const Graph& g, Rng& rng, double eps) {
  Graph out = g;
  for (Edge& e : out.edges) {
    const double u = 2.0 * uniform01(rng) - 1.0;
    e.weight *= 1.0 + eps * u;
  }
  for (auto& arcs : out.adj)
    for (Arc& a : arcs) a.weight = out.edges[a.edge].weight;
  return out;
}

}  // namespace lassopath
