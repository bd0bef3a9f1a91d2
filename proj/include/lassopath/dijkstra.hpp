#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "lassopath/errors.hpp"
#include "lassopath/graph.hpp"

namespace lassopath {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shortest path tree rooted at `source`.  parent/parent_edge are -1 at the
/// source.  When a target cut-off was used, only vertices settled before the
/// target carry final distances; `settled` says which.
struct ShortestPathTree {
  int source = 0;
  std::vector<double> dist;
  std::vector<int> parent;
  std::vector<int> parent_edge;
  std::vector<char> settled;
  int settled_count = 0;
};

/// Textbook Dijkstra with lazy deletion.  The heap orders by (distance,
/// vertex id), so runs are deterministic even under exact distance ties.
/// Pass target >= 0 to stop as soon as that vertex is settled.
inline ShortestPathTree dijkstra(const Graph& g, int source, int target = -1) {
  ShortestPathTree t;
  t.source = source;
  t.dist.assign(g.n, kInf);
  t.parent.assign(g.n, -1);
  t.parent_edge.assign(g.n, -1);
  t.settled.assign(g.n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  t.dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (t.settled[u]) continue;
    t.settled[u] = 1;
    ++t.settled_count;
    if (u == target) break;
    for (const Arc& a : g.adj[u]) {
      const double nd = d + a.weight;
      if (nd < t.dist[a.to]) {
        t.dist[a.to] = nd;
        t.parent[a.to] = u;
        t.parent_edge[a.to] = a.edge;
        heap.push({nd, a.to});
      }
    }
  }
  return t;
}

/// Path from the tree's source to `target`, read off the parent pointers.
inline Path tree_path(const Graph& g, const ShortestPathTree& t, int target) {
  if (!t.settled[target])
    throw NotAPath("target was not settled by this tree");
  Path p;
  for (int v = target; v != t.source; v = t.parent[v]) {
    p.vertices.push_back(v);
    p.edges.push_back(t.parent_edge[v]);
    p.length += g.edges[t.parent_edge[v]].weight;
  }
  p.vertices.push_back(t.source);
  std::reverse(p.vertices.begin(), p.vertices.end());
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

/// Witness that the bidirectional search stopped correctly: at termination
/// the cheapest open label on each side summed to at least the best bridge
/// path found, so no shorter s-t path can exist.
struct MeetingCertificate {
  double top_forward = kInf;
  double top_backward = kInf;
  double best_bridge = kInf;
  int bridge_edge = -1;      // edge joining the two search scopes
  int bridge_tail = -1;      // its endpoint on the forward side
  int bridge_head = -1;      // its endpoint on the backward side
};

struct BidirectionalResult {
  double distance = kInf;
  Path path;
  int settled_forward = 0;
  int settled_backward = 0;
  MeetingCertificate certificate;
};

/// Bidirectional Dijkstra.  Both searches run the same deterministic rule as
/// `dijkstra`; the side with the cheaper open label advances.  Terminates
/// when top_forward + top_backward >= best bridge found so far.
inline BidirectionalResult bidirectional_dijkstra(const Graph& g, int s,
                                                  int t) {
  if (s == t) throw SameEndpoints("source equals target");
  using Item = std::pair<double, int>;
  using Heap = std::priority_queue<Item, std::vector<Item>, std::greater<Item>>;
  struct Side {
    std::vector<double> dist;
    std::vector<int> parent, parent_edge;
    std::vector<char> settled;
    Heap heap;
    int settled_count = 0;
  };
  Side fwd, bwd;
  for (Side* side : {&fwd, &bwd}) {
    side->dist.assign(g.n, kInf);
    side->parent.assign(g.n, -1);
    side->parent_edge.assign(g.n, -1);
    side->settled.assign(g.n, 0);
  }
  fwd.dist[s] = 0.0;
  fwd.heap.push({0.0, s});
  bwd.dist[t] = 0.0;
  bwd.heap.push({0.0, t});

  MeetingCertificate cert;
  auto top = [](Side& side) {
    while (!side.heap.empty() && side.settled[side.heap.top().second])
      side.heap.pop();
    return side.heap.empty() ? kInf : side.heap.top().first;
  };

  while (true) {
    const double tf = top(fwd);
    const double tb = top(bwd);
    if (tf + tb >= cert.best_bridge) {
      cert.top_forward = tf;
      cert.top_backward = tb;
      break;
    }
    Side& side = tf <= tb ? fwd : bwd;
    Side& peer = tf <= tb ? bwd : fwd;
    const bool forward = &side == &fwd;
    const auto [d, u] = side.heap.top();
    side.heap.pop();
    side.settled[u] = 1;
    ++side.settled_count;
    for (const Arc& a : g.adj[u]) {
      const double nd = d + a.weight;
      if (nd < side.dist[a.to]) {
        side.dist[a.to] = nd;
        side.parent[a.to] = u;
        side.parent_edge[a.to] = a.edge;
        side.heap.push({nd, a.to});
      }
      if (peer.dist[a.to] < kInf) {
        const double through = d + a.weight + peer.dist[a.to];
        if (through < cert.best_bridge) {
          cert.best_bridge = through;
          cert.bridge_edge = a.edge;
          cert.bridge_tail = forward ? u : a.to;
          cert.bridge_head = forward ? a.to : u;
        }
      }
    }
  }

  BidirectionalResult r;
  r.distance = cert.best_bridge;
  r.settled_forward = fwd.settled_count;
  r.settled_backward = bwd.settled_count;
  r.certificate = cert;
  // Stitch: s -> bridge_tail, the bridge edge, bridge_head -> t.
  for (int v = cert.bridge_tail; v != s; v = fwd.parent[v]) {
    r.path.vertices.push_back(v);
    r.path.edges.push_back(fwd.parent_edge[v]);
  }
  r.path.vertices.push_back(s);
  std::reverse(r.path.vertices.begin(), r.path.vertices.end());
  std::reverse(r.path.edges.begin(), r.path.edges.end());
  r.path.edges.push_back(cert.bridge_edge);
  for (int v = cert.bridge_head; v != t; v = bwd.parent[v]) {
    r.path.vertices.push_back(v);
    r.path.edges.push_back(bwd.parent_edge[v]);
  }
  r.path.vertices.push_back(t);
  for (int j : r.path.edges) r.path.length += g.edges[j].weight;
  return r;
}

/// Flags vertices whose shortest distance is achieved through two or more
/// distinct predecessors (within a relative tolerance).  An empty list means
/// the shortest path tree at this source is unique, which is the assumption
/// behind the path-equivalence checks.
struct UniquenessReport {
  bool unique = true;
  std::vector<int> ambiguous;  // vertices with multiple tight predecessors
};

inline UniquenessReport terminal_uniqueness_check(const Graph& g,
                                                  const ShortestPathTree& t,
                                                  double tol = 1e-12) {
  UniquenessReport r;
  for (int v = 0; v < g.n; ++v) {
    if (v == t.source || !t.settled[v]) continue;
    int tight = 0;
    for (const Arc& a : g.adj[v]) {
      if (!t.settled[a.to] && t.dist[a.to] == kInf) continue;
      const double through = t.dist[a.to] + a.weight;
      if (std::abs(through - t.dist[v]) <= tol * std::max(1.0, t.dist[v]))
        ++tight;
    }
    if (tight >= 2) {
      r.unique = false;
      r.ambiguous.push_back(v);
    }
  }
  return r;
}

}  // namespace lassopath
