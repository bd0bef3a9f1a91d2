#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "lassopath/errors.hpp"
#include "lassopath/graph.hpp"

namespace lassopath {

/// Rooted view of a subtree of a graph.
///
/// Local vertex 0 is the root; every other local vertex stores the edge to
/// its parent, the sign of that edge relative to the climb (+1 when the graph
/// edge's tail is the child) and the weighted distance to the root.  The
/// local orderings define the row/column conventions of the matrix forms
/// below.
struct TreeView {
  std::vector<int> vertices;                 // local -> graph vertex, [0] = root
  std::unordered_map<int, int> local;        // graph vertex -> local
  std::vector<int> edges;                    // local edge -> graph edge id
  std::unordered_map<int, int> local_edge;   // graph edge id -> local edge
  std::vector<int> parent;                   // local parent, -1 at root
  std::vector<int> parent_edge;              // local edge to parent, -1 at root
  std::vector<int> parent_sign;              // climb sign, 0 at root
  std::vector<double> root_length;           // weighted distance to root

  int p() const { return static_cast<int>(vertices.size()); }
  double total_root_length() const {
    double s = 0.0;
    for (double l : root_length) s += l;
    return s;
  }
};

/// Builds the rooted view of the subgraph spanned by `edge_ids`.  The edges
/// must form a tree containing `root`: connected, no repeats, no cycles.
inline TreeView tree_view(const Graph& g, const std::vector<int>& edge_ids,
                          int root) {
  TreeView t;
  std::unordered_map<int, std::vector<int>> incident;  // graph vertex -> edges
  for (int j : edge_ids) {
    if (j < 0 || j >= g.m()) throw NotATree("edge id out of range");
    incident[g.edges[j].tail].push_back(j);
    incident[g.edges[j].head].push_back(j);
  }
  if (!edge_ids.empty() && incident.find(root) == incident.end())
    throw NotATree("root touches none of the edges");

  t.vertices.push_back(root);
  t.local.emplace(root, 0);
  t.parent.push_back(-1);
  t.parent_edge.push_back(-1);
  t.parent_sign.push_back(0);
  t.root_length.push_back(0.0);

  std::vector<int> frontier{root};
  std::unordered_map<int, bool> used;
  for (int j : edge_ids) {
    if (used.count(j)) throw NotATree("edge repeated");
    used.emplace(j, false);
  }
  while (!frontier.empty()) {
    const int u = frontier.back();
    frontier.pop_back();
    const int lu = t.local.at(u);
    for (int j : incident[u]) {
      if (used.at(j)) continue;
      used.at(j) = true;
      const Edge& e = g.edges[j];
      const int v = e.tail == u ? e.head : e.tail;
      if (t.local.count(v))
        throw NotATree("edge set contains a cycle at vertex " +
                       std::to_string(g.labels[v]));
      const int lv = t.p();
      t.vertices.push_back(v);
      t.local.emplace(v, lv);
      t.parent.push_back(lu);
      t.parent_edge.push_back(static_cast<int>(t.edges.size()));
      t.parent_sign.push_back(e.tail == v ? 1 : -1);
      t.root_length.push_back(t.root_length[lu] + e.weight);
      t.edges.push_back(j);
      t.local_edge.emplace(j, t.parent_edge.back());
      frontier.push_back(v);
    }
  }
  for (const auto& [j, was_used] : used)
    if (!was_used) throw NotATree("edge set is disconnected from the root");
  return t;
}

/// Path matrix P, (p-1) x (p-1): column c is the incidence vector, in local
/// edge coordinates, of the path from non-root vertex c+1 up to the root.
/// An edge climbs with sign +1 when its tail is the child.
inline Eigen::MatrixXd path_matrix(const TreeView& t) {
  const int k = t.p() - 1;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(k, k);
  for (int lv = 1; lv <= k; ++lv) {
    for (int u = lv; u != 0; u = t.parent[u])
      p(t.parent_edge[u], lv - 1) = t.parent_sign[u];
  }
  return p;
}

/// Moore-Penrose pseudoinverse of the tree's incidence matrix, (p-1) x p,
/// without any factorization: with P the path matrix, column v of the result
/// is P (chi_v - (1/p) 1), where chi_v selects the root path of v and is zero
/// for the root itself.  Row order follows t.edges, column order t.vertices.
inline Eigen::MatrixXd tree_pseudoinverse(const TreeView& t) {
  const int k = t.p() - 1;
  const Eigen::MatrixXd p = path_matrix(t);
  Eigen::MatrixXd pinv(k, t.p());
  const Eigen::VectorXd mean = p.rowwise().sum() / static_cast<double>(t.p());
  pinv.col(0) = -mean;
  for (int c = 0; c < k; ++c) pinv.col(c + 1) = p.col(c) - mean;
  return pinv;
}

/// Incidence of the subtree in local coordinates, p x (p-1); mainly a test
/// aid for checking the closed form against a generic pseudoinverse.
inline Eigen::MatrixXd tree_incidence(const TreeView& t, const Graph& g) {
  const int k = t.p() - 1;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(t.p(), k);
  for (int le = 0; le < k; ++le) {
    const Edge& e = g.edges[t.edges[le]];
    d(t.local.at(e.tail), le) = 1.0;
    d(t.local.at(e.head), le) = -1.0;
  }
  return d;
}

}  // namespace lassopath
