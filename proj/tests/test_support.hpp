#pragma once

// Shared helpers for the test suite.  Everything here is an independent
// reference implementation: brute-force path enumeration, SVD pseudoinverse
// and a slow proximal-gradient lasso solver.  The library must agree with
// these on small instances; none of this code is reachable from the library
// itself.

#include <Eigen/Core>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lassopath/graph.hpp"
#include "lassopath/rng.hpp"

namespace testsupport {

struct EnumResult {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_edges;     // edge ids along one optimal path
  long long n_paths = 0;           // all simple s-t paths
  int n_optimal = 0;               // paths within rel. 1e-12 of the optimum
};

/// Exhaustive simple-path enumeration by DFS.  Exponential, fine below ~12
/// vertices.  Tie counting uses a relative tolerance so it can confirm
/// uniqueness claims about the optimum.
inline EnumResult enumerate_paths(const lassopath::Graph& g, int s, int t) {
  EnumResult res;
  std::vector<char> on_path(g.n, 0);
  std::vector<int> edge_stack;
  std::vector<std::pair<double, std::vector<int>>> lengths;
  double length = 0.0;

  auto dfs = [&](auto&& self, int u) -> void {
    if (u == t) {
      ++res.n_paths;
      lengths.push_back({length, edge_stack});
      return;
    }
    for (const lassopath::Arc& a : g.adj[u]) {
      if (on_path[a.to]) continue;
      on_path[a.to] = 1;
      edge_stack.push_back(a.edge);
      length += a.weight;
      self(self, a.to);
      length -= a.weight;
      edge_stack.pop_back();
      on_path[a.to] = 0;
    }
  };
  on_path[s] = 1;
  dfs(dfs, s);

  for (const auto& [len, edges] : lengths) {
    if (len < res.best) {
      res.best = len;
      res.best_edges = edges;
    }
  }
  for (const auto& [len, edges] : lengths)
    if (len <= res.best * (1.0 + 1e-12)) ++res.n_optimal;
  return res;
}

/// SVD pseudoinverse, the reference route for every least-squares claim.
inline Eigen::MatrixXd pinv_svd(const Eigen::MatrixXd& a, double rcond = 1e-12) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sig = svd.singularValues();
  const double cutoff = sig.size() > 0 ? rcond * sig[0] : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sig.size());
  for (int i = 0; i < sig.size(); ++i)
    if (sig[i] > cutoff) inv[i] = 1.0 / sig[i];
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

/// Reference lasso solver: FISTA with a fixed 1/L step, run to high
/// precision.  Slow and dense on purpose; it shares no code path with the
/// homotopy or splitting solvers it cross-checks.
inline Eigen::VectorXd fista_lasso(const Eigen::MatrixXd& q,
                                   const Eigen::VectorXd& y, double lambda,
                                   int iters = 50000) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(q);
  const double L = svd.singularValues()[0] * svd.singularValues()[0];
  const double step = 1.0 / L;
  const Eigen::MatrixXd qt = q.transpose();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(q.cols());
  Eigen::VectorXd z = beta;
  double tk = 1.0;
  for (int it = 0; it < iters; ++it) {
    const Eigen::VectorXd grad = qt * (q * z - y);
    Eigen::VectorXd next = z - step * grad;
    const double thr = lambda * step;
    for (int i = 0; i < next.size(); ++i)
      next[i] = std::copysign(std::max(std::abs(next[i]) - thr, 0.0), next[i]);
    const double tnext = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    z = next + ((tk - 1.0) / tnext) * (next - beta);
    beta = next;
    tk = tnext;
  }
  return beta;
}

/// Value of the l1-penalized objective; used to compare solver outputs
/// without trusting either one.
inline double lasso_objective(const Eigen::MatrixXd& q,
                              const Eigen::VectorXd& y, double lambda,
                              const Eigen::VectorXd& beta) {
  return 0.5 * (y - q * beta).squaredNorm() + lambda * beta.lpNorm<1>();
}

}  // namespace testsupport
