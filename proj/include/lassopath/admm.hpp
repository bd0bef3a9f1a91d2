#pragma once

#include <Eigen/Core>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lassopath/cg.hpp"
#include "lassopath/cholesky.hpp"
#include "lassopath/errors.hpp"
#include "lassopath/format.hpp"
#include "lassopath/graph.hpp"
#include "lassopath/sparse.hpp"

namespace lassopath {

/// Smallest penalty for which the lasso solution is identically zero.
inline double lambda_max(const SparseMatrix& q, const Eigen::VectorXd& y) {
  const Eigen::VectorXd c = q.mult_transpose(y);
  return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
}

/// Entrywise shrinkage toward zero by kappa.
inline Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double kappa) {
  if (kappa < 0.0) throw Error("soft_threshold needs kappa >= 0");
  Eigen::VectorXd out(x.size());
  for (int i = 0; i < x.size(); ++i)
    out[i] = x[i] > 0.0 ? std::max(x[i] - kappa, 0.0)
                        : std::min(x[i] + kappa, 0.0);
  return out;
}

struct ProximalConfig {
  double lambda = -1.0;        // < 0: use lambda_factor * lambda_max(Q, y)
  double lambda_factor = 1e-4;
  double rho = 1.0;            // penalty, > 0
  double alpha_or = 1.8;       // over-relaxation, in (0, 2)
  double eps_abs = 1e-8;
  double eps_rel = 1e-6;
  // Small graphs with competing near-equal paths drift mass between them at
  // O(lambda) per step, so tiny penalties can need tens of thousands of
  // cheap iterations; well-conditioned instances stop in tens regardless.
  int max_iter = 100000;
  CgConfig inner;              // inexact mode only: rel 1e-8, <= 2000 steps
  bool strict_inner = false;   // throw when an inner solve hits its cap
};

struct ResidualRecord {
  double primal = 0;
  double dual = 0;
  int cg_iters = 0;  // 0 in exact mode
};

struct ProximalState {
  Eigen::VectorXd beta;   // last unthresholded iterate
  Eigen::VectorXd alpha;  // last thresholded iterate, exact zeros off support
  Eigen::VectorXd v;      // scaled dual
  int iterations = 0;
};

/// Outcome of one solve.  beta is the thresholded iterate (== state.alpha),
/// so inactive entries are exact zeros.  converged false means the outer
/// iteration cap was reached; state and history describe the run either way.
/// inner_converged false flags at least one truncated inner solve.
struct ProximalResult {
  Eigen::VectorXd beta;
  ProximalState state;
  std::vector<ResidualRecord> history;
  bool converged = false;
  bool inner_converged = true;
  double lambda = 0;  // penalty actually used
  double rho = 0;
  int total_cg_iterations = 0;
};

/// Initial (alpha, v) with alpha carrying +-w along a path's edges in
/// traversal orientation.  beta is derived by the first update, keeping the
/// triple consistent.
struct WarmStart {
  Eigen::VectorXd alpha;
  Eigen::VectorXd v;
};

inline WarmStart warm_start_from_path(const Graph& g, int s, int t,
                                      const Path& path) {
  if (path.vertices.empty() || path.vertices.front() != s ||
      path.vertices.back() != t)
    throw EndpointMismatch("path does not run between the requested endpoints");
  WarmStart w;
  w.alpha = Eigen::VectorXd::Zero(g.m());
  w.v = Eigen::VectorXd::Zero(g.m());
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const int e = path.edges[i];
    const double sign = g.edges[e].tail == path.vertices[i] ? 1.0 : -1.0;
    w.alpha[e] = sign * g.edges[e].weight;
  }
  return w;
}

namespace detail {

inline void check_proximal_config(const ProximalConfig& cfg) {
  if (!(cfg.rho > 0.0)) throw Error("penalty rho must be positive");
  if (!(cfg.alpha_or > 0.0 && cfg.alpha_or < 2.0))
    throw Error("over-relaxation must lie in (0, 2)");
  if (cfg.max_iter < 1) throw Error("max_iter must be at least 1");
}

inline double resolve_lambda(const ProximalConfig& cfg, const SparseMatrix& q,
                             const Eigen::VectorXd& y) {
  return cfg.lambda >= 0.0 ? cfg.lambda
                           : cfg.lambda_factor * lambda_max(q, y);
}

/// Scaled ADMM on 0.5 |y - Q b|^2 + lambda |b|_1 split as b = alpha.  The
/// b-update solves the m x m normal system through the kernel-side identity
///   b = (h - Q^T (QQ^T + rho I)^{-1} Q h) / rho,   h = Q^T y + rho (alpha - v),
/// so only an n x n system is ever solved; eta_solve provides that solve and
/// reports inner iterations when it is iterative.  Over-relaxed mixing feeds
/// the alpha- and v-updates.  Stops once the primal and dual residuals both
/// clear their tolerance: requiring both keeps the terminal iterate a
/// certified fixed point, so runs that stop from different starting states
/// land within cross-run agreement tolerances of each other.
template <class EtaSolve>
ProximalResult admm_driver(const SparseMatrix& q, const Eigen::VectorXd& y,
                           const ProximalConfig& cfg, const WarmStart* warm,
                           EtaSolve&& eta_solve) {
  check_proximal_config(cfg);
  const int m = q.cols;
  const double lambda = resolve_lambda(cfg, q, y);
  const double rho = cfg.rho;
  const double sqrt_m = std::sqrt(static_cast<double>(m));

  ProximalResult res;
  res.lambda = lambda;
  res.rho = rho;

  const Eigen::VectorXd qty = q.mult_transpose(y);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
  if (warm) {
    if (warm->alpha.size() != m || warm->v.size() != m)
      throw Error("warm start dimensions do not match the design");
    alpha = warm->alpha;
    v = warm->v;
  }
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);

  for (int it = 1; it <= cfg.max_iter; ++it) {
    const Eigen::VectorXd h = qty + rho * (alpha - v);
    int cg_iters = 0;
    const Eigen::VectorXd eta = eta_solve(q.mult(h), &cg_iters, &res);
    beta = (h - q.mult_transpose(eta)) / rho;

    const Eigen::VectorXd mixed =
        cfg.alpha_or * beta + (1.0 - cfg.alpha_or) * alpha;
    const Eigen::VectorXd alpha_prev = std::move(alpha);
    alpha = soft_threshold(mixed + v, lambda / rho);
    v += mixed - alpha;

    const double r_norm = (beta - alpha).norm();
    const double s_norm = rho * (alpha - alpha_prev).norm();
    res.history.push_back({r_norm, s_norm, cg_iters});
    res.total_cg_iterations += cg_iters;
    res.state.iterations = it;

    const double eps_pri =
        cfg.eps_abs * sqrt_m + cfg.eps_rel * std::max(beta.norm(), alpha.norm());
    const double eps_dual = cfg.eps_abs * sqrt_m + cfg.eps_rel * v.norm();
    if (r_norm <= eps_pri && s_norm <= eps_dual) {
      res.converged = true;
      break;
    }
  }

  res.state.beta = std::move(beta);
  res.state.alpha = alpha;
  res.state.v = std::move(v);
  res.beta = std::move(alpha);
  return res;
}

}  // namespace detail

/// Exact variant: the n x n system is factored once and reused every
/// iteration (two triangular sweeps per solve).
inline ProximalResult admm_solve(const SparseMatrix& q, const Eigen::VectorXd& y,
                                 const ProximalConfig& cfg = {},
                                 const WarmStart* warm = nullptr) {
  detail::check_proximal_config(cfg);
  const CholeskyFactor factor(normal_matrix(q, cfg.rho));
  return detail::admm_driver(
      q, y, cfg, warm,
      [&](const Eigen::VectorXd& rhs, int*, ProximalResult*) {
        return factor.solve(rhs);
      });
}

/// Inexact variant: the n x n system is solved by diagonally preconditioned
/// conjugate gradients, warm-started from the previous outer iteration, with
/// per-outer inner counts recorded in the history.
inline ProximalResult inadmm_solve(const SparseMatrix& q,
                                   const Eigen::VectorXd& y,
                                   const ProximalConfig& cfg = {},
                                   const WarmStart* warm = nullptr) {
  detail::check_proximal_config(cfg);
  Eigen::VectorXd inv_diag(q.rows);
  {
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(q.rows, cfg.rho);
    for (int i = 0; i < q.rows; ++i)
      for (int k = q.row_ptr[i]; k < q.row_ptr[i + 1]; ++k)
        diag[i] += q.vals[k] * q.vals[k];
    inv_diag = diag.cwiseInverse();
  }
  const double rho = cfg.rho;
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(q.rows);
  auto apply = [&q, rho](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return q.mult(q.mult_transpose(x)) + rho * x;
  };
  return detail::admm_driver(
      q, y, cfg, warm,
      [&](const Eigen::VectorXd& rhs, int* iters, ProximalResult* res) {
        // Solve for the correction to the previous eta.  This anchors the
        // relative tolerance at the warm-start residual, which shrinks as the
        // outer iteration settles; anchored at |rhs| instead, the inner noise
        // floor would sit at tol * |rhs| and cap the attainable accuracy of
        // beta well above the outer stopping thresholds.
        const Eigen::VectorXd r0 = rhs - apply(eta);
        Eigen::VectorXd delta = Eigen::VectorXd::Zero(q.rows);
        const CgReport rep = pcg(apply, r0, delta, inv_diag, cfg.inner);
        eta += delta;
        *iters = rep.iterations;
        if (!rep.converged) {
          if (cfg.strict_inner)
            throw InnerSolveNotConverged(
                "inner solve stopped at " + std::to_string(rep.iterations) +
                " iterations with residual " + g17(rep.final_residual));
          res->inner_converged = false;
        }
        return eta;
      });
}

/// Graph entry points: design W^{-1} D^T, right-hand side e_s - e_t.
inline ProximalResult admm_solve(const Graph& g, int s, int t,
                                 const ProximalConfig& cfg = {},
                                 const WarmStart* warm = nullptr) {
  return admm_solve(weighted_incidence(g), indicator(g, s, t), cfg, warm);
}

inline ProximalResult inadmm_solve(const Graph& g, int s, int t,
                                   const ProximalConfig& cfg = {},
                                   const WarmStart* warm = nullptr) {
  return inadmm_solve(weighted_incidence(g), indicator(g, s, t), cfg, warm);
}

/// Several right-hand sides over one shared design.
struct MultiPairProblem {
  SparseMatrix q;
  Eigen::MatrixXd y;  // one indicator per column
  std::vector<std::pair<int, int>> pairs;
};

inline MultiPairProblem multi_pair_problem(
    const Graph& g, const std::vector<std::pair<int, int>>& pairs) {
  MultiPairProblem p;
  p.q = weighted_incidence(g);
  p.y.resize(g.n, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i)
    p.y.col(static_cast<Eigen::Index>(i)) =
        indicator(g, pairs[i].first, pairs[i].second);
  p.pairs = pairs;
  return p;
}

/// Solves every pair with a single factorization of QQ^T + rho I; each pair
/// otherwise runs exactly like an independent exact solve (per-pair lambda
/// resolved from its own right-hand side).
inline std::vector<ProximalResult> parallel_lasso_solve(
    const MultiPairProblem& prob, const ProximalConfig& cfg = {}) {
  detail::check_proximal_config(cfg);
  const CholeskyFactor factor(normal_matrix(prob.q, cfg.rho));
  std::vector<ProximalResult> out;
  out.reserve(prob.y.cols());
  for (Eigen::Index i = 0; i < prob.y.cols(); ++i)
    out.push_back(detail::admm_driver(
        prob.q, Eigen::VectorXd(prob.y.col(i)), cfg, nullptr,
        [&](const Eigen::VectorXd& rhs, int*, ProximalResult*) {
          return factor.solve(rhs);
        }));
  return out;
}

/// Per-iteration residual table: iter, primal_residual, dual_residual, cg_iters.
inline void write_residuals_csv(const ProximalResult& res, std::ostream& out) {
  out << "iter,primal_residual,dual_residual,cg_iters\n";
  for (std::size_t i = 0; i < res.history.size(); ++i)
    out << (i + 1) << ',' << g17(res.history[i].primal) << ','
        << g17(res.history[i].dual) << ',' << res.history[i].cg_iters << '\n';
}

}  // namespace lassopath
