#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lassopath/dense.hpp"
#include "lassopath/errors.hpp"
#include "lassopath/format.hpp"
#include "lassopath/graph.hpp"
#include "lassopath/sparse.hpp"

namespace lassopath {

/// Design matrix interface for the homotopy solver: a column dictionary that
/// can correlate a residual against every column, gather a dense active
/// submatrix, and apply itself to a coefficient vector.

class DenseDesign {
 public:
  explicit DenseDesign(Eigen::MatrixXd q) : q_(std::move(q)) {}
  int rows() const { return static_cast<int>(q_.rows()); }
  int cols() const { return static_cast<int>(q_.cols()); }
  Eigen::VectorXd correlations(const Eigen::VectorXd& v) const {
    return q_.transpose() * v;
  }
  Eigen::VectorXd apply(const Eigen::VectorXd& beta) const { return q_ * beta; }
  Eigen::MatrixXd gather(const std::vector<int>& idx) const {
    Eigen::MatrixXd m(q_.rows(), idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) m.col(c) = q_.col(idx[c]);
    return m;
  }
  const Eigen::MatrixXd& matrix() const { return q_; }

 private:
  Eigen::MatrixXd q_;
};

/// Weight-normalized incidence of a graph as a design: each column has two
/// nonzeros, so correlations cost O(m) and gathers stay cheap.
class GraphDesign {
 public:
  explicit GraphDesign(const Graph& g) : g_(&g), q_(weighted_incidence(g)) {}
  int rows() const { return q_.rows; }
  int cols() const { return q_.cols; }
  Eigen::VectorXd correlations(const Eigen::VectorXd& v) const {
    return q_.mult_transpose(v);
  }
  Eigen::VectorXd apply(const Eigen::VectorXd& beta) const {
    return q_.mult(beta);
  }
  Eigen::MatrixXd gather(const std::vector<int>& idx) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g_->n, idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) {
      const Edge& e = g_->edges[idx[c]];
      m(e.tail, c) = 1.0 / e.weight;
      m(e.head, c) = -1.0 / e.weight;
    }
    return m;
  }
  const Graph& graph() const { return *g_; }
  const SparseMatrix& matrix() const { return q_; }

 private:
  const Graph* g_;
  SparseMatrix q_;
};

struct LarsConfig {
  double tie_tol = 1e-9;     // relative grouping of simultaneous breakpoints
  bool strict_ties = false;  // throw instead of admitting a tie group
  double rcond = 1e-12;      // singular value cutoff in the active solves
  double term_tol = 1e-12;   // candidates below term_tol * lambda_max end the path
  int max_breakpoints = 0;   // 0: 10 m + 100 safety cap
};

/// Active set with its equicorrelation signs; entries correspond pairwise.
struct ActiveState {
  std::vector<int> active;
  std::vector<int> signs;
};

struct PathEvent {
  int k = 0;          // breakpoint index, 1-based; ties share a k
  double lambda = 0;
  bool join = true;   // false: the edge left the active set
  int edge = -1;
};

/// One linear piece of the regularization path.  On [lambda_lo, lambda_hi]
/// the active coefficients follow beta = a - lambda * b; everything else is
/// zero.  rank and sigma_min describe the active submatrix on this piece.
struct PathSegment {
  double lambda_hi = 0;
  double lambda_lo = 0;
  std::vector<int> active;
  std::vector<int> signs;
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  int rank = 0;
  double sigma_min = 0;

  ActiveState state() const { return {active, signs}; }
};

struct LassoPath {
  int m = 0;
  double lambda_max = 0;  // first breakpoint; the path is zero above it
  std::vector<PathEvent> events;
  std::vector<PathSegment> segments;
  Eigen::VectorXd terminal_beta;  // limit at lambda -> 0+
  Eigen::VectorXd terminal_x;     // terminal_beta / edge weights; graph solves only
  double distance = 0.0;          // l1 norm of terminal_beta

  int n_breakpoints() const { return events.empty() ? 0 : events.back().k; }

  Eigen::VectorXd beta_at(double lambda) const {
    if (!(lambda >= 0.0)) throw Error("beta_at needs lambda >= 0");
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
    for (const PathSegment& seg : segments) {
      if (lambda > seg.lambda_hi || lambda < seg.lambda_lo) continue;
      for (std::size_t i = 0; i < seg.active.size(); ++i)
        beta[seg.active[i]] = seg.a[i] - lambda * seg.b[i];
      return beta;
    }
    return beta;  // above lambda_max: identically zero
  }
};

namespace detail {

/// Largest admissible root of |c_j(lambda)| = lambda for one inactive index,
/// where c_j(lambda) = -num + lambda * den: the two sign branches give
/// num / (den -+ 1), and a branch counts only when it lands in (0, hi].
/// Returns 0 when neither branch does.
inline double max_branch(double num, double den, double hi) {
  double best = 0.0;
  for (const double pm : {-1.0, 1.0}) {
    const double denom = den + pm;
    if (denom == 0.0) continue;
    const double t = num / denom;
    if (t > 0.0 && t <= hi) best = std::max(best, t);
  }
  return best;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// Exact piecewise-linear homotopy in the penalty.  Starting from the empty
/// model at lambda = +inf, each step finds the next breakpoint as the largest
/// candidate among joins (|c_j(lambda)| reaching lambda from below) and
/// crossings (an active coefficient a_i - lambda b_i hitting zero strictly
/// inside the piece), then updates the active set and re-solves the two
/// pseudoinverse systems.  Ties within tie_tol are admitted together (or
/// rejected under strict_ties).  After every event batch `stop` is consulted
/// with the joined and departed ids; returning true freezes the current
/// coefficients as the terminal state and closes the path down to lambda = 0.
template <class Design, class StopFn>
LassoPath lars_homotopy(const Design& d, const Eigen::VectorXd& y,
                        const LarsConfig& cfg, StopFn&& stop) {
  constexpr double seg_guard = 1e-12;  // excludes the breakpoint just handled
  const int m = d.cols();
  LassoPath path;
  path.m = m;

  std::vector<int> active;
  std::vector<int> signs;
  std::vector<char> is_active(m, 0);
  Eigen::VectorXd a, b;
  Eigen::MatrixXd sub;    // gathered active columns
  int rank = 0;
  double sigma_min = 0;
  double lambda_k = std::numeric_limits<double>::infinity();
  const int cap = cfg.max_breakpoints > 0 ? cfg.max_breakpoints : 10 * m + 100;

  struct Cand {
    double t;
    int edge;   // edge id for joins, active position for crossings
    bool join;
  };

  auto finish = [&](double lambda_hi) {
    PathSegment seg;
    seg.lambda_hi = lambda_hi;
    seg.lambda_lo = 0.0;
    seg.active = active;
    seg.signs = signs;
    seg.a = a;
    seg.b = b;
    seg.rank = rank;
    seg.sigma_min = sigma_min;
    path.segments.push_back(std::move(seg));
    path.terminal_beta = Eigen::VectorXd::Zero(m);
    for (std::size_t i = 0; i < active.size(); ++i)
      path.terminal_beta[active[i]] = a[i];
    path.distance = path.terminal_beta.cwiseAbs().sum();
    return path;
  };

  for (int k = 1;; ++k) {
    if (k > cap)
      throw Error("homotopy exceeded " + std::to_string(cap) +
                  " breakpoints without terminating");
    const Eigen::VectorXd u = active.empty()
                                  ? Eigen::VectorXd::Zero(d.rows())
                                  : Eigen::VectorXd(sub * a);
    const Eigen::VectorXd w = active.empty()
                                  ? Eigen::VectorXd::Zero(d.rows())
                                  : Eigen::VectorXd(sub * b);
    const Eigen::VectorXd num = d.correlations(u - y);  // c_j = -num + lambda*den
    const Eigen::VectorXd den = d.correlations(w);

    const double hi = std::isinf(lambda_k)
                          ? std::numeric_limits<double>::infinity()
                          : lambda_k * (1.0 - seg_guard);
    const double floor = path.lambda_max > 0 ? cfg.term_tol * path.lambda_max : 0.0;

    std::vector<Cand> cands;
    double best = 0.0;
    for (int j = 0; j < m; ++j) {
      if (is_active[j]) continue;
      const double tj = max_branch(num[j], den[j], hi);
      if (tj > floor) {
        cands.push_back({tj, j, true});
        best = std::max(best, tj);
      }
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (b[i] == 0.0) continue;
      const double t = a[i] / b[i];
      if (t > floor && t < hi) {
        cands.push_back({t, static_cast<int>(i), false});
        best = std::max(best, t);
      }
    }

    // No further event: this piece runs down to lambda = 0.
    if (cands.empty() || best <= floor) return finish(lambda_k);

    std::vector<Cand> group;
    for (const Cand& c : cands)
      if (c.t >= best * (1.0 - cfg.tie_tol)) group.push_back(c);
    if (group.size() > 1 && cfg.strict_ties) {
      std::string edges;
      for (const Cand& c : group)
        edges += (edges.empty() ? "" : ",") +
                 std::to_string(c.join ? c.edge : active[c.edge]);
      throw SimultaneousTieUnresolved("breakpoint " + std::to_string(k) +
                                      " is shared by edges {" + edges + "}");
    }

    PathSegment seg;
    seg.lambda_hi = lambda_k;  // +inf on the first piece
    seg.lambda_lo = best;
    seg.active = active;
    seg.signs = signs;
    seg.a = a;
    seg.b = b;
    seg.rank = rank;
    seg.sigma_min = sigma_min;
    path.segments.push_back(std::move(seg));
    if (k == 1) path.lambda_max = best;

    // Crossings first (positions reference the pre-update active list).
    std::vector<int> leaving;
    std::vector<int> joining;
    for (const Cand& c : group) {
      if (c.join)
        joining.push_back(c.edge);
      else
        leaving.push_back(active[c.edge]);
    }
    std::sort(joining.begin(), joining.end());
    std::sort(leaving.begin(), leaving.end());
    for (const int j : leaving) {
      path.events.push_back({k, best, false, j});
      const auto pos = std::find(active.begin(), active.end(), j) - active.begin();
      active.erase(active.begin() + pos);
      signs.erase(signs.begin() + pos);
      is_active[j] = 0;
    }
    for (const int j : joining) {
      path.events.push_back({k, best, true, j});
      const double cj = -num[j] + best * den[j];
      active.push_back(j);
      signs.push_back(cj > 0.0 ? 1 : -1);
      is_active[j] = 1;
    }

    sub = d.gather(active);
    Eigen::VectorXd svec(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) svec[i] = signs[i];
    const LeastSquaresPair p = least_squares_pair(sub, y, svec, cfg.rcond);
    a = p.a;
    b = p.b;
    rank = p.rank;
    sigma_min = p.sigma_min;
    lambda_k = best;

    if (stop(joining, leaving)) return finish(best);
  }
}

}  // namespace detail

/// Homotopy on an arbitrary design.  Runs until no candidate event remains
/// above the termination floor.
template <class Design>
LassoPath lars_solve(const Design& d, const Eigen::VectorXd& y,
                     const LarsConfig& cfg = {}) {
  return detail::lars_homotopy(
      d, y, cfg,
      [](const std::vector<int>&, const std::vector<int>&) { return false; });
}

/// Homotopy on a graph with right-hand side e_s - e_t.  The run stops
/// structurally: the moment the active edges connect s to t the current
/// coefficients are frozen as the terminal state, instead of chasing
/// numerically tiny events near lambda = 0.  Terminal x and the l1 distance
/// are filled in.
inline LassoPath lars_solve(const Graph& g, int s, int t,
                            const LarsConfig& cfg = {}) {
  const GraphDesign d(g);
  const Eigen::VectorXd y = indicator(g, s, t);

  detail::Dsu dsu(g.n);
  std::vector<int> active_now;
  auto stop = [&](const std::vector<int>& joined, const std::vector<int>& left) {
    for (const int j : left)
      active_now.erase(std::find(active_now.begin(), active_now.end(), j));
    if (!left.empty()) {
      dsu = detail::Dsu(g.n);
      for (const int j : active_now)
        dsu.unite(g.edges[j].tail, g.edges[j].head);
    }
    for (const int j : joined) {
      active_now.push_back(j);
      dsu.unite(g.edges[j].tail, g.edges[j].head);
    }
    return dsu.find(s) == dsu.find(t);
  };

  LassoPath path = detail::lars_homotopy(d, y, cfg, stop);
  path.terminal_x = path.terminal_beta;
  for (int j = 0; j < g.m(); ++j) path.terminal_x[j] /= g.edges[j].weight;
  return path;
}

/// Joining candidates of every inactive index for the piece ending at
/// lambda_k, evaluated from the segment coefficients (a, b) over st.active:
/// the admissible-branch root of |c_j(lambda)| = lambda in (0, lambda_k],
/// or 0 when neither branch lands there.  Active positions hold 0.
template <class Design>
Eigen::VectorXd joining_times_generic(const Design& d, const Eigen::VectorXd& y,
                                      const ActiveState& st,
                                      const Eigen::VectorXd& a,
                                      const Eigen::VectorXd& b,
                                      double lambda_k) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(d.rows());
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d.rows());
  if (!st.active.empty()) {
    const Eigen::MatrixXd sub = d.gather(st.active);
    u = sub * a;
    w = sub * b;
  }
  const Eigen::VectorXd num = d.correlations(u - y);
  const Eigen::VectorXd den = d.correlations(w);
  std::vector<char> is_active(d.cols(), 0);
  for (const int j : st.active) is_active[j] = 1;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d.cols());
  for (int j = 0; j < d.cols(); ++j) {
    if (is_active[j]) continue;
    out[j] = detail::max_branch(num[j], den[j], lambda_k);
  }
  return out;
}

/// Zero-crossing candidates of the active coefficients, aligned with
/// st.active: a_i / b_i when it falls strictly inside (0, lambda_k), else 0.
/// A coefficient that joined exactly at lambda_k is zero there by
/// construction, so ratios within roundoff of the upper end are boundary
/// touches, not crossings, and are excluded.
inline Eigen::VectorXd crossing_times_generic(const ActiveState& st,
                                              const Eigen::VectorXd& a,
                                              const Eigen::VectorXd& b,
                                              double lambda_k) {
  if (static_cast<int>(st.active.size()) != a.size())
    throw Error("active state and coefficients disagree in size");
  const double hi = std::isinf(lambda_k)
                        ? std::numeric_limits<double>::infinity()
                        : lambda_k * (1.0 - 1e-12);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.size());
  for (int i = 0; i < a.size(); ++i) {
    if (b[i] == 0.0) continue;
    const double t = a[i] / b[i];
    if (t > 0.0 && t < hi) out[i] = t;
  }
  return out;
}

/// Optimality diagnostics for a (beta, lambda) pair.  Exact zeros mark
/// inactivity, which both solvers guarantee structurally: on the support the
/// correlation must sit at lambda * sign(beta_j), off it within [-lambda,
/// lambda].  Gaps beyond the slack land in the violations list; max_gap
/// covers all indices regardless.
struct KktViolation {
  int index = -1;
  double gap = 0.0;
  bool on_support = false;
};

struct KktReport {
  std::vector<KktViolation> violations;
  double max_gap = 0.0;
  bool ok() const { return violations.empty(); }
};

template <class Design>
KktReport kkt_residual(const Design& d, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& beta, double lambda,
                       double slack = 1e-8) {
  const Eigen::VectorXd c = d.correlations(y - d.apply(beta));
  KktReport r;
  for (int j = 0; j < beta.size(); ++j) {
    const bool on = beta[j] != 0.0;
    const double gap = on ? std::abs(c[j] - lambda * (beta[j] > 0 ? 1.0 : -1.0))
                          : std::max(0.0, std::abs(c[j]) - lambda);
    r.max_gap = std::max(r.max_gap, gap);
    if (gap > slack) r.violations.push_back({j, gap, on});
  }
  return r;
}

/// Reads the s-t path off a coefficient vector.  Path edges carry
/// |beta_j| = w_j, so the rescaled magnitudes sit at 1 and off-path noise
/// near 0; everything at or past the threshold counts as support and the
/// walk validator does the rest.
inline Path extract_path(const Graph& g, int s, int t,
                         const Eigen::VectorXd& beta, double threshold = 0.5) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw Error("extract_path threshold must lie in (0, 1)");
  std::vector<std::pair<int, int>> support;
  for (int j = 0; j < g.m(); ++j) {
    const double x = beta[j] / g.edges[j].weight;
    if (std::abs(x) >= threshold) support.push_back({j, x > 0 ? 1 : -1});
  }
  return path_from_support(g, s, t, support);
}

/// Breakpoint table: k, lambda, event_type, edge_id.  Ties repeat k.
inline void write_breakpoints_csv(const LassoPath& path, std::ostream& out) {
  out << "k,lambda,event_type,edge_id\n";
  for (const PathEvent& e : path.events)
    out << e.k << ',' << g17(e.lambda) << ',' << (e.join ? "join" : "cross")
        << ',' << e.edge << '\n';
}

/// Long-format coefficient profile sampled at both ends of every piece;
/// linear interpolation between consecutive rows of an edge reproduces the
/// exact path.  Zero coefficients are omitted.
inline void write_profile_csv(const LassoPath& path, std::ostream& out) {
  out << "lambda,edge_id,beta\n";
  auto emit = [&](const PathSegment& seg, double lambda) {
    for (std::size_t i = 0; i < seg.active.size(); ++i)
      out << g17(lambda) << ',' << seg.active[i] << ','
          << g17(seg.a[i] - lambda * seg.b[i]) << '\n';
  };
  for (const PathSegment& seg : path.segments) {
    if (!std::isinf(seg.lambda_hi)) emit(seg, seg.lambda_hi);
    emit(seg, seg.lambda_lo);
  }
}

}  // namespace lassopath
