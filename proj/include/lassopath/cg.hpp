#pragma once

#include <Eigen/Core>
#include <cmath>
#include <type_traits>

#include "lassopath/counters.hpp"

namespace lassopath {

struct CgConfig {
  double tol = 1e-8;       // relative to ||b||
  int max_iter = 2000;
};

struct CgReport {
  bool converged = false;
  int iterations = 0;
  double final_residual = 0.0;  // ||b - A x|| / ||b||
};

/// Preconditioned conjugate gradient for s.p.d. systems, matrix-free.
///
/// `apply` maps x to A x; `inv_diag` is the Jacobi preconditioner (elementwise
/// inverse of diag A).  x holds the initial guess on entry and the iterate on
/// exit; warm starts across outer iterations are the point of taking it by
/// reference.  Non-convergence is reported, not thrown: the caller decides
/// whether a truncated solve is acceptable.
template <class Apply>
CgReport pcg(Apply&& apply, const Eigen::VectorXd& b, Eigen::VectorXd& x,
             const Eigen::VectorXd& inv_diag, const CgConfig& cfg = {}) {
  // A lambda with a deduced return type would hand back an expression
  // template referencing dead temporaries; force callers to materialize.
  static_assert(
      std::is_same_v<std::invoke_result_t<Apply&, const Eigen::VectorXd&>,
                     Eigen::VectorXd>,
      "apply must return Eigen::VectorXd by value; give the lambda an "
      "explicit -> Eigen::VectorXd return type");
  CgReport rep;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero();
    rep.converged = true;
    return rep;
  }
  Eigen::VectorXd r = b - apply(x);
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    rep.final_residual = r.norm() / bnorm;
    if (rep.final_residual <= cfg.tol) {
      rep.converged = true;
      rep.iterations = it;
      return rep;
    }
    const Eigen::VectorXd ap = apply(p);
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) break;  // loss of positive definiteness, bail out
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
    op_counters().cg_iterations += 1;
  }
  rep.iterations = it;
  rep.final_residual = r.norm() / bnorm;
  rep.converged = rep.final_residual <= cfg.tol;
  return rep;
}

}  // namespace lassopath
