#pragma once

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "lassopath/counters.hpp"
#include "lassopath/errors.hpp"

namespace lassopath {

/// Sparse LL^T factorization of a symmetric positive definite matrix, with
/// fill-reducing ordering.  Factor once, solve many times; the solvers reuse
/// one factor across every lambda and every terminal pair at fixed rho.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const Eigen::SparseMatrix<double>& a) : dim_(a.rows()) {
    llt_.compute(a);
    if (llt_.info() != Eigen::Success)
      throw NotPositiveDefinite("Cholesky factorization failed");
    op_counters().cholesky_factorizations += 1;
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
    op_counters().triangular_solves += 2;
    return llt_.solve(b);
  }

  int dim() const { return dim_; }

  /// Lower factor of the permuted matrix; diagnostics only.
  Eigen::SparseMatrix<double> matrix_l() const {
    return Eigen::SparseMatrix<double>(llt_.matrixL());
  }

 private:
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt_;
  int dim_;
};

}  // namespace lassopath
