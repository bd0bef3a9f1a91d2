#pragma once

#include <Eigen/Core>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace lassopath {

/// Minimum-norm least squares solution of A x ~ b via a complete orthogonal
/// decomposition.  Works at any rank; for rank-deficient A it returns the
/// solution of smallest Euclidean norm, which is the one the path solver's
/// coefficient formulas are stated for.
inline Eigen::VectorXd min_norm_least_squares(const Eigen::MatrixXd& a,
                                              const Eigen::VectorXd& b) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  return cod.solve(b);
}

/// The pair of solves the path solver needs per segment, from one SVD of the
/// active submatrix M = U S V^T:
///   a = pinv(M) y        = V S^-1 U^T y
///   b = pinv(M^T M) s    = V S^-2 V^T s
/// Singular values below rcond * sigma_max are treated as zero; `rank` and
/// `sigma_min` (smallest kept value) are reported so callers can watch
/// conditioning along the path.
struct LeastSquaresPair {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  int rank = 0;
  double sigma_min = 0.0;
};

inline LeastSquaresPair least_squares_pair(const Eigen::MatrixXd& m,
                                           const Eigen::VectorXd& y,
                                           const Eigen::VectorXd& s,
                                           double rcond = 1e-12) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sig = svd.singularValues();
  const double cutoff = sig.size() > 0 ? rcond * sig[0] : 0.0;
  LeastSquaresPair out;
  const Eigen::VectorXd uty = svd.matrixU().transpose() * y;
  const Eigen::VectorXd vts = svd.matrixV().transpose() * s;
  Eigen::VectorXd wa = Eigen::VectorXd::Zero(sig.size());
  Eigen::VectorXd wb = Eigen::VectorXd::Zero(sig.size());
  for (int i = 0; i < sig.size(); ++i) {
    if (sig[i] > cutoff) {
      wa[i] = uty[i] / sig[i];
      wb[i] = vts[i] / (sig[i] * sig[i]);
      ++out.rank;
      out.sigma_min = sig[i];
    }
  }
  out.a = svd.matrixV() * wa;
  out.b = svd.matrixV() * wb;
  return out;
}

/// Dense Moore-Penrose pseudoinverse, SVD route.  Small systems only; the
/// tree closed form replaces this wherever the active set is known to span a
/// forest.
inline Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& a,
                                     double rcond = 1e-12) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sig = svd.singularValues();
  const double cutoff = sig.size() > 0 ? rcond * sig[0] : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sig.size());
  for (int i = 0; i < sig.size(); ++i)
    if (sig[i] > cutoff) inv[i] = 1.0 / sig[i];
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace lassopath
