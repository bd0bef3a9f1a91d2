#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

#include "lassopath/counters.hpp"
#include "lassopath/errors.hpp"

namespace lassopath {

/// Compressed sparse row matrix.
///
/// This is deliberately minimal: the solvers only need y = A x, y = A^T x,
/// column gathers and a conversion to Eigen for factorization.  Keeping our
/// own storage makes the operation counting exact and keeps the design
/// operator free of Eigen expression templates in the hot loops.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;   // size rows+1
  std::vector<int> col_idx;   // size nnz
  std::vector<double> vals;   // size nnz

  int nnz() const { return static_cast<int>(vals.size()); }

  using Triplet = std::tuple<int, int, double>;

  static SparseMatrix from_triplets(int rows, int cols,
                                    std::vector<Triplet> trips) {
    // Sort row-major, then merge duplicates by accumulation.
    std::sort(trips.begin(), trips.end(), [](const Triplet& a, const Triplet& b) {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
      return std::get<1>(a) < std::get<1>(b);
    });
    SparseMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.assign(static_cast<std::size_t>(rows) + 1, 0);
    for (std::size_t k = 0; k < trips.size();) {
      const int i = std::get<0>(trips[k]);
      const int j = std::get<1>(trips[k]);
      double v = 0.0;
      while (k < trips.size() && std::get<0>(trips[k]) == i &&
             std::get<1>(trips[k]) == j) {
        v += std::get<2>(trips[k]);
        ++k;
      }
      m.col_idx.push_back(j);
      m.vals.push_back(v);
      ++m.row_ptr[static_cast<std::size_t>(i) + 1];
    }
    std::partial_sum(m.row_ptr.begin(), m.row_ptr.end(), m.row_ptr.begin());
    return m;
  }

  /// y = A x
  Eigen::VectorXd mult(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);
    for (int i = 0; i < rows; ++i) {
      double acc = 0.0;
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        acc += vals[k] * x[col_idx[k]];
      y[i] = acc;
    }
    op_counters().edge_touches += nnz();
    op_counters().matvecs += 1;
    return y;
  }

  /// y = A^T x
  Eigen::VectorXd mult_transpose(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(cols);
    for (int i = 0; i < rows; ++i) {
      const double xi = x[i];
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        y[col_idx[k]] += vals[k] * xi;
    }
    op_counters().edge_touches += nnz();
    op_counters().matvecs += 1;
    return y;
  }

  SparseMatrix transposed() const {
    std::vector<Triplet> trips;
    trips.reserve(vals.size());
    for (int i = 0; i < rows; ++i)
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        trips.emplace_back(col_idx[k], i, vals[k]);
    return from_triplets(cols, rows, std::move(trips));
  }

  Eigen::SparseMatrix<double> to_eigen() const {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(vals.size());
    for (int i = 0; i < rows; ++i)
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        trips.emplace_back(i, col_idx[k], vals[k]);
    Eigen::SparseMatrix<double> m(rows, cols);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        m(i, col_idx[k]) = vals[k];
    return m;
  }
};

/// A Q^T + rho I for a row-stored Q (rows x cols), returned as an Eigen
/// sparse matrix ready for factorization.  A = Q Q^T is accumulated column
/// by column as a sum of outer products; the (u,v) and (v,u) cells see the
/// same contributions in the same order, so the result is exactly symmetric
/// in floating point.
inline Eigen::SparseMatrix<double> normal_matrix(const SparseMatrix& q,
                                                 double rho) {
  const SparseMatrix qt = q.transposed();  // columns of Q become rows
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(q.nnz()) * 2 +
                static_cast<std::size_t>(q.rows));
  for (int j = 0; j < qt.rows; ++j) {
    for (int a = qt.row_ptr[j]; a < qt.row_ptr[j + 1]; ++a) {
      const int u = qt.col_idx[a];
      const double qu = qt.vals[a];
      for (int b = qt.row_ptr[j]; b < qt.row_ptr[j + 1]; ++b)
        trips.emplace_back(u, qt.col_idx[b], qu * qt.vals[b]);
    }
  }
  for (int i = 0; i < q.rows; ++i) trips.emplace_back(i, i, rho);
  Eigen::SparseMatrix<double> m(q.rows, q.rows);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace lassopath
