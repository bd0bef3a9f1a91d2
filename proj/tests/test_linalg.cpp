#include <doctest.h>

#include <Eigen/Core>
#include <Eigen/Cholesky>

#include "lassopath/cg.hpp"
#include "lassopath/cholesky.hpp"
#include "lassopath/counters.hpp"
#include "lassopath/dense.hpp"
#include "lassopath/graph.hpp"
#include "lassopath/instances.hpp"
#include "lassopath/sparse.hpp"
#include "test_support.hpp"

using namespace lassopath;

namespace {

Eigen::MatrixXd random_dense(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = 2.0 * uniform01(rng) - 1.0;
  return m;
}

Eigen::VectorXd random_vec(Rng& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = 2.0 * uniform01(rng) - 1.0;
  return v;
}

}  // namespace

TEST_CASE("sparse triplets accumulate duplicates and round-trip densely") {
  SparseMatrix m = SparseMatrix::from_triplets(
      3, 4, {{0, 1, 2.0}, {0, 1, 3.0}, {2, 0, -1.0}, {1, 3, 4.0}});
  CHECK(m.nnz() == 3);
  const Eigen::MatrixXd d = m.to_dense();
  CHECK(d(0, 1) == 5.0);
  CHECK(d(2, 0) == -1.0);
  CHECK(d(1, 3) == 4.0);
  CHECK(d.cwiseAbs().sum() == 10.0);
}

TEST_CASE("sparse matvec agrees with the dense product") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int rows = 2 + static_cast<int>(uniform_index(rng, 12));
    const int cols = 2 + static_cast<int>(uniform_index(rng, 12));
    std::vector<SparseMatrix::Triplet> trips;
    const int k = static_cast<int>(uniform_index(rng, rows * cols));
    for (int i = 0; i < k; ++i)
      trips.emplace_back(static_cast<int>(uniform_index(rng, rows)),
                         static_cast<int>(uniform_index(rng, cols)),
                         2.0 * uniform01(rng) - 1.0);
    const SparseMatrix m = SparseMatrix::from_triplets(rows, cols, trips);
    const Eigen::MatrixXd d = m.to_dense();
    const Eigen::VectorXd x = random_vec(rng, cols);
    const Eigen::VectorXd y = random_vec(rng, rows);
    CHECK((m.mult(x) - d * x).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((m.mult_transpose(y) - d.transpose() * y).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((m.transposed().to_dense() - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("normal_matrix builds Q Q^T + rho I exactly symmetric") {
  Rng rng(37);
  const Graph g = random_connected(rng, 25, 15, 0.5, 2.0);
  const SparseMatrix q = weighted_incidence(g);
  const double rho = 0.75;
  const Eigen::MatrixXd a = Eigen::MatrixXd(normal_matrix(q, rho));
  const Eigen::MatrixXd qd = q.to_dense();
  const Eigen::MatrixXd ref =
      qd * qd.transpose() + rho * Eigen::MatrixXd::Identity(g.n, g.n);
  CHECK((a - ref).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0);  // exact, not approx
}

TEST_CASE("sparse Cholesky solves the regularized normal equations") {
  Rng rng(41);
  const Graph g = random_connected(rng, 40, 35, 0.5, 2.0);
  const SparseMatrix q = weighted_incidence(g);
  const auto a = normal_matrix(q, 1.0);
  const CholeskyFactor chol(a);
  CHECK(chol.dim() == g.n);
  const Eigen::MatrixXd ad = Eigen::MatrixXd(a);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd b = random_vec(rng, g.n);
    const Eigen::VectorXd x = chol.solve(b);
    CHECK((ad * x - b).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::VectorXd ref = ad.ldlt().solve(b);
    CHECK((x - ref).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("Cholesky rejects indefinite input") {
  Eigen::SparseMatrix<double> bad(2, 2);
  bad.insert(0, 0) = 1.0;
  bad.insert(1, 1) = -1.0;
  bad.makeCompressed();
  CHECK_THROWS_AS(CholeskyFactor{bad}, NotPositiveDefinite);
}

TEST_CASE("preconditioned CG matches the direct solve") {
  Rng rng(43);
  const Graph g = random_connected(rng, 60, 50, 0.5, 2.0);
  const SparseMatrix q = weighted_incidence(g);
  const double rho = 1.0;
  const CholeskyFactor chol(normal_matrix(q, rho));
  auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return q.mult(q.mult_transpose(x)) + rho * x;
  };
  Eigen::VectorXd inv_diag(g.n);
  {
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(g.n, rho);
    for (int v = 0; v < g.n; ++v)
      for (const Arc& a : g.adj[v]) diag[v] += 1.0 / (a.weight * a.weight);
    inv_diag = diag.cwiseInverse();
  }
  const Eigen::VectorXd b = random_vec(rng, g.n);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(g.n);
  const CgReport rep = pcg(apply, b, x, inv_diag, {1e-10, 2000});
  CHECK(rep.converged);
  CHECK(rep.iterations > 0);
  CHECK((x - chol.solve(b)).cwiseAbs().maxCoeff() < 1e-8);

  SUBCASE("warm start from the solution converges immediately") {
    Eigen::VectorXd warm = x;
    const CgReport again = pcg(apply, b, warm, inv_diag, {1e-10, 2000});
    CHECK(again.converged);
    CHECK(again.iterations == 0);
  }
  SUBCASE("zero right-hand side short-circuits") {
    Eigen::VectorXd z = random_vec(rng, g.n);
    const CgReport rep0 = pcg(apply, Eigen::VectorXd::Zero(g.n), z, inv_diag);
    CHECK(rep0.converged);
    CHECK(z.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("iteration cap reports non-convergence with state intact") {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(g.n);
    const CgReport capped = pcg(apply, b, y, inv_diag, {1e-14, 1});
    CHECK(!capped.converged);
    CHECK(capped.iterations == 1);
    CHECK(capped.final_residual > 1e-14);
  }
}

TEST_CASE("min-norm least squares matches the pseudoinverse route") {
  Rng rng(47);
  SUBCASE("overdetermined full rank") {
    const Eigen::MatrixXd a = random_dense(rng, 12, 5);
    const Eigen::VectorXd b = random_vec(rng, 12);
    const Eigen::VectorXd x = min_norm_least_squares(a, b);
    const Eigen::VectorXd ref = testsupport::pinv_svd(a) * b;
    CHECK((x - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("rank deficient: duplicated columns") {
    Eigen::MatrixXd a = random_dense(rng, 10, 6);
    a.col(5) = a.col(2);  // exact dependency
    const Eigen::VectorXd b = random_vec(rng, 10);
    const Eigen::VectorXd x = min_norm_least_squares(a, b);
    const Eigen::VectorXd ref = testsupport::pinv_svd(a) * b;
    CHECK((x - ref).cwiseAbs().maxCoeff() < 1e-11);
    // Any least squares solution shifted along the null space is longer.
    Eigen::VectorXd null_dir = Eigen::VectorXd::Zero(6);
    null_dir[5] = 1.0;
    null_dir[2] = -1.0;
    const Eigen::VectorXd other = x + 0.3 * null_dir;
    CHECK((a * other - a * x).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(other.norm() > x.norm());
  }
}

TEST_CASE("least_squares_pair returns both pseudoinverse solves from one SVD") {
  Rng rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    const int rows = 5 + static_cast<int>(uniform_index(rng, 8));
    // Keep cols < rows so the expected rank is set by the columns alone.
    const int cols = 2 + static_cast<int>(uniform_index(rng, rows - 3));
    Eigen::MatrixXd m = random_dense(rng, rows, cols);
    const bool deficient = trial % 3 == 0 && cols >= 2;
    if (deficient) m.col(cols - 1) = 2.0 * m.col(0);
    const Eigen::VectorXd y = random_vec(rng, rows);
    Eigen::VectorXd s(cols);
    for (int i = 0; i < cols; ++i) s[i] = uniform01(rng) < 0.5 ? -1.0 : 1.0;
    const LeastSquaresPair p = least_squares_pair(m, y, s);
    const Eigen::MatrixXd mp = testsupport::pinv_svd(m);
    CHECK((p.a - mp * y).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXd gram_pinv = testsupport::pinv_svd(m.transpose() * m);
    CHECK((p.b - gram_pinv * s).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(p.rank == (deficient ? cols - 1 : cols));
    CHECK(p.sigma_min > 0.0);
  }
}

TEST_CASE("pseudoinverse satisfies the Penrose conditions") {
  Rng rng(59);
  Eigen::MatrixXd a = random_dense(rng, 7, 10);
  a.row(6) = a.row(1);  // make it interesting
  const Eigen::MatrixXd p = pseudoinverse(a);
  CHECK((a * p * a - a).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((p * a * p - p).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(((a * p) - (a * p).transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(((p * a) - (p * a).transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kernel identity: solving through the n x n system equals the m x m one") {
  // (Q^T Q + rho I)^-1 h  ==  (h - Q^T (Q Q^T + rho I)^-1 Q h) / rho.
  // This is what lets the splitting solver factor an n x n matrix even
  // though the unknown lives in edge space.
  Rng rng(61);
  for (const double rho : {0.5, 1.0, 2.0}) {
    for (int trial = 0; trial < 4; ++trial) {
      const int n = 5 + static_cast<int>(uniform_index(rng, 8));
      const int m = n + 2 + static_cast<int>(uniform_index(rng, 18));
      const Eigen::MatrixXd q = random_dense(rng, n, m);
      const Eigen::VectorXd h = random_vec(rng, m);
      const Eigen::MatrixXd small =
          q * q.transpose() + rho * Eigen::MatrixXd::Identity(n, n);
      const Eigen::MatrixXd big =
          q.transpose() * q + rho * Eigen::MatrixXd::Identity(m, m);
      const Eigen::VectorXd via_small =
          (h - q.transpose() * small.llt().solve(q * h)) / rho;
      const Eigen::VectorXd via_big = big.llt().solve(h);
      CHECK((via_small - via_big).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("operation counters observe the work they claim to") {
  Rng rng(67);
  const Graph g = random_connected(rng, 15, 10, 0.5, 2.0);
  const SparseMatrix q = weighted_incidence(g);
  op_counters().reset();
  const Eigen::VectorXd x = random_vec(rng, g.m());
  q.mult(x);
  OpCounts c = snapshot(op_counters());
  CHECK(c.edge_touches == q.nnz());
  CHECK(c.matvecs == 1);
  q.mult_transpose(random_vec(rng, g.n));
  c = snapshot(op_counters());
  CHECK(c.edge_touches == 2 * q.nnz());
  CHECK(c.matvecs == 2);
  const CholeskyFactor chol(normal_matrix(q, 1.0));
  chol.solve(random_vec(rng, g.n));
  c = snapshot(op_counters());
  CHECK(c.cholesky_factorizations == 1);
  CHECK(c.triangular_solves == 2);
}
