#include <doctest.h>

#include <Eigen/Core>

#include "lassopath/graph.hpp"
#include "lassopath/instances.hpp"
#include "test_support.hpp"

using namespace lassopath;

TEST_CASE("build_graph indexes vertices by first appearance") {
  const Graph g = build_graph({{7, 3, 1.0}, {3, 5, 2.0}, {5, 7, 0.25}});
  CHECK(g.n == 3);
  CHECK(g.m() == 3);
  CHECK(g.labels == std::vector<std::int64_t>{7, 3, 5});
  CHECK(g.index_of(7) == 0);
  CHECK(g.index_of(3) == 1);
  CHECK(g.index_of(5) == 2);
  CHECK(g.edges[1].tail == 1);
  CHECK(g.edges[1].head == 2);
  CHECK(g.adj[0].size() == 2);
  CHECK_THROWS_AS(g.index_of(99), ParseError);
}

TEST_CASE("build_graph rejects malformed input") {
  CHECK_THROWS_AS(build_graph({{1, 1, 1.0}}), SelfLoop);
  CHECK_THROWS_AS(build_graph({{1, 2, 1.0}, {2, 1, 3.0}}), DuplicateEdge);
  CHECK_THROWS_AS(build_graph({{1, 2, 0.0}}), NonPositiveWeight);
  CHECK_THROWS_AS(build_graph({{1, 2, -2.0}}), NonPositiveWeight);
  CHECK_THROWS_AS(build_graph({{1, 2, 1.0}, {3, 4, 1.0}}), DisconnectedGraph);
}

TEST_CASE("incidence columns carry +-1 at the edge endpoints") {
  const Instance inst = nicholson();
  const Eigen::MatrixXd d = incidence(inst.graph).to_dense();
  REQUIRE(d.rows() == 9);
  REQUIRE(d.cols() == 13);
  for (int j = 0; j < inst.graph.m(); ++j) {
    const Edge& e = inst.graph.edges[j];
    CHECK(d(e.tail, j) == 1.0);
    CHECK(d(e.head, j) == -1.0);
    CHECK(d.col(j).sum() == 0.0);
    CHECK(d.col(j).cwiseAbs().sum() == 2.0);
  }
}

TEST_CASE("weighted incidence is the incidence with columns scaled by 1/w") {
  const Instance inst = nicholson();
  const Eigen::MatrixXd d = incidence(inst.graph).to_dense();
  const Eigen::MatrixXd q = weighted_incidence(inst.graph).to_dense();
  for (int j = 0; j < inst.graph.m(); ++j)
    CHECK((q.col(j) - d.col(j) / inst.graph.edges[j].weight).norm() == 0.0);
}

TEST_CASE("indicator puts +1 at the source and -1 at the target") {
  const Instance inst = nicholson();
  const Eigen::VectorXd y = indicator(inst.graph, inst.s, inst.t);
  CHECK(y[inst.s] == 1.0);
  CHECK(y[inst.t] == -1.0);
  CHECK(y.cwiseAbs().sum() == 2.0);
  CHECK_THROWS_AS(indicator(inst.graph, 2, 2), SameEndpoints);
}

TEST_CASE("path_from_support walks a signed support") {
  const Instance inst = nicholson();
  const Graph& g = inst.graph;
  // 1-2-3-6-9: edges 0, 4, 5, 10, all traversed tail to head.
  const std::vector<std::pair<int, int>> support{{0, 1}, {4, 1}, {5, 1}, {10, 1}};
  const Path p = path_from_support(g, inst.s, inst.t, support);
  CHECK(p.edges == std::vector<int>{0, 4, 5, 10});
  CHECK(p.vertices == std::vector<int>{g.index_of(1), g.index_of(2),
                                       g.index_of(3), g.index_of(6),
                                       g.index_of(9)});
  CHECK(p.length == doctest::Approx(8.0).epsilon(1e-15));

  SUBCASE("reversed orientation flips the required sign") {
    // Same walk from 9 to 1: every edge now runs head to tail.
    const std::vector<std::pair<int, int>> rev{{0, -1}, {4, -1}, {5, -1}, {10, -1}};
    const Path q = path_from_support(g, inst.t, inst.s, rev);
    CHECK(q.length == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(q.vertices.front() == inst.t);
    CHECK(q.vertices.back() == inst.s);
  }
}

TEST_CASE("path_from_support rejects non-paths") {
  const Instance inst = nicholson();
  const Graph& g = inst.graph;
  using S = std::vector<std::pair<int, int>>;
  // Branch at vertex 6.
  CHECK_THROWS_AS(
      path_from_support(g, inst.s, inst.t, S{{0, 1}, {4, 1}, {5, 1}, {10, 1}, {9, 1}}),
      NotAPath);
  // Wrong sign on one edge.
  CHECK_THROWS_AS(
      path_from_support(g, inst.s, inst.t, S{{0, 1}, {4, -1}, {5, 1}, {10, 1}}),
      NotAPath);
  // Detached component (edges 3 and 8 hang off the walk).
  CHECK_THROWS_AS(
      path_from_support(g, inst.s, inst.t, S{{0, 1}, {4, 1}, {5, 1}, {10, 1}, {3, 1}, {8, 1}}),
      NotAPath);
  // Empty support between distinct endpoints.
  CHECK_THROWS_AS(path_from_support(g, inst.s, inst.t, S{}), NotAPath);
  // Stops short of the target.
  CHECK_THROWS_AS(path_from_support(g, inst.s, inst.t, S{{0, 1}, {4, 1}}),
                  NotAPath);
  CHECK_THROWS_AS(path_from_support(g, 1, 1, S{}), SameEndpoints);
}

TEST_CASE("perturb_weights jitters multiplicatively and stays in sync") {
  Rng rng(42);
  const Graph g = random_connected(rng, 30, 25, 0.5, 2.0);
  Rng r1(7), r2(7);
  const Graph p1 = perturb_weights(g, r1, 1e-6);
  const Graph p2 = perturb_weights(g, r2, 1e-6);
  for (int j = 0; j < g.m(); ++j) {
    CHECK(p1.edges[j].weight == p2.edges[j].weight);  // same seed, same graph
    CHECK(p1.edges[j].weight > 0.0);
    const double rel = std::abs(p1.edges[j].weight - g.edges[j].weight) /
                       g.edges[j].weight;
    CHECK(rel <= 1e-6);
  }
  for (int v = 0; v < p1.n; ++v)
    for (const Arc& a : p1.adj[v])
      CHECK(a.weight == p1.edges[a.edge].weight);
}

TEST_CASE("random_connected produces valid graphs of the requested size") {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    // n >= 8 keeps 7 chords feasible on top of the spanning tree.
    const int n = 8 + static_cast<int>(uniform_index(rng, 17));
    const Graph g = random_connected(rng, n, 7, 0.25, 4.0);
    CHECK(g.n == n);
    CHECK(g.m() == n - 1 + 7);
    for (const Edge& e : g.edges) {
      CHECK(e.weight >= 0.25);
      CHECK(e.weight < 4.0);
    }
  }
}
