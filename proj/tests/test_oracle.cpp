#include <doctest.h>

#include "lassopath/dijkstra.hpp"
#include "lassopath/instances.hpp"
#include "test_support.hpp"

using namespace lassopath;

TEST_CASE("dijkstra solves the 9-vertex worked example") {
  const Instance inst = nicholson();
  const ShortestPathTree t = dijkstra(inst.graph, inst.s);
  CHECK(t.dist[inst.t] == doctest::Approx(8.0).epsilon(1e-15));
  const Path p = tree_path(inst.graph, t, inst.t);
  CHECK(p.edges == std::vector<int>{0, 4, 5, 10});
  CHECK(p.length == doctest::Approx(8.0).epsilon(1e-15));
  // Distances to every vertex, checked against exhaustive enumeration.
  for (int v = 0; v < inst.graph.n; ++v) {
    if (v == inst.s) continue;
    const auto ref = testsupport::enumerate_paths(inst.graph, inst.s, v);
    CHECK(t.dist[v] == doctest::Approx(ref.best).epsilon(1e-14));
  }
}

TEST_CASE("dijkstra agrees with enumeration on random graphs") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(uniform_index(rng, 6));
    const Graph g = random_connected(rng, n, 1 + static_cast<int>(uniform_index(rng, 8)), 0.25, 3.0);
    const ShortestPathTree t = dijkstra(g, 0);
    for (int v = 1; v < g.n; ++v) {
      const auto ref = testsupport::enumerate_paths(g, 0, v);
      CHECK(t.dist[v] == doctest::Approx(ref.best).epsilon(1e-12));
    }
  }
}

TEST_CASE("dijkstra early exit settles the target with the full distance") {
  Rng rng(13);
  const Graph g = random_connected(rng, 40, 30, 0.5, 2.0);
  const ShortestPathTree full = dijkstra(g, 3);
  const ShortestPathTree cut = dijkstra(g, 3, 27);
  CHECK(cut.settled[27] == 1);
  CHECK(cut.dist[27] == full.dist[27]);
  CHECK(cut.settled_count <= full.settled_count);
  const Path p = tree_path(g, cut, 27);
  CHECK(p.length == doctest::Approx(full.dist[27]).epsilon(1e-14));
}

TEST_CASE("equal-length ties resolve toward the smaller vertex id") {
  // Two parallel two-hop routes of identical length; the route through the
  // smaller middle id must win deterministically.
  const Graph g = build_graph({{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
  const ShortestPathTree t = dijkstra(g, 0);
  CHECK(t.dist[3] == 2.0);
  CHECK(t.parent[3] == 1);
  const ShortestPathTree again = dijkstra(g, 0);
  CHECK(again.parent == t.parent);
  CHECK(again.parent_edge == t.parent_edge);
}

TEST_CASE("bidirectional search matches the one-sided oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6 + static_cast<int>(uniform_index(rng, 30));
    const Graph g = random_connected(rng, n, 2 + static_cast<int>(uniform_index(rng, 20)), 0.25, 3.0);
    const int s = static_cast<int>(uniform_index(rng, n));
    int t = static_cast<int>(uniform_index(rng, n));
    if (t == s) t = (t + 1) % n;
    const ShortestPathTree ref = dijkstra(g, s);
    const BidirectionalResult r = bidirectional_dijkstra(g, s, t);
    CHECK(r.distance == doctest::Approx(ref.dist[t]).epsilon(1e-12));
    // The returned walk must be a real s-t path of the claimed length.
    REQUIRE(!r.path.vertices.empty());
    CHECK(r.path.vertices.front() == s);
    CHECK(r.path.vertices.back() == t);
    double len = 0.0;
    for (std::size_t i = 0; i < r.path.edges.size(); ++i) {
      const Edge& e = g.edges[r.path.edges[i]];
      const int a = r.path.vertices[i];
      const int b = r.path.vertices[i + 1];
      CHECK(((e.tail == a && e.head == b) || (e.tail == b && e.head == a)));
      len += e.weight;
    }
    CHECK(len == doctest::Approx(r.distance).epsilon(1e-12));
    // Termination certificate: no open pair of labels can beat the answer.
    const MeetingCertificate& c = r.certificate;
    CHECK(c.top_forward + c.top_backward >= c.best_bridge * (1.0 - 1e-12));
    CHECK(c.best_bridge == r.distance);
    CHECK(c.bridge_edge >= 0);
  }
}

TEST_CASE("bidirectional search rejects equal endpoints") {
  const Instance inst = nicholson();
  CHECK_THROWS_AS(bidirectional_dijkstra(inst.graph, 2, 2), SameEndpoints);
}

TEST_CASE("uniqueness check flags vertices with two tight predecessors") {
  SUBCASE("unit 4-cycle is ambiguous at the far corner") {
    // Edge order matters: vertices are indexed by first appearance.
    const Graph g = build_graph({{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
    const ShortestPathTree t = dijkstra(g, 0);
    const UniquenessReport r = terminal_uniqueness_check(g, t);
    CHECK(!r.unique);
    CHECK(r.ambiguous == std::vector<int>{g.index_of(3)});
  }
  SUBCASE("the worked example's tree from vertex 1 is unique") {
    const Instance inst = nicholson();
    const ShortestPathTree t = dijkstra(inst.graph, inst.s);
    const UniquenessReport r = terminal_uniqueness_check(inst.graph, t);
    CHECK(r.unique);
    CHECK(r.ambiguous.empty());
    // Cross-check with enumeration: exactly one optimal path to the target.
    const auto ref = testsupport::enumerate_paths(inst.graph, inst.s, inst.t);
    CHECK(ref.n_optimal == 1);
  }
  SUBCASE("perturbation clears the ambiguity") {
    const Graph g = build_graph({{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
    Rng rng(23);
    const Graph p = perturb_weights(g, rng, 1e-6);
    const UniquenessReport r = terminal_uniqueness_check(p, dijkstra(p, 0));
    CHECK(r.unique);
  }
}
