#include <cstdio>
#include <sstream>

#include "lassopath/dijkstra.hpp"
#include "lassopath/instances.hpp"

using namespace lassopath;

int main() {
  {  // ridge corridor
    const Image img = synthetic_ridge_image();
    const Instance inst = grid_from_image(img);
    const auto dij = dijkstra(inst.graph, inst.s);
    const auto path = tree_path(inst.graph, dij, inst.t);
    int maxdev = 0;
    for (const int v : path.vertices) {
      const std::int64_t l = inst.graph.labels[v];
      const int x = (int)(l % img.width), y = (int)(l / img.width);
      const int dev = std::abs(y - ridge_row(img.width, img.height, x));
      maxdev = std::max(maxdev, dev);
    }
    std::printf("ridge: n=%d m=%d s=%d t=%d dist=%.10f hops=%zu maxdev=%d\n",
                inst.graph.n, inst.graph.m(), inst.s, inst.t, dij.dist[inst.t],
                path.edges.size(), maxdev);
  }
  {  // manhattan lattice, no removals (fully deterministic)
    const RoadFiles f = road_lattice_files(32, 32, 4, 100.0, 0, 3);
    RoadOptions opt;
    opt.speed_table = {{"arterial", 2.0}, {"street", 1.0}};
    std::istringstream ni(f.nodes), ei(f.edges);
    const Instance inst = load_road_network(ni, ei, opt);
    const auto dij = dijkstra(inst.graph, inst.s);
    std::printf("manhattan: n=%d m=%d slabel=%lld tlabel=%lld dist=%.10f\n",
                inst.graph.n, inst.graph.m(),
                (long long)inst.graph.labels[inst.s],
                (long long)inst.graph.labels[inst.t], dij.dist[inst.t]);
    std::printf("manhattan prov: %s\n", inst.provenance.c_str());
  }
  {  // lattice with removals: ranges + determinism
    const RoadFiles f1 = road_lattice_files(20, 20, 5, 50.0, 15, 9);
    const RoadFiles f2 = road_lattice_files(20, 20, 5, 50.0, 15, 9);
    std::printf("lattice removals: tables identical=%d\n",
                (int)(f1.nodes == f2.nodes && f1.edges == f2.edges));
    RoadOptions opt;
    opt.speed_table = {{"arterial", 1.5}, {"street", 1.0}};
    std::istringstream ni(f1.nodes), ei(f1.edges);
    const Instance inst = load_road_network(ni, ei, opt);
    std::printf("lattice removals: n=%d m=%d prov=%s\n", inst.graph.n,
                inst.graph.m(), inst.provenance.c_str());
  }
  {  // athens seed 4
    const RoadFiles f = athens_like_files(4);
    RoadOptions opt;
    opt.speed_table = {{"arterial", 13.9}, {"street", 8.3}};
    std::istringstream ni(f.nodes), ei(f.edges);
    const Instance inst = load_road_network(ni, ei, opt);
    const auto dij = dijkstra(inst.graph, inst.s);
    std::printf("athens: n=%d m=%d slabel=%lld tlabel=%lld dist=%.10f\n",
                inst.graph.n, inst.graph.m(),
                (long long)inst.graph.labels[inst.s],
                (long long)inst.graph.labels[inst.t], dij.dist[inst.t]);
  }
  {  // rgg 3000 seed 11
    RggSpec spec;
    spec.n = 3000;
    spec.seed = 11;
    const Instance inst = random_geometric(spec);
    const auto dij = dijkstra(inst.graph, inst.s);
    std::printf("rgg3000: n=%d m=%d s=%d t=%d dist=%.10f\n", inst.graph.n,
                inst.graph.m(), inst.s, inst.t, dij.dist[inst.t]);
    std::printf("rgg3000 prov: %s\n", inst.provenance.c_str());
  }
  {  // rgg small for round trips
    RggSpec spec;
    spec.n = 200;
    spec.seed = 5;
    const Instance inst = random_geometric(spec);
    const auto dij = dijkstra(inst.graph, inst.s);
    std::printf("rgg200: n=%d m=%d s=%d t=%d dist=%.10f prov=%s\n",
                inst.graph.n, inst.graph.m(), inst.s, inst.t, dij.dist[inst.t],
                inst.provenance.c_str());
  }
  {  // rgg growth-step exhaustion
    RggSpec spec;
    spec.n = 10;
    spec.seed = 0;
    spec.max_growth_steps = 0;
    try {
      const Instance inst = random_geometric(spec);
      std::printf("rgg10: built n=%d m=%d (no throw)\n", inst.graph.n,
                  inst.graph.m());
    } catch (const TargetUnreachable& e) {
      std::printf("rgg10: TargetUnreachable: %s\n", e.what());
    } catch (const Error& e) {
      std::printf("rgg10: Error: %s\n", e.what());
    }
    // also probe a few seeds for one that is NOT connected at the initial radius
    for (std::uint64_t s = 0; s < 8; ++s) {
      RggSpec p;
      p.n = 10;
      p.seed = s;
      p.max_growth_steps = 0;
      try {
        random_geometric(p);
        std::printf("  seed %llu: ok at initial radius\n",
                    (unsigned long long)s);
      } catch (const TargetUnreachable&) {
        std::printf("  seed %llu: TargetUnreachable\n", (unsigned long long)s);
      }
    }
  }
  return 0;
}
