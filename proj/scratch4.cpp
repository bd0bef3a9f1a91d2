#include <cstdio>
#include "lassopath/dijkstra.hpp"
#include "lassopath/instances.hpp"
using namespace lassopath;
int main() {
  const Image img = synthetic_ridge_image();
  const Instance inst = grid_from_image(img);
  const auto dij = dijkstra(inst.graph, inst.s);
  const auto path = tree_path(inst.graph, dij, inst.t);
  int maxdev = 0, on_ridge = 0;
  for (const int v : path.vertices) {
    const std::int64_t l = inst.graph.labels[v];
    const int x = (int)(l % img.width), y = (int)(l / img.width);
    if (x < 10 || x > 59) continue;
    const int dev = std::abs(y - ridge_row(img.width, img.height, x));
    maxdev = std::max(maxdev, dev);
    if (dev <= 1) ++on_ridge;
  }
  std::printf("interior maxdev=%d near_ridge=%d total=%zu\n", maxdev, on_ridge,
              path.vertices.size());
  return 0;
}
