#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lassopath/dijkstra.hpp"
#include "lassopath/errors.hpp"
#include "lassopath/format.hpp"
#include "lassopath/graph.hpp"
#include "lassopath/io.hpp"
#include "lassopath/rng.hpp"

namespace lassopath {

/// A solvable problem: graph plus terminal pair, with optional planar
/// coordinates (index-aligned with graph vertices) for the geometric
/// families.  `provenance` is a small JSON object recording generator and
/// parameters; it rides along into sidecar files and run manifests.
struct Instance {
  Graph graph;
  int s = 0;
  int t = 0;
  std::vector<std::array<double, 2>> coords;  // empty when not geometric
  std::string name;
  std::string provenance = "{}";
};

/// Companion JSON for a written edge list: identity, size, terminal pair (as
/// labels, which survive relabeling), and how the instance came to be.
inline void write_instance_sidecar(std::ostream& out, const Instance& inst) {
  out << "{\"name\":\"" << inst.name << "\",\"n\":" << inst.graph.n
      << ",\"m\":" << inst.graph.m()
      << ",\"s\":" << inst.graph.labels[inst.s]
      << ",\"t\":" << inst.graph.labels[inst.t]
      << ",\"provenance\":" << inst.provenance << "}\n";
}

/// Nicholson's 9-vertex worked example.  Edge ids follow the order below;
/// several tests freeze values against this exact ordering, so it must not
/// change.  The shortest 1-9 path is 1-2-3-6-9 with length 8.
inline Instance nicholson() {
  Instance inst;
  inst.name = "nicholson";
  inst.graph = build_graph({
      {1, 2, 3.0},   // 0
      {1, 3, 6.0},   // 1
      {1, 4, 7.0},   // 2
      {2, 5, 4.0},   // 3
      {2, 3, 1.0},   // 4
      {3, 6, 2.0},   // 5
      {4, 6, 3.0},   // 6
      {4, 7, 4.0},   // 7
      {5, 8, 1.0},   // 8
      {6, 8, 1.0},   // 9
      {6, 9, 2.0},   // 10
      {7, 9, 5.0},   // 11
      {8, 9, 2.0},   // 12
  });
  inst.s = inst.graph.index_of(1);
  inst.t = inst.graph.index_of(9);
  inst.provenance = "{\"generator\":\"nicholson\"}";
  return inst;
}

/// Random connected graph: a uniform random attachment tree plus
/// `extra_edges` distinct chords, weights uniform in [wlo, whi).  Workhorse
/// for property sweeps; sizes are expected to stay small.
inline Graph random_connected(Rng& rng, int n, int extra_edges, double wlo,
                              double whi) {
  std::vector<LabeledEdge> edges;
  std::unordered_set<std::uint64_t> used;
  auto key = [](int u, int v) {
    return (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
           static_cast<std::uint64_t>(std::max(u, v));
  };
  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(uniform_index(rng, v));
    used.insert(key(u, v));
    edges.push_back({u, v, uniform(rng, wlo, whi)});
  }
  int added = 0;
  int attempts = 0;
  const int max_attempts = 1000 * (extra_edges + 1);
  while (added < extra_edges && attempts < max_attempts) {
    ++attempts;
    const int u = static_cast<int>(uniform_index(rng, n));
    const int v = static_cast<int>(uniform_index(rng, n));
    if (u == v || used.count(key(u, v))) continue;
    used.insert(key(u, v));
    edges.push_back({u, v, uniform(rng, wlo, whi)});
    ++added;
  }
  return build_graph(edges);
}

// ---------------------------------------------------------------------------
// Image grids

/// Pixel grid over an image.  Vertex labels are pixel indices y*width + x;
/// terminals default to the two opposite corners.
struct GridSpec {
  int width = 0;   // 0: take from the image; otherwise must match
  int height = 0;
  bool diagonals = true;
  double epsilon = 1e-3;       // weight floor, keeps flat regions traversable
  std::int64_t s_pixel = -1;   // < 0: top-left
  std::int64_t t_pixel = -1;   // < 0: bottom-right
};

/// Builds the 8-connected (or 4-connected) grid whose edge weights favor
/// high-contrast transitions: w = eps + 1/(1 + |dg|), diagonals scaled by
/// sqrt(2).  Low weight therefore means a strong gray-level step, so shortest
/// paths trace contours.
inline Instance grid_from_image(const Image& img, GridSpec spec = {}) {
  if (img.width < 2 || img.height < 2)
    throw ImageTooSmall("need at least 2x2 pixels, got " +
                        std::to_string(img.width) + "x" +
                        std::to_string(img.height));
  if (img.pixels.size() !=
      static_cast<std::size_t>(img.width) * img.height)
    throw BadPixelFormat("raster holds " + std::to_string(img.pixels.size()) +
                         " samples for " + std::to_string(img.width) + "x" +
                         std::to_string(img.height));
  if ((spec.width != 0 && spec.width != img.width) ||
      (spec.height != 0 && spec.height != img.height))
    throw Error("grid spec size disagrees with the image");
  const int w = img.width;
  const int h = img.height;
  const double root2 = std::sqrt(2.0);
  std::vector<LabeledEdge> edges;
  edges.reserve(static_cast<std::size_t>(w) * h * 4);
  auto label = [w](int x, int y) {
    return static_cast<std::int64_t>(y) * w + x;
  };
  auto link = [&](int x0, int y0, int x1, int y1, double scale) {
    const double dg = std::abs(img.at(x0, y0) - img.at(x1, y1));
    edges.push_back(
        {label(x0, y0), label(x1, y1), scale * (spec.epsilon + 1.0 / (1.0 + dg))});
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) link(x, y, x + 1, y, 1.0);
      if (y + 1 < h) link(x, y, x, y + 1, 1.0);
      if (spec.diagonals && y + 1 < h) {
        if (x + 1 < w) link(x, y, x + 1, y + 1, root2);
        if (x > 0) link(x, y, x - 1, y + 1, root2);
      }
    }
  Instance inst;
  inst.graph = build_graph(edges);
  inst.coords.resize(inst.graph.n);
  for (int v = 0; v < inst.graph.n; ++v) {
    const std::int64_t l = inst.graph.labels[v];
    inst.coords[v] = {static_cast<double>(l % w), static_cast<double>(l / w)};
  }
  const std::int64_t sl = spec.s_pixel < 0 ? 0 : spec.s_pixel;
  const std::int64_t tl =
      spec.t_pixel < 0 ? static_cast<std::int64_t>(w) * h - 1 : spec.t_pixel;
  if (sl >= static_cast<std::int64_t>(w) * h ||
      tl >= static_cast<std::int64_t>(w) * h)
    throw Error("terminal pixel outside the image");
  if (sl == tl) throw SameEndpoints("terminal pixels coincide");
  inst.s = inst.graph.index_of(sl);
  inst.t = inst.graph.index_of(tl);
  inst.name = "grid-" + std::to_string(w) + "x" + std::to_string(h);
  std::ostringstream prov;
  prov << "{\"generator\":\"grid\",\"width\":" << w << ",\"height\":" << h
       << ",\"epsilon\":" << g17(spec.epsilon) << ",\"diagonals\":"
       << (spec.diagonals ? "true" : "false") << ",\"s_pixel\":" << sl
       << ",\"t_pixel\":" << tl << "}";
  inst.provenance = prov.str();
  return inst;
}

/// Row of the bright/dark boundary at column x for synthetic_ridge_image.
inline int ridge_row(int width, int height, int x) {
  const double pi = 3.14159265358979323846;
  const double c = height / 2.0 +
                   (height / 4.0) * std::sin(2.0 * pi * x / (width - 1));
  return std::min(height - 1, std::max(0, static_cast<int>(std::lround(c))));
}

/// Deterministic per-pixel hash noise in [0, levels).  Irregular rather than
/// periodic, so competing detours never repeat the same gray deltas in
/// lockstep a few pixels apart.
inline int pixel_speckle(int x, int y, int levels, unsigned seed = 0) {
  std::uint64_t h = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x))
                     << 32) |
                    static_cast<std::uint32_t>(y);
  h += 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(seed) + 1);
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return static_cast<int>(h % static_cast<std::uint64_t>(levels));
}

/// Two flat regions separated by a sinusoidal step.  Edges that straddle the
/// step see a ~180 gray-level jump and become about two orders of magnitude
/// cheaper than same-region edges, so every cheapest route zigzags along the
/// boundary.  The whole straddling strip is cheap at once, which makes this
/// the adversarial end of the image family: many corridor variants sit within
/// a few percent of each other, and first-order solvers take a long time to
/// pick a winner.  The speckle keeps the variants at distinct costs so the
/// winner is at least unique.
inline Image synthetic_ridge_image(int width = 70, int height = 64) {
  Image img;
  img.width = width;
  img.height = height;
  img.maxval = 255;
  img.pixels.resize(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const int base = y < ridge_row(width, height, x) ? 208 : 30;
      img.pixels[static_cast<std::size_t>(y) * width + x] =
          base + pixel_speckle(x, y, 17);
    }
  return img;
}

/// Flat midtone background with a one-pixel seam along the main diagonal
/// whose pixels alternate `amplitude` gray levels above and below the
/// background.  Every seam hop spans twice the amplitude, so the seam is a
/// chain of uniformly cheap diagonal edges and the unique shortest route
/// between its corner endpoints, while the featureless background prices
/// every detour an order of magnitude higher.  Splitting the contrast
/// symmetrically around the background is deliberate: an edge from the seam
/// sideways into the background then spans only half a hop's contrast, and
/// by the triangle inequality no two-level seam can push those sideways
/// edges further from the chain than that.  Sideways edges are where the
/// proximal transient parks stray mass, so this is the geometry on which the
/// solvers certify fastest; the default amplitude puts the seam chain's
/// curvature near the default penalty rho = 1, which is where the iteration
/// count bottoms out for this size.
inline Image synthetic_stripe_image(int width = 67, int height = 67,
                                    int amplitude = 9) {
  Image img;
  img.width = width;
  img.height = height;
  img.maxval = 255;
  img.pixels.assign(static_cast<std::size_t>(width) * height, 128.0);
  const int diag = std::min(width, height);
  for (int k = 0; k < diag; ++k)
    img.pixels[static_cast<std::size_t>(k) * width + k] =
        k % 2 == 0 ? 128 + amplitude : 128 - amplitude;
  return img;
}

/// Terminal pixels for synthetic_stripe_image: the seam's two corner ends.
inline std::pair<int, int> stripe_terminals(int width, int height) {
  const int diag = std::min(width, height);
  return {0, (diag - 1) * width + (diag - 1)};
}

// ---------------------------------------------------------------------------
// Road networks

/// Loader knobs.  Classes named in segment rows resolve through speed_table;
/// rows without a fourth column fall back to default_speed.  turn_surcharge
/// is a stand-in for junction delay: half of it is folded into every edge
/// weight per endpoint that is a genuine junction (degree >= 3).
struct RoadOptions {
  std::unordered_map<std::string, double> speed_table;
  double default_speed = -1;
  double turn_surcharge = 0;
};

/// Builds the travel-time graph (weight = length/speed) from node and
/// segment tables.  Self loops are dropped, parallel segments keep the
/// fastest copy, and only the largest connected component survives.  The pair
/// is the smallest surviving label and the vertex farthest from it.
inline Instance load_road_network(std::istream& nodes_in,
                                  std::istream& edges_in,
                                  RoadOptions opt = {}) {
  const std::vector<RoadNode> nodes = read_road_nodes(nodes_in);
  std::unordered_map<std::int64_t, std::array<double, 2>> pos;
  for (const RoadNode& n : nodes)
    if (!pos.emplace(n.id, std::array<double, 2>{n.x, n.y}).second)
      throw ParseError("duplicate node id " + std::to_string(n.id));

  const std::vector<RoadSegment> segs = read_road_segments(edges_in);
  std::vector<LabeledEdge> edges;
  std::unordered_map<std::uint64_t, std::size_t> slot;
  int dropped_loops = 0;
  int merged_parallel = 0;
  std::unordered_map<std::int64_t, int> compact;  // id -> dense index
  auto dense = [&](std::int64_t id) {
    return compact.try_emplace(id, static_cast<int>(compact.size()))
        .first->second;
  };
  for (const RoadSegment& s : segs) {
    if (!pos.count(s.u) || !pos.count(s.v))
      throw DanglingEdge("edges line " + std::to_string(s.line) +
                         " references a node not in the node table");
    double speed = s.speed;
    if (!s.speed_class.empty()) {
      const auto it = opt.speed_table.find(s.speed_class);
      if (it == opt.speed_table.end())
        throw ParseError("edges line " + std::to_string(s.line) +
                         ": unknown speed class '" + s.speed_class + "'");
      speed = it->second;
    } else if (speed < 0) {
      speed = opt.default_speed;
    }
    if (!(s.length > 0))
      throw ParseError("edges line " + std::to_string(s.line) +
                       ": non-positive length");
    if (!(speed > 0))
      throw ParseError("edges line " + std::to_string(s.line) +
                       ": no positive speed available");
    if (s.u == s.v) {
      ++dropped_loops;
      continue;
    }
    const double w = s.length / speed;
    const int du = dense(s.u);
    const int dv = dense(s.v);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(std::min(du, dv)) << 32) |
        static_cast<std::uint64_t>(std::max(du, dv));
    const auto [it, fresh] = slot.try_emplace(key, edges.size());
    if (fresh) {
      edges.push_back({s.u, s.v, w});
    } else {
      edges[it->second].w = std::min(edges[it->second].w, w);
      ++merged_parallel;
    }
  }
  if (edges.empty()) throw ParseError("no usable edges");

  // Largest component; ties go to the component holding the smallest id.
  std::unordered_map<std::int64_t, std::int64_t> up;
  auto find = [&up](std::int64_t x) {
    up.try_emplace(x, x);
    while (up[x] != x) {
      up[x] = up[up[x]];
      x = up[x];
    }
    return x;
  };
  for (const LabeledEdge& e : edges) up[find(e.u)] = find(e.v);
  std::map<std::int64_t, std::pair<int, std::int64_t>> comp;  // root -> (count, min id)
  std::unordered_set<std::int64_t> seen_ids;
  for (const LabeledEdge& e : edges)
    for (const std::int64_t id : {e.u, e.v})
      if (seen_ids.insert(id).second) {
        auto& [count, lo] = comp[find(id)];
        ++count;
        lo = count == 1 ? id : std::min(lo, id);
      }
  std::int64_t keep_root = -1;
  std::pair<int, std::int64_t> best{0, 0};
  for (const auto& [root, info] : comp)
    if (info.first > best.first ||
        (info.first == best.first && info.second < best.second)) {
      best = info;
      keep_root = root;
    }
  std::vector<LabeledEdge> kept;
  for (const LabeledEdge& e : edges)
    if (find(e.u) == keep_root) kept.push_back(e);
  const int components_removed = static_cast<int>(comp.size()) - 1;

  if (opt.turn_surcharge > 0) {
    std::unordered_map<std::int64_t, int> degree;
    for (const LabeledEdge& e : kept) {
      ++degree[e.u];
      ++degree[e.v];
    }
    for (LabeledEdge& e : kept)
      e.w += 0.5 * opt.turn_surcharge *
             ((degree[e.u] >= 3 ? 1 : 0) + (degree[e.v] >= 3 ? 1 : 0));
  }

  Instance inst;
  inst.graph = build_graph(kept);
  inst.coords.resize(inst.graph.n);
  for (int v = 0; v < inst.graph.n; ++v)
    inst.coords[v] = pos.at(inst.graph.labels[v]);
  const auto lo =
      std::min_element(inst.graph.labels.begin(), inst.graph.labels.end());
  inst.s = static_cast<int>(lo - inst.graph.labels.begin());
  const ShortestPathTree tree = dijkstra(inst.graph, inst.s);
  int far = inst.s;
  for (int v = 0; v < inst.graph.n; ++v)
    if (tree.dist[v] > tree.dist[far]) far = v;
  inst.t = far;
  inst.name = "road-" + std::to_string(inst.graph.n);
  std::ostringstream prov;
  prov << "{\"generator\":\"road\",\"dropped_loops\":" << dropped_loops
       << ",\"merged_parallel\":" << merged_parallel
       << ",\"components_removed\":" << components_removed
       << ",\"turn_surcharge\":" << g17(opt.turn_surcharge) << "}";
  inst.provenance = prov.str();
  return inst;
}

inline Instance load_road_network_files(const std::string& nodes_path,
                                        const std::string& edges_path,
                                        RoadOptions opt = {}) {
  std::ifstream nodes(nodes_path);
  if (!nodes) throw ParseError("cannot open " + nodes_path);
  std::ifstream edges(edges_path);
  if (!edges) throw ParseError("cannot open " + edges_path);
  return load_road_network(nodes, edges, opt);
}

/// Node and segment tables as strings, ready for load_road_network.
struct RoadFiles {
  std::string nodes;
  std::string edges;
};

/// Rectangular street lattice with two speed classes: every
/// `arterial_every`-th row and column is an "arterial", the rest are
/// "street".  `removals` random intersections are deleted outright (their
/// segments with them); the loader's component pass cleans up any fallout.
inline RoadFiles road_lattice_files(int rows, int cols, int arterial_every,
                                    double block, int removals,
                                    std::uint64_t seed) {
  Rng rng(seed);
  std::unordered_set<std::int64_t> removed;
  const std::int64_t total = static_cast<std::int64_t>(rows) * cols;
  while (static_cast<int>(removed.size()) < std::min<std::int64_t>(removals, total / 2))
    removed.insert(static_cast<std::int64_t>(uniform_index(rng, total)));
  auto id = [cols](int r, int c) {
    return static_cast<std::int64_t>(r) * cols + c;
  };
  std::ostringstream nodes, edges;
  nodes << "# id\tx\ty\n";
  edges << "# u\tv\tlength\tclass\n";
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (removed.count(id(r, c))) continue;
      nodes << id(r, c) << '\t' << g17(c * block) << '\t' << g17(r * block)
            << '\n';
    }
  auto emit = [&](int r0, int c0, int r1, int c1, bool arterial) {
    if (removed.count(id(r0, c0)) || removed.count(id(r1, c1))) return;
    edges << id(r0, c0) << '\t' << id(r1, c1) << '\t' << g17(block) << '\t'
          << (arterial ? "arterial" : "street") << '\n';
  };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const bool row_art = arterial_every > 0 && r % arterial_every == 0;
      const bool col_art = arterial_every > 0 && c % arterial_every == 0;
      if (c + 1 < cols) emit(r, c, r, c + 1, row_art);
      if (r + 1 < rows) emit(r, c, r + 1, c, col_art);
    }
  return {nodes.str(), edges.str()};
}

/// Mid-size irregular city: a jittered lattice with extra diagonal shortcuts
/// and a sprinkle of arterials, sized to land near a thousand intersections
/// and twenty-three hundred segments after cleanup.
inline RoadFiles athens_like_files(std::uint64_t seed) {
  const int rows = 34, cols = 30;
  Rng rng(seed);
  std::vector<std::array<double, 2>> pt(static_cast<std::size_t>(rows) * cols);
  auto id = [cols](int r, int c) {
    return static_cast<std::int64_t>(r) * cols + c;
  };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      pt[id(r, c)] = {(c + 0.35 * (2 * uniform01(rng) - 1)) * 100.0,
                      (r + 0.35 * (2 * uniform01(rng) - 1)) * 100.0};
  std::unordered_set<std::int64_t> removed;
  while (removed.size() < 11)
    removed.insert(static_cast<std::int64_t>(
        uniform_index(rng, static_cast<std::uint64_t>(rows) * cols)));
  std::ostringstream nodes, edges;
  nodes << "# id\tx\ty\n";
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (!removed.count(id(r, c)))
        nodes << id(r, c) << '\t' << g17(pt[id(r, c)][0]) << '\t'
              << g17(pt[id(r, c)][1]) << '\n';
  edges << "# u\tv\tlength\tclass\n";
  // Segment lengths get a 0..20% stretch on top of the endpoint jitter;
  // without it, staircase routes through the lattice tie to within a
  // fraction of a percent and no single route is meaningfully shortest.
  auto emit = [&](std::int64_t u, std::int64_t v) {
    if (removed.count(u) || removed.count(v)) return;
    const double dx = pt[u][0] - pt[v][0];
    const double dy = pt[u][1] - pt[v][1];
    const bool arterial = uniform01(rng) < 0.25;
    const double stretch = 1.0 + 0.2 * uniform01(rng);
    edges << u << '\t' << v << '\t'
          << g17(std::sqrt(dx * dx + dy * dy) * stretch) << '\t'
          << (arterial ? "arterial" : "street") << '\n';
  };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) emit(id(r, c), id(r, c + 1));
      if (r + 1 < rows) emit(id(r, c), id(r + 1, c));
    }
  std::unordered_set<std::uint64_t> used;
  int added = 0;
  while (added < 410) {
    const int r = static_cast<int>(uniform_index(rng, rows - 1));
    const int c = static_cast<int>(uniform_index(rng, cols));
    const int c2 = uniform01(rng) < 0.5 ? c + 1 : c - 1;
    if (c2 < 0 || c2 >= cols) continue;
    const std::uint64_t key =
        (static_cast<std::uint64_t>(id(r, c)) << 32) |
        static_cast<std::uint64_t>(id(r + 1, c2));
    if (!used.insert(key).second) continue;
    ++added;
    emit(id(r, c), id(r + 1, c2));
  }
  return {nodes.str(), edges.str()};
}

// ---------------------------------------------------------------------------
// Random geometric graphs

/// Points in the unit square, edges between pairs within a radius that grows
/// until the giant component is big enough.
struct RggSpec {
  int n = 0;
  std::uint64_t seed = 0;
  double target = 0.98;        // required giant-component fraction
  double alpha_w = 2.0;        // weight = distance^alpha_w, before perturbation
  double perturb = 1e-4;       // one-time relative weight jitter
  int max_growth_steps = 200;  // radius growth cap before giving up
};

/// Samples the point cloud, grows the radius by 5% steps from
/// sqrt(log10(n)/n) until the giant component reaches the target fraction,
/// keeps that component, and weights each edge dist^alpha times a one-time
/// jitter so geodesics are unique.  s is the leftmost survivor, t the vertex
/// farthest from it.
inline Instance random_geometric(const RggSpec& spec) {
  if (spec.n < 10) throw Error("random_geometric needs at least 10 nodes");
  if (!(spec.target > 0) || spec.target > 1.0)
    throw Error("target fraction must be in (0, 1]");
  Rng rng(spec.seed);
  const int n = spec.n;
  std::vector<std::array<double, 2>> pt(n);
  for (auto& p : pt) {
    p[0] = uniform01(rng);
    p[1] = uniform01(rng);
  }

  struct Candidate {
    int i, j;
    double d2;
  };
  std::vector<Candidate> cand;
  std::vector<int> parent(n);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  double r = std::sqrt(std::log10(static_cast<double>(n)) / n);
  int steps = 0;
  int giant_root = -1;
  double fraction = 0;
  for (;; r *= 1.05, ++steps) {
    cand.clear();
    std::unordered_map<std::int64_t, std::vector<int>> cell;
    auto key = [](std::int64_t cx, std::int64_t cy) {
      return (cx << 32) ^ (cy & 0xffffffff);
    };
    for (int i = 0; i < n; ++i)
      cell[key(static_cast<std::int64_t>(pt[i][0] / r),
               static_cast<std::int64_t>(pt[i][1] / r))]
          .push_back(i);
    const double r2 = r * r;
    std::vector<int> near;
    for (int i = 0; i < n; ++i) {
      near.clear();
      const std::int64_t cx = static_cast<std::int64_t>(pt[i][0] / r);
      const std::int64_t cy = static_cast<std::int64_t>(pt[i][1] / r);
      for (std::int64_t dx = -1; dx <= 1; ++dx)
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
          const auto it = cell.find(key(cx + dx, cy + dy));
          if (it == cell.end()) continue;
          for (const int j : it->second)
            if (j > i) near.push_back(j);
        }
      std::sort(near.begin(), near.end());
      for (const int j : near) {
        const double dx = pt[i][0] - pt[j][0];
        const double dy = pt[i][1] - pt[j][1];
        const double d2 = dx * dx + dy * dy;
        if (d2 <= r2) cand.push_back({i, j, d2});
      }
    }
    for (int i = 0; i < n; ++i) parent[i] = i;
    for (const Candidate& c : cand) parent[find(c.i)] = find(c.j);
    std::unordered_map<int, int> size;
    int best = 0;
    giant_root = -1;
    for (int i = 0; i < n; ++i) {
      const int root = find(i);
      const int s = ++size[root];
      if (s > best || (s == best && root < giant_root)) {
        best = s;
        giant_root = root;
      }
    }
    fraction = static_cast<double>(best) / n;
    if (fraction >= spec.target) break;
    if (steps >= spec.max_growth_steps)
      throw TargetUnreachable(
          "giant component stuck at " + g17(fraction) + " after " +
          std::to_string(steps) + " growth steps");
  }

  std::vector<LabeledEdge> edges;
  edges.reserve(cand.size());
  for (const Candidate& c : cand) {
    if (find(c.i) != giant_root) continue;
    const double base = std::pow(c.d2, spec.alpha_w / 2.0);
    edges.push_back({c.i, c.j, base * (1.0 + spec.perturb * uniform01(rng))});
  }
  Instance inst;
  inst.graph = build_graph(edges);
  inst.coords.resize(inst.graph.n);
  for (int v = 0; v < inst.graph.n; ++v)
    inst.coords[v] = pt[static_cast<std::size_t>(inst.graph.labels[v])];
  int left = 0;
  for (int v = 1; v < inst.graph.n; ++v)
    if (inst.coords[v][0] < inst.coords[left][0]) left = v;
  inst.s = left;
  const ShortestPathTree tree = dijkstra(inst.graph, inst.s);
  int far = inst.s;
  for (int v = 0; v < inst.graph.n; ++v)
    if (tree.dist[v] > tree.dist[far]) far = v;
  inst.t = far;
  inst.name = "rgg-" + std::to_string(n);
  std::ostringstream prov;
  prov << "{\"generator\":\"rgg\",\"n_requested\":" << n
       << ",\"seed\":" << spec.seed << ",\"radius\":" << g17(r)
       << ",\"growth_steps\":" << steps
       << ",\"giant_fraction\":" << g17(fraction)
       << ",\"alpha_w\":" << g17(spec.alpha_w)
       << ",\"perturb\":" << g17(spec.perturb) << "}";
  inst.provenance = prov.str();
  return inst;
}

}  // namespace lassopath
