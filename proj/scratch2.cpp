#include <cstdio>
#include <random>

#include "lassopath/admm.hpp"
#include "lassopath/dijkstra.hpp"
#include "lassopath/equivalence.hpp"
#include "lassopath/instances.hpp"

using namespace lassopath;

int main() {
  const Image img = synthetic_stripe_image();
  const auto [sp, tp] = stripe_terminals(img.width, img.height);
  GridSpec spec;
  spec.s_pixel = sp;
  spec.t_pixel = tp;
  Instance inst = grid_from_image(img, spec);
  const Graph& g = inst.graph;
  const int s = inst.s, t = inst.t;
  std::printf("n=%d m=%d s=%d t=%d\n", g.n, g.m(), s, t);

  const auto dij = dijkstra(g, s);
  const auto path = tree_path(g, dij, t);
  std::printf("dist=%.10f hops=%zu\n", dij.dist[t], path.edges.size());

  ProximalConfig cfg;
  const auto res = admm_solve(g, s, t, cfg);
  const auto rin = inadmm_solve(g, s, t, cfg);
  std::printf("cold=%d/%d in=%d/%d gap=%.2e lambda=%.10f\n",
              res.state.iterations, (int)res.converged, rin.state.iterations,
              (int)rin.converged, (res.beta - rin.beta).lpNorm<Eigen::Infinity>(),
              res.lambda);
  const auto pe = extract_path(g, s, t, res.beta);
  const auto pi = extract_path(g, s, t, rin.beta);
  std::printf("extract exact==oracle %d, inexact==oracle %d\n",
              (int)(pe.vertices == path.vertices),
              (int)(pi.vertices == path.vertices));
  double mean_cg =
      rin.history.empty()
          ? 0.0
          : (double)rin.total_cg_iterations / (double)rin.history.size();
  std::printf("mean_cg=%.1f total_cg=%d\n", mean_cg, rin.total_cg_iterations);

  // One-time positive perturbation of the edge weights, then re-solve the
  // perturbed instance warm from the stored state vs cold.
  Graph g2 = g;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 0.01);
  for (auto& e : g2.edges) e.weight *= 1.0 + u(rng);
  const auto dij2 = dijkstra(g2, s);
  const auto path2 = tree_path(g2, dij2, t);
  const auto cold2 = inadmm_solve(g2, s, t, cfg);
  WarmStart ws{rin.state.alpha, rin.state.v};
  const auto warm2 = inadmm_solve(g2, s, t, cfg, &ws);
  std::printf("perturbed: cold=%d/%d warm=%d/%d agree=%.2e extract==oracle %d\n",
              cold2.state.iterations, (int)cold2.converged,
              warm2.state.iterations, (int)warm2.converged,
              (cold2.beta - warm2.beta).lpNorm<Eigen::Infinity>(),
              (int)(extract_path(g2, s, t, warm2.beta).vertices ==
                    path2.vertices));
  return 0;
}
