#include <chrono>
#include <cstdio>

#include "lassopath/admm.hpp"
#include "lassopath/dijkstra.hpp"
#include "lassopath/equivalence.hpp"
#include "lassopath/instances.hpp"
#include "lassopath/lars.hpp"
#include "lassopath/rng.hpp"

using namespace lassopath;

static double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

static void measure(const char* name, const Graph& g, int s, int t) {
  std::printf("== %s: n=%d m=%d\n", name, g.n, g.m());
  const auto tree = dijkstra(g, s);
  const Path oracle = tree_path(g, tree, t);
  std::printf("  dijkstra dist=%.6g hops=%zu unique=%d\n", tree.dist[t],
              oracle.edges.size(),
              int(terminal_uniqueness_check(g, tree).unique));
  ProximalConfig cfg;
  double t0 = now_s();
  const auto exact = admm_solve(g, s, t, cfg);
  const double tx = now_s() - t0;
  t0 = now_s();
  const auto inx = inadmm_solve(g, s, t, cfg);
  const double ti = now_s() - t0;
  const WarmStart ws = warm_start_from_path(g, s, t, oracle);
  const auto warm = inadmm_solve(g, s, t, cfg, &ws);
  std::printf("  admm   conv=%d iters=%d (%.1fs)  lambda=%.4g\n",
              int(exact.converged), exact.state.iterations, tx, exact.lambda);
  std::printf("  inadmm conv=%d iters=%d (%.1fs) mean_cg=%.1f\n",
              int(inx.converged), inx.state.iterations, ti,
              double(inx.total_cg_iterations) /
                  std::max(1, inx.state.iterations));
  std::printf("  warm   conv=%d iters=%d\n", int(warm.converged),
              warm.state.iterations);
  std::printf("  gap exact-inexact %.3g\n",
              (exact.beta - inx.beta).cwiseAbs().maxCoeff());
  for (const auto* r : {&exact, &inx}) {
    try {
      const Path p = extract_path(g, s, t, r->beta);
      std::printf("  extract hops=%zu equal_oracle=%d\n", p.edges.size(),
                  int(p.edges == oracle.edges));
    } catch (const Error& e) {
      std::printf("  extract failed: %s\n", e.what());
    }
  }
}

int main() {
  {
    const Image img = synthetic_stripe_image(67, 67, 0);
    GridSpec spec;
    spec.width = 67;
    spec.height = 67;
    const auto [sp, tp] = stripe_terminals(67, 67);
    spec.s_pixel = sp;
    spec.t_pixel = tp;
    Instance inst = grid_from_image(img, spec);
    Rng rng(123);
    const Graph g = perturb_weights(inst.graph, rng, 1e-3);
    measure("stripe 67x67 perturbed", g, inst.s, inst.t);
  }
  for (const auto& [n, seed] : {std::pair{1500, 7}, std::pair{600, 3}}) {
    RggSpec rs;
    rs.n = n;
    rs.seed = static_cast<unsigned>(seed);
    const Instance inst = random_geometric(rs);
    std::string name = "rgg n=" + std::to_string(n);
    measure(name.c_str(), inst.graph, inst.s, inst.t);
  }
  return 0;
}
