#pragma once

#include <atomic>
#include <cstdint>

namespace lassopath {

/// Work counters for the cost model used in benchmark reports.
///
/// edge_touches is the unit everything else is reduced to: one multiply-add
/// against one stored nonzero.  A matvec with the m x n incidence design
/// touches 2m nonzeros; the normal-operator apply Q Q^T x + rho x costs
/// 4m + n.  Counters are atomics so instrumented loops can run under OpenMP
/// later without changing call sites.
struct OpCounters {
  std::atomic<std::int64_t> edge_touches{0};
  std::atomic<std::int64_t> matvecs{0};
  std::atomic<std::int64_t> cg_iterations{0};
  std::atomic<std::int64_t> cholesky_factorizations{0};
  std::atomic<std::int64_t> triangular_solves{0};

  void reset() {
    edge_touches = 0;
    matvecs = 0;
    cg_iterations = 0;
    cholesky_factorizations = 0;
    triangular_solves = 0;
  }
};

/// Plain-value snapshot, safe to copy into reports.
struct OpCounts {
  std::int64_t edge_touches = 0;
  std::int64_t matvecs = 0;
  std::int64_t cg_iterations = 0;
  std::int64_t cholesky_factorizations = 0;
  std::int64_t triangular_solves = 0;
};

inline OpCounts snapshot(const OpCounters& c) {
  OpCounts s;
  s.edge_touches = c.edge_touches.load();
  s.matvecs = c.matvecs.load();
  s.cg_iterations = c.cg_iterations.load();
  s.cholesky_factorizations = c.cholesky_factorizations.load();
  s.triangular_solves = c.triangular_solves.load();
  return s;
}

inline OpCounts diff(const OpCounts& after, const OpCounts& before) {
  OpCounts d;
  d.edge_touches = after.edge_touches - before.edge_touches;
  d.matvecs = after.matvecs - before.matvecs;
  d.cg_iterations = after.cg_iterations - before.cg_iterations;
  d.cholesky_factorizations =
      after.cholesky_factorizations - before.cholesky_factorizations;
  d.triangular_solves = after.triangular_solves - before.triangular_solves;
  return d;
}

/// Process-wide counter block.  reset() it around the region you measure.
inline OpCounters& op_counters() {
  static OpCounters counters;
  return counters;
}

}  // namespace lassopath
