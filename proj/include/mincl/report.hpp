#ifndef MINCL_REPORT_HPP
#define MINCL_REPORT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mincl/linalg.hpp"

namespace mincl {

// Counts oracle work. Every solver increments it on every operator
// evaluation and every projection, including the ones spent inside
// backtracking / doubling loops.
struct OracleCounter {
  std::int64_t f_evals = 0;
  std::int64_t projections = 0;
};

// One outer iteration of a solver. `residual` is the quantity the solver
// drives to zero (operator norm, operator-mapping norm, or inexact
// displacement norm, depending on the algorithm). `lambda` is absent for
// records that carry no anchoring step size (iteration 0, and the
// extragradient solver, whose L column stores the inverse step size).
struct TraceRecord {
  std::int64_t k = 0;
  double residual = 0.0;
  std::optional<double> lambda;
  double L = 0.0;
  std::optional<double> potential;
  std::int64_t f_evals = 0;
};

struct SolverReport {
  Vec final_point;
  std::optional<Vec> companion_point;  // the paired point, for solvers that return two
  double residual = 0.0;
  std::vector<TraceRecord> trace;
  OracleCounter counters;
  bool converged = false;
};

}  // namespace mincl

#endif
