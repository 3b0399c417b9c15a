#ifndef MINCL_PROBLEM_HPP
#define MINCL_PROBLEM_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "mincl/operators.hpp"
#include "mincl/report.hpp"
#include "mincl/sets.hpp"

namespace mincl {

// A runnable problem: operator + feasible set + start point, plus an optional
// reference solution for testing. When the operator has an affine
// representation F(u) = A u + b it is kept here so exact linear-solve oracles
// can cross-check inexact paths.
struct ProblemInstance {
  Operator op;
  FeasibleSet set;
  Vec u0;
  std::optional<Vec> reference_solution;
  std::string operator_tag;
  std::string set_tag;
  std::optional<DenseMatrix> affine_matrix;
  std::optional<Vec> affine_offset;
};

enum class Algorithm {
  HalpernCocoercive,
  HalpernConstrained,
  HalpernConstrainedSimple,
  HalpernLipschitz,
  HalpernLipschitzScaled,
  Eg,
  Restart,
};

/// Maps the CLI spelling (e.g. "halpern-cocoercive") to the enum; unknown
/// names are a hard error.
Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm a);

struct RunConfig {
  Algorithm algorithm = Algorithm::HalpernCocoercive;
  double eps = 1e-6;
  std::optional<double> l0;
  std::optional<double> a0;
  std::optional<double> eta;
  std::optional<std::int64_t> max_iters;
  std::string trace_path;  // empty: no trace file
  std::uint64_t seed = 0;

  /// Flags parameter/algorithm mismatches (e.g. eta without the scaled
  /// variant) before anything runs.
  void validate() const;
};

/// Loads and validates a JSON problem file. Errors name the offending field.
ProblemInstance parse_problem(const std::string& path);
ProblemInstance parse_problem_text(const std::string& json_text);

/// Dispatches to the configured solver. Refuses incompatible pairs (e.g. a
/// cocoercive-only method on an operator with unknown cocoercivity) before
/// any oracle call. Writes the trace CSV when trace_path is set.
SolverReport run(const ProblemInstance& instance, const RunConfig& config);

}  // namespace mincl

#endif
