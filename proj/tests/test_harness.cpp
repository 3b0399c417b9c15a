#include <stdexcept>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mincl/halpern.hpp"
#include "mincl/instances.hpp"
#include "mincl/problem.hpp"
#include "mincl/trace_io.hpp"

using namespace mincl;

namespace {

std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("parse minimal affine problem") {
  ProblemInstance inst = parse_problem_text(R"({
    "operator": {"type": "affine", "A": [[1.0, 0.0], [0.0, 1.0]]},
    "set": {"type": "whole-space"},
    "u0": [4.0, 3.0]
  })");
  CHECK(inst.op.dim == 2);
  CHECK(*inst.op.metadata.lipschitz_L == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*inst.op.metadata.strong_mono_mu == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*inst.op.metadata.cocoercivity_gamma == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(inst.operator_tag == "affine");
  CHECK(inst.set_tag == "whole-space");
}

TEST_CASE("parse saddle-quadratic with implicit coupling") {
  ProblemInstance inst = parse_problem_text(R"({
    "operator": {"type": "saddle-quadratic",
                 "Q": [[0.0, 0.0], [0.0, 0.0]],
                 "R": [[0.0, 0.0], [0.0, 0.0]]},
    "set": {"type": "whole-space"},
    "u0": [1.0, 1.0, 1.0, 1.0]
  })");
  CHECK(inst.op.dim == 4);
  CHECK(inst.op.evaluate({1.0, 2.0, 3.0, 4.0}) == Vec{3.0, 4.0, -1.0, -2.0});
  CHECK(*inst.op.metadata.lipschitz_L == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("parse regularized and zero operators") {
  ProblemInstance reg = parse_problem_text(R"({
    "operator": {"type": "regularized",
                 "inner": {"type": "affine", "A": [[0.0, 1.0], [-1.0, 0.0]]},
                 "mu": 0.5},
    "set": {"type": "ball", "center": [0.0, 0.0], "radius": 3.0},
    "u0": [1.0, 1.0]
  })");
  CHECK(reg.op.evaluate({1.0, 1.0}) == Vec{1.5, -0.5});
  CHECK(*reg.op.metadata.strong_mono_mu == doctest::Approx(0.5).epsilon(1e-9));
  REQUIRE(reg.affine_matrix.has_value());
  CHECK(reg.affine_matrix->at(0, 0) == doctest::Approx(0.5));

  ProblemInstance zero = parse_problem_text(R"({
    "operator": {"type": "zero", "dim": 3},
    "set": {"type": "simplex"},
    "u0": [0.5, 0.25, 0.25]
  })");
  CHECK(norm(zero.op.evaluate({0.1, 0.2, 0.7})) == 0.0);
}

TEST_CASE("schema violations name the offending field") {
  CHECK_THROWS_WITH_AS(parse_problem_text(R"({"set": {"type": "whole-space"}, "u0": [1.0]})"),
                       doctest::Contains("operator"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_problem_text(R"({
      "operator": {"type": "affine"},
      "set": {"type": "whole-space"}, "u0": [1.0]})"),
                       doctest::Contains("operator.A"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_problem_text(R"({
      "operator": {"type": "affine", "A": [[1, 0], [0]]},
      "set": {"type": "whole-space"}, "u0": [1, 0]})"),
                       doctest::Contains("ragged"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_problem_text(R"({
      "operator": {"type": "warp", "A": [[1]]},
      "set": {"type": "whole-space"}, "u0": [1]})"),
                       doctest::Contains("type"), std::runtime_error);
  // infeasible start
  CHECK_THROWS_WITH_AS(parse_problem_text(R"({
      "operator": {"type": "affine", "A": [[1, 0], [0, 1]]},
      "set": {"type": "box", "lower": [0, 0], "upper": [1, 1]},
      "u0": [2.0, 0.5]})"),
                       doctest::Contains("u0"), std::runtime_error);
  // reference far from solving the inclusion
  CHECK_THROWS_WITH_AS(parse_problem_text(R"({
      "operator": {"type": "affine", "A": [[1, 0], [0, 1]]},
      "set": {"type": "whole-space"},
      "u0": [1.0, 0.0],
      "reference_solution": [1.0, 1.0]})"),
                       doctest::Contains("reference_solution"), std::runtime_error);
}

TEST_CASE("metadata overrides are applied and validated") {
  ProblemInstance inst = parse_problem_text(R"({
    "operator": {"type": "affine", "A": [[0.0, 1.0], [-1.0, 0.0]]},
    "set": {"type": "whole-space"},
    "u0": [1.0, 1.0],
    "overrides": {"gamma": 0.25, "L": 1.0}
  })");
  CHECK(*inst.op.metadata.cocoercivity_gamma == 0.25);
  CHECK_THROWS_AS(parse_problem_text(R"({
    "operator": {"type": "affine", "A": [[1.0]]},
    "set": {"type": "whole-space"},
    "u0": [1.0],
    "overrides": {"gamma": 4.0, "L": 1.0}
  })"),
                  std::runtime_error);
}

TEST_CASE("run dispatch honors compatibility gates") {
  ProblemInstance ident = parse_problem_text(R"({
    "operator": {"type": "affine", "A": [[1.0, 0.0], [0.0, 1.0]]},
    "set": {"type": "whole-space"},
    "u0": [4.0, 3.0]
  })");
  RunConfig cfg;
  cfg.algorithm = Algorithm::HalpernCocoercive;
  cfg.eps = 1e-9;
  SolverReport rep = run(ident, cfg);
  CHECK(rep.converged);
  CHECK(rep.counters.f_evals <= 2);

  ProblemInstance rot = rotation_instance();
  CHECK_THROWS_AS(run(rot, cfg), std::invalid_argument);  // cocoercivity unknown

  RunConfig eg_cfg;
  eg_cfg.algorithm = Algorithm::Eg;
  eg_cfg.eps = 1e-6;
  CHECK_THROWS_AS(run(rot, eg_cfg), std::invalid_argument);  // modulus is zero

  RunConfig bad;
  bad.algorithm = Algorithm::HalpernLipschitz;
  bad.eps = 1e-6;
  bad.eta = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  RunConfig scaled_missing;
  scaled_missing.algorithm = Algorithm::HalpernLipschitzScaled;
  scaled_missing.eps = 1e-6;
  CHECK_THROWS_AS(scaled_missing.validate(), std::invalid_argument);

  RunConfig a0_bad;
  a0_bad.algorithm = Algorithm::HalpernCocoercive;
  a0_bad.eps = 1e-6;
  a0_bad.a0 = 0.5;
  CHECK_THROWS_AS(a0_bad.validate(), std::invalid_argument);

  CHECK_THROWS_AS(algorithm_from_name("gradient-descent"), std::invalid_argument);
}

TEST_CASE("rotation instance converges under the inexact solver with unit slope") {
  ProblemInstance rot = rotation_instance();
  RunConfig cfg;
  cfg.algorithm = Algorithm::HalpernLipschitz;
  cfg.eps = 1e-3;
  SolverReport rep = run(rot, cfg);
  CHECK(rep.converged);
  RateFit fit = fit_rate(rep.trace, 0.2);
  CHECK(fit.slope >= -1.3);
  CHECK(fit.slope <= -0.8);
}

TEST_CASE("identical runs produce byte-identical traces") {
  ProblemInstance rot = rotation_instance();
  RunConfig cfg;
  cfg.algorithm = Algorithm::HalpernLipschitz;
  cfg.eps = 1e-3;
  SolverReport a = run(rot, cfg);
  SolverReport b = run(rot, cfg);
  CHECK(trace_to_csv(a.trace) == trace_to_csv(b.trace));
}

TEST_CASE("counter fidelity against a wrapping oracle") {
  ProblemInstance inst = cocoercive_affine_instance(6);
  std::int64_t observed = 0;
  Operator wrapped = inst.op;
  auto base = inst.op.evaluate;
  wrapped.evaluate = [&observed, base](const Vec& u) {
    ++observed;
    return base(u);
  };
  SolverReport rep = halpern_cocoercive_solve(wrapped, inst.u0, 1e-5);
  CHECK(rep.counters.f_evals == observed);
}

TEST_CASE("trace emission and round trip") {
  SolverReport rep;
  std::string empty_path = tmp_path("mincl_empty_trace.csv");
  emit_trace(rep, empty_path);
  {
    std::ifstream f(empty_path);
    std::string line;
    CHECK(std::getline(f, line));
    CHECK(line == "k,residual,lambda,L_k,potential,f_evals");
    CHECK_FALSE(std::getline(f, line));
  }

  rep.trace.push_back({0, 0.5, std::nullopt, 1.0, std::nullopt, 1});
  rep.trace.push_back({1, 0.25000000000000017, 0.5, 2.0, -1.0 / 3.0, 2});
  rep.trace.push_back({2, 1e-17, 1.0 / 3.0, 2.0, 0.0, 3});
  std::string path = tmp_path("mincl_trace_roundtrip.csv");
  emit_trace(rep, path);
  std::vector<TraceRecord> back = read_trace_csv(path);
  REQUIRE(back.size() == 3);
  for (size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].k == rep.trace[i].k);
    CHECK(back[i].residual == rep.trace[i].residual);
    CHECK(back[i].lambda == rep.trace[i].lambda);
    CHECK(back[i].L == rep.trace[i].L);
    CHECK(back[i].potential == rep.trace[i].potential);
    CHECK(back[i].f_evals == rep.trace[i].f_evals);
  }
  std::remove(empty_path.c_str());
  std::remove(path.c_str());

  CHECK_THROWS_AS(emit_trace(rep, "/nonexistent_dir_xyz/trace.csv"), std::runtime_error);
}

TEST_CASE("rate fitting on synthetic traces") {
  std::vector<TraceRecord> power, constant, geometric;
  for (int k = 1; k <= 100; ++k) {
    power.push_back({k, 1.0 / k, std::nullopt, 1.0, std::nullopt, k});
    constant.push_back({k, 0.75, std::nullopt, 1.0, std::nullopt, k});
    geometric.push_back({k, std::pow(0.9, k), std::nullopt, 1.0, std::nullopt, k});
  }
  RateFit p = fit_rate(power, 0.2);
  CHECK(std::fabs(p.slope + 1.0) <= 1e-9);
  CHECK(p.r_squared >= 1.0 - 1e-12);

  CHECK(std::fabs(fit_rate(constant, 0.2).slope) <= 1e-12);

  // geometric decay bends far below any power law on the log-log axes
  CHECK(fit_rate(geometric, 0.2).slope < -2.0);

  std::vector<TraceRecord> tiny(power.begin(), power.begin() + 5);
  CHECK_THROWS_AS(fit_rate(tiny, 0.2), std::invalid_argument);
}

TEST_CASE("trace records respect field invariants") {
  ProblemInstance inst = cocoercive_affine_instance(2);
  SolverReport rep = halpern_cocoercive_solve(inst.op, inst.u0, 1e-5);
  for (const TraceRecord& r : rep.trace) {
    CHECK(r.residual >= 0.0);
    CHECK(r.L > 0.0);
    if (r.lambda) {
      CHECK(*r.lambda > 0.0);
      CHECK(*r.lambda <= 0.5);
    }
  }
}
