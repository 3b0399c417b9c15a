// Command-line harness. Talks to the solver library exclusively through the
// C interface in mincl.h.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mincl.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;

int fail(const char* what) {
  std::fprintf(stderr, "error: %s: %s\n", what, mincl_last_error());
  return kExitUsage;
}

int run_solve(const std::string& problem_path, const std::string& algorithm, double eps, double l0,
              double a0, double eta, std::int64_t max_iters, const std::string& trace_path) {
  mincl_problem* problem = nullptr;
  if (mincl_problem_load(problem_path.c_str(), &problem) != MINCL_OK) return fail("load problem");

  mincl_run_config config;
  mincl_run_config_init(&config);
  config.algorithm = algorithm.c_str();
  config.eps = eps;
  config.l0 = l0;
  config.a0 = a0;
  config.eta = eta;
  config.max_iters = max_iters;

  mincl_report* report = nullptr;
  if (mincl_solve(problem, &config, &report) != MINCL_OK) {
    mincl_problem_free(problem);
    return fail("solve");
  }

  bool converged = mincl_report_converged(report) != 0;
  std::printf("algorithm:   %s\n", algorithm.c_str());
  std::printf("operator:    %s on %s (dim %d)\n", mincl_problem_operator_tag(problem),
              mincl_problem_set_tag(problem), mincl_problem_dimension(problem));
  std::printf("seed:        %" PRIu64 "\n", config.seed);
  std::printf("converged:   %s\n", converged ? "yes" : "no");
  std::printf("residual:    %.17g (eps %.17g)\n", mincl_report_residual(report), eps);
  std::printf("iterations:  %" PRId64 "\n", mincl_report_iterations(report));
  std::printf("f_evals:     %" PRId64 "\n", mincl_report_f_evals(report));
  std::printf("projections: %" PRId64 "\n", mincl_report_projections(report));

  int dim = mincl_report_dimension(report);
  std::vector<double> point(static_cast<size_t>(dim));
  if (mincl_report_final_point(report, point.data(), dim) == MINCL_OK) {
    std::printf("final_point: [");
    for (int i = 0; i < dim; ++i) std::printf("%s%.17g", i ? ", " : "", point[i]);
    std::printf("]\n");
  }
  if (mincl_report_companion_point(report, point.data(), dim) == MINCL_OK) {
    std::printf("companion:   [");
    for (int i = 0; i < dim; ++i) std::printf("%s%.17g", i ? ", " : "", point[i]);
    std::printf("]\n");
  }

  int rc = kExitOk;
  if (!trace_path.empty() && mincl_report_write_trace(report, trace_path.c_str()) != MINCL_OK) {
    rc = fail("write trace");
  }
  if (rc == kExitOk && !converged) rc = kExitNotConverged;

  mincl_report_free(report);
  mincl_problem_free(problem);
  return rc;
}

int run_rate(const std::string& trace_path, double burn_in) {
  double slope = 0.0;
  double r2 = 0.0;
  if (mincl_fit_rate(trace_path.c_str(), burn_in, &slope, &r2) != MINCL_OK) return fail("fit rate");
  std::printf("slope:     %.17g\n", slope);
  std::printf("r_squared: %.17g\n", r2);
  return kExitOk;
}

void verify_line(const char* criterion, std::int32_t passed, const char* detail, void*) {
  std::printf("%s %s: %s\n", passed ? "PASS" : "FAIL", criterion, detail);
  std::fflush(stdout);
}

int run_verify(const std::string& suite) {
  std::int32_t failures = 0;
  if (mincl_verify(suite.c_str(), verify_line, nullptr, &failures) != MINCL_OK) {
    return fail("verify");
  }
  std::printf("%s: %d failure(s)\n", suite.c_str(), failures);
  return failures == 0 ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers for monotone inclusion and variational inequality problems"};
  app.require_subcommand(1);

  std::string problem_path, algorithm, trace_path, suite;
  double eps = 1e-6, l0 = 0.0, a0 = 0.0, eta = 0.0;
  std::int64_t max_iters = 0;

  CLI::App* solve = app.add_subcommand("solve", "Run a solver on a JSON problem file");
  solve->add_option("--problem", problem_path, "problem file (JSON)")->required();
  solve->add_option("--algorithm", algorithm,
                    "halpern-cocoercive | halpern-constrained | halpern-constrained-simple | "
                    "halpern-lipschitz | halpern-lipschitz-scaled | eg | restart")
      ->required();
  solve->add_option("--eps", eps, "target accuracy")->required();
  solve->add_option("--l0", l0, "initial Lipschitz estimate (halpern-cocoercive family)");
  solve->add_option("--a0", a0, "initial step size (eg)");
  solve->add_option("--eta", eta, "resolvent scaling (halpern-lipschitz-scaled)");
  solve->add_option("--max-iters", max_iters, "outer iteration cap");
  solve->add_option("--trace", trace_path, "write per-iteration CSV here");

  CLI::App* rate = app.add_subcommand("rate", "Fit log(residual) vs log(k) on a trace CSV");
  rate->add_option("--trace", trace_path, "trace CSV path")->required();

  CLI::App* verify = app.add_subcommand("verify", "Run the verification battery");
  verify->add_option("--suite", suite, "'acceptance' or a single criterion name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  if (solve->parsed()) {
    return run_solve(problem_path, algorithm, eps, l0, a0, eta, max_iters, trace_path);
  }
  if (rate->parsed()) return run_rate(trace_path, 0.2);
  return run_verify(suite);
}
