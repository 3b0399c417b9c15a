#include "mincl.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "mincl/acceptance.hpp"
#include "mincl/problem.hpp"
#include "mincl/trace_io.hpp"

struct mincl_problem {
  mincl::ProblemInstance instance;
};

struct mincl_report {
  mincl::SolverReport report;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

mincl_status to_status(const std::exception& e, mincl_status fallback) {
  set_error(e.what());
  return fallback;
}

template <typename Fn>
mincl_status guarded(mincl_status fallback, Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const std::invalid_argument& e) {
    return to_status(e, MINCL_ERR_INVALID_ARGUMENT);
  } catch (const std::bad_alloc& e) {
    return to_status(e, MINCL_ERR_INTERNAL);
  } catch (const std::exception& e) {
    return to_status(e, fallback);
  } catch (...) {
    set_error("unknown error");
    return MINCL_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* mincl_version(void) { return "1.0.0"; }

const char* mincl_status_name(mincl_status status) {
  switch (status) {
    case MINCL_OK: return "ok";
    case MINCL_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case MINCL_ERR_PARSE: return "parse-error";
    case MINCL_ERR_IO: return "io-error";
    case MINCL_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* mincl_last_error(void) { return g_last_error.c_str(); }

mincl_status mincl_problem_load(const char* path, mincl_problem** out) {
  if (path == nullptr || out == nullptr) {
    set_error("null argument");
    return MINCL_ERR_INVALID_ARGUMENT;
  }
  return guarded(MINCL_ERR_PARSE, [&]() {
    auto* p = new mincl_problem{mincl::parse_problem(path)};
    *out = p;
    return MINCL_OK;
  });
}

mincl_status mincl_problem_parse(const char* json_text, mincl_problem** out) {
  if (json_text == nullptr || out == nullptr) {
    set_error("null argument");
    return MINCL_ERR_INVALID_ARGUMENT;
  }
  return guarded(MINCL_ERR_PARSE, [&]() {
    auto* p = new mincl_problem{mincl::parse_problem_text(json_text)};
    *out = p;
    return MINCL_OK;
  });
}

void mincl_problem_free(mincl_problem* problem) { delete problem; }

int32_t mincl_problem_dimension(const mincl_problem* problem) {
  return problem == nullptr ? -1 : problem->instance.op.dim;
}

const char* mincl_problem_operator_tag(const mincl_problem* problem) {
  return problem == nullptr ? "" : problem->instance.operator_tag.c_str();
}

const char* mincl_problem_set_tag(const mincl_problem* problem) {
  return problem == nullptr ? "" : problem->instance.set_tag.c_str();
}

void mincl_run_config_init(mincl_run_config* config) {
  if (config == nullptr) return;
  config->algorithm = "halpern-lipschitz";
  config->eps = 1e-6;
  config->l0 = 0.0;
  config->a0 = 0.0;
  config->eta = 0.0;
  config->max_iters = 0;
  config->seed = 0;
}

mincl_status mincl_solve(const mincl_problem* problem, const mincl_run_config* config,
                         mincl_report** out) {
  if (problem == nullptr || config == nullptr || config->algorithm == nullptr || out == nullptr) {
    set_error("null argument");
    return MINCL_ERR_INVALID_ARGUMENT;
  }
  return guarded(MINCL_ERR_INTERNAL, [&]() {
    mincl::RunConfig rc;
    rc.algorithm = mincl::algorithm_from_name(config->algorithm);
    rc.eps = config->eps;
    if (config->l0 > 0.0) rc.l0 = config->l0;
    if (config->a0 > 0.0) rc.a0 = config->a0;
    if (config->eta > 0.0) rc.eta = config->eta;
    if (config->max_iters > 0) rc.max_iters = config->max_iters;
    rc.seed = config->seed;
    auto* r = new mincl_report{mincl::run(problem->instance, rc)};
    *out = r;
    return MINCL_OK;
  });
}

void mincl_report_free(mincl_report* report) { delete report; }

int32_t mincl_report_converged(const mincl_report* report) {
  return (report != nullptr && report->report.converged) ? 1 : 0;
}

double mincl_report_residual(const mincl_report* report) {
  return report == nullptr ? -1.0 : report->report.residual;
}

int64_t mincl_report_f_evals(const mincl_report* report) {
  return report == nullptr ? -1 : report->report.counters.f_evals;
}

int64_t mincl_report_projections(const mincl_report* report) {
  return report == nullptr ? -1 : report->report.counters.projections;
}

int64_t mincl_report_iterations(const mincl_report* report) {
  if (report == nullptr || report->report.trace.empty()) return 0;
  return report->report.trace.back().k;
}

int32_t mincl_report_dimension(const mincl_report* report) {
  return report == nullptr ? -1 : static_cast<int32_t>(report->report.final_point.size());
}

namespace {

mincl_status copy_point(const mincl::Vec& v, double* buffer, int32_t length) {
  if (buffer == nullptr || length < static_cast<int32_t>(v.size())) {
    set_error("buffer too small");
    return MINCL_ERR_INVALID_ARGUMENT;
  }
  std::memcpy(buffer, v.data(), v.size() * sizeof(double));
  return MINCL_OK;
}

}  // namespace

mincl_status mincl_report_final_point(const mincl_report* report, double* buffer, int32_t length) {
  if (report == nullptr) {
    set_error("null report");
    return MINCL_ERR_INVALID_ARGUMENT;
  }
  return copy_point(report->report.final_point, buffer, length);
}

mincl_status mincl_report_companion_point(const mincl_report* report, double* buffer,
                                          int32_t length) {
  if (report == nullptr || !report->report.companion_point) {
    set_error("no companion point");
    return MINCL_ERR_INVALID_ARGUMENT;
  }
  return copy_point(*report->report.companion_point, buffer, length);
}

mincl_status mincl_report_write_trace(const mincl_report* report, const char* csv_path) {
  if (report == nullptr || csv_path == nullptr) {
    set_error("null argument");
    return MINCL_ERR_INVALID_ARGUMENT;
  }
  return guarded(MINCL_ERR_IO, [&]() {
    mincl::emit_trace(report->report, csv_path);
    return MINCL_OK;
  });
}

mincl_status mincl_fit_rate(const char* csv_path, double burn_in, double* slope,
                            double* r_squared) {
  if (csv_path == nullptr || slope == nullptr || r_squared == nullptr) {
    set_error("null argument");
    return MINCL_ERR_INVALID_ARGUMENT;
  }
  return guarded(MINCL_ERR_IO, [&]() {
    std::vector<mincl::TraceRecord> trace = mincl::read_trace_csv(csv_path);
    mincl::RateFit fit = mincl::fit_rate(trace, burn_in);
    *slope = fit.slope;
    *r_squared = fit.r_squared;
    return MINCL_OK;
  });
}

mincl_status mincl_verify(const char* suite, mincl_verify_callback callback, void* user_data,
                          int32_t* failures) {
  if (suite == nullptr || failures == nullptr) {
    set_error("null argument");
    return MINCL_ERR_INVALID_ARGUMENT;
  }
  return guarded(MINCL_ERR_INTERNAL, [&]() {
    std::vector<mincl::CriterionResult> results = mincl::run_acceptance(suite);
    int32_t failed = 0;
    for (const mincl::CriterionResult& r : results) {
      if (!r.passed) ++failed;
      if (callback != nullptr) callback(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user_data);
    }
    *failures = failed;
    return MINCL_OK;
  });
}

}  // extern "C"
