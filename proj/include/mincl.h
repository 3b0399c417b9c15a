/* C interface to the monotone-inclusion solver library. All functions are
 * thread-compatible: handles must not be shared across threads without
 * external synchronization, but distinct handles are independent. Error
 * details for the most recent failing call on the current thread are
 * available via mincl_last_error(). */

#ifndef MINCL_H
#define MINCL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mincl_status {
  MINCL_OK = 0,
  MINCL_ERR_INVALID_ARGUMENT = 1,
  MINCL_ERR_PARSE = 2,
  MINCL_ERR_IO = 3,
  MINCL_ERR_INTERNAL = 4
} mincl_status;

typedef struct mincl_problem mincl_problem;
typedef struct mincl_report mincl_report;

const char* mincl_version(void);
const char* mincl_status_name(mincl_status status);

/* Message for the last error on this thread; empty string if none. */
const char* mincl_last_error(void);

/* ---- problems ---- */

mincl_status mincl_problem_load(const char* path, mincl_problem** out);
mincl_status mincl_problem_parse(const char* json_text, mincl_problem** out);
void mincl_problem_free(mincl_problem* problem);
int32_t mincl_problem_dimension(const mincl_problem* problem);
/* Returns "affine", "saddle-quadratic", ... / "whole-space", "box", ... */
const char* mincl_problem_operator_tag(const mincl_problem* problem);
const char* mincl_problem_set_tag(const mincl_problem* problem);

/* ---- solving ---- */

typedef struct mincl_run_config {
  /* one of: halpern-cocoercive, halpern-constrained, halpern-constrained-simple,
   * halpern-lipschitz, halpern-lipschitz-scaled, eg, restart */
  const char* algorithm;
  double eps;
  double l0;        /* <= 0: default (1.0); only the halpern-cocoercive family */
  double a0;        /* <= 0: default (1/mu); only eg */
  double eta;       /* <= 0: unset; required by halpern-lipschitz-scaled */
  int64_t max_iters;  /* <= 0: solver default */
  uint64_t seed;      /* recorded for reproducibility of generated inputs */
} mincl_run_config;

void mincl_run_config_init(mincl_run_config* config);

mincl_status mincl_solve(const mincl_problem* problem, const mincl_run_config* config,
                         mincl_report** out);

/* ---- reports ---- */

void mincl_report_free(mincl_report* report);
int32_t mincl_report_converged(const mincl_report* report);
double mincl_report_residual(const mincl_report* report);
int64_t mincl_report_f_evals(const mincl_report* report);
int64_t mincl_report_projections(const mincl_report* report);
int64_t mincl_report_iterations(const mincl_report* report);
int32_t mincl_report_dimension(const mincl_report* report);
mincl_status mincl_report_final_point(const mincl_report* report, double* buffer, int32_t length);
/* MINCL_ERR_INVALID_ARGUMENT when the solver returned no companion point. */
mincl_status mincl_report_companion_point(const mincl_report* report, double* buffer,
                                          int32_t length);
mincl_status mincl_report_write_trace(const mincl_report* report, const char* csv_path);

/* ---- trace files ---- */

mincl_status mincl_fit_rate(const char* csv_path, double burn_in, double* slope,
                            double* r_squared);

/* ---- verification battery ---- */

typedef void (*mincl_verify_callback)(const char* criterion, int32_t passed, const char* detail,
                                      void* user_data);

/* Runs the named suite ("acceptance" or a single criterion name); invokes the
 * callback once per criterion and stores the number of failures. */
mincl_status mincl_verify(const char* suite, mincl_verify_callback callback, void* user_data,
                          int32_t* failures);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MINCL_H */
