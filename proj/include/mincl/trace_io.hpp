#ifndef MINCL_TRACE_IO_HPP
#define MINCL_TRACE_IO_HPP

#include <string>
#include <vector>

#include "mincl/report.hpp"

namespace mincl {

/// Writes `k,residual,lambda,L_k,potential,f_evals` plus one row per record.
/// Values are printed with 17 significant digits so doubles round-trip and
/// the byte output is deterministic for a fixed report. Absent fields are
/// empty cells.
void emit_trace(const SolverReport& report, const std::string& path);

std::string trace_to_csv(const std::vector<TraceRecord>& trace);

std::vector<TraceRecord> read_trace_csv(const std::string& path);
std::vector<TraceRecord> parse_trace_csv(const std::string& text);

struct RateFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of log(residual) against log(k) after dropping the
/// first `burn_in` fraction of records. Needs at least 10 usable records
/// (k >= 1, residual > 0) after the cut.
RateFit fit_rate(const std::vector<TraceRecord>& trace, double burn_in = 0.2);

}  // namespace mincl

#endif
