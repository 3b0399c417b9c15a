#include "mincl/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mincl {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

std::string trace_to_csv(const std::vector<TraceRecord>& trace) {
  std::string out = "k,residual,lambda,L_k,potential,f_evals\n";
  for (const TraceRecord& r : trace) {
    out += std::to_string(r.k);
    out += ',';
    out += fmt17(r.residual);
    out += ',';
    if (r.lambda) out += fmt17(*r.lambda);
    out += ',';
    out += fmt17(r.L);
    out += ',';
    if (r.potential) out += fmt17(*r.potential);
    out += ',';
    out += std::to_string(r.f_evals);
    out += '\n';
  }
  return out;
}

void emit_trace(const SolverReport& report, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("emit_trace: cannot open " + path);
  f << trace_to_csv(report.trace);
  if (!f) throw std::runtime_error("emit_trace: write failed for " + path);
}

std::vector<TraceRecord> parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("parse_trace_csv: empty input");
  std::vector<TraceRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 6) throw std::runtime_error("parse_trace_csv: bad row: " + line);
    TraceRecord r;
    r.k = std::stoll(cells[0]);
    r.residual = std::stod(cells[1]);
    if (!cells[2].empty()) r.lambda = std::stod(cells[2]);
    r.L = std::stod(cells[3]);
    if (!cells[4].empty()) r.potential = std::stod(cells[4]);
    r.f_evals = std::stoll(cells[5]);
    out.push_back(r);
  }
  return out;
}

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_trace_csv: cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_trace_csv(buf.str());
}

RateFit fit_rate(const std::vector<TraceRecord>& trace, double burn_in) {
  if (burn_in < 0.0 || burn_in >= 1.0) throw std::invalid_argument("fit_rate: burn_in outside [0, 1)");
  size_t skip = static_cast<size_t>(burn_in * static_cast<double>(trace.size()));
  std::vector<double> xs, ys;
  for (size_t i = skip; i < trace.size(); ++i) {
    const TraceRecord& r = trace[i];
    if (r.k < 1 || !(r.residual > 0.0)) continue;
    xs.push_back(std::log(static_cast<double>(r.k)));
    ys.push_back(std::log(r.residual));
  }
  if (xs.size() < 10) {
    throw std::invalid_argument("fit_rate: need at least 10 post-burn-in records with positive residuals");
  }
  double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx;
    double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw std::invalid_argument("fit_rate: degenerate abscissa (all k equal)");
  RateFit fit;
  fit.slope = sxy / sxx;
  double ss_res = syy - fit.slope * sxy;
  fit.r_squared = (syy > 0.0) ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
  return fit;
}

}  // namespace mincl
