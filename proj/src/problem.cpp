#include "mincl/problem.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mincl/gap.hpp"
#include "mincl/halpern.hpp"
#include "mincl/inexact.hpp"
#include "mincl/resolvent.hpp"
#include "mincl/trace_io.hpp"

namespace mincl {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& field, const std::string& why) {
  throw std::runtime_error("problem file: field '" + field + "': " + why);
}

const json& need(const json& j, const std::string& field, const std::string& ctx) {
  if (!j.is_object() || !j.contains(field)) schema_error(ctx + field, "missing");
  return j.at(field);
}

Vec parse_vec(const json& j, const std::string& field) {
  if (!j.is_array()) schema_error(field, "expected an array of numbers");
  Vec v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) schema_error(field, "expected an array of numbers");
    v.push_back(x.get<double>());
  }
  ensure_finite(v, field.c_str());
  return v;
}

DenseMatrix parse_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) schema_error(field, "expected a non-empty array of rows");
  int rows = static_cast<int>(j.size());
  int cols = -1;
  DenseMatrix m;
  for (int i = 0; i < rows; ++i) {
    Vec row = parse_vec(j.at(i), field + "[" + std::to_string(i) + "]");
    if (cols < 0) {
      cols = static_cast<int>(row.size());
      m = DenseMatrix(rows, cols);
    } else if (static_cast<int>(row.size()) != cols) {
      schema_error(field, "ragged rows");
    }
    for (int c = 0; c < cols; ++c) m.at(i, c) = row[c];
  }
  return m;
}

struct BuiltOperator {
  Operator op;
  std::string tag;
  std::optional<DenseMatrix> matrix;
  std::optional<Vec> offset;
};

BuiltOperator build_operator(const json& j, const std::string& ctx);

BuiltOperator build_affine(const json& j, const std::string& ctx) {
  DenseMatrix a = parse_matrix(need(j, "A", ctx), ctx + "A");
  if (!a.square()) schema_error(ctx + "A", "must be square");
  Vec b(a.rows, 0.0);
  if (j.contains("b")) {
    b = parse_vec(j.at("b"), ctx + "b");
    if (static_cast<int>(b.size()) != a.rows) schema_error(ctx + "b", "dimension mismatch with A");
  }
  BuiltOperator out;
  out.op = affine_operator(a, b);
  out.tag = "affine";
  out.matrix = std::move(a);
  out.offset = std::move(b);
  return out;
}

BuiltOperator build_saddle_quadratic(const json& j, const std::string& ctx) {
  DenseMatrix q = parse_matrix(need(j, "Q", ctx), ctx + "Q");
  DenseMatrix r = parse_matrix(need(j, "R", ctx), ctx + "R");
  if (!q.square()) schema_error(ctx + "Q", "must be square");
  if (!r.square()) schema_error(ctx + "R", "must be square");
  int nx = q.rows;
  int ny = r.rows;
  DenseMatrix c;
  if (j.contains("C")) {
    c = parse_matrix(j.at("C"), ctx + "C");
    if (c.rows != nx || c.cols != ny) schema_error(ctx + "C", "must be dim(x) by dim(y)");
  } else {
    if (nx != ny) schema_error(ctx + "C", "required when the blocks differ in size");
    c = DenseMatrix::identity(nx);
  }

  // Stack into the block matrix [[Q, C], [-C^T, R]] for metadata and exact
  // resolvents; evaluation goes through the saddle construction.
  DenseMatrix stacked(nx + ny, nx + ny);
  for (int i = 0; i < nx; ++i)
    for (int k = 0; k < nx; ++k) stacked.at(i, k) = q.at(i, k);
  for (int i = 0; i < nx; ++i)
    for (int k = 0; k < ny; ++k) stacked.at(i, nx + k) = c.at(i, k);
  for (int i = 0; i < ny; ++i)
    for (int k = 0; k < nx; ++k) stacked.at(nx + i, k) = -c.at(k, i);
  for (int i = 0; i < ny; ++i)
    for (int k = 0; k < ny; ++k) stacked.at(nx + i, nx + k) = r.at(i, k);
  double big_l = largest_singular_value(stacked);

  auto qm = std::make_shared<DenseMatrix>(q);
  auto rm = std::make_shared<DenseMatrix>(r);
  auto cm = std::make_shared<DenseMatrix>(c);
  auto ct = std::make_shared<DenseMatrix>(transpose(c));
  auto grad_x = [qm, cm](const Vec& x, const Vec& y) { return add(matvec(*qm, x), matvec(*cm, y)); };
  auto grad_y = [rm, ct](const Vec& x, const Vec& y) {
    return sub(matvec(*ct, x), matvec(*rm, y));
  };

  BuiltOperator out;
  out.op = saddle_operator(grad_x, grad_y, nx, ny,
                           big_l > 0.0 ? std::optional<double>(big_l) : std::nullopt,
                           "saddle-quadratic");
  DenseMatrix sym = mat_scaled(mat_add(stacked, transpose(stacked)), 0.5);
  out.op.metadata.strong_mono_mu = std::max(0.0, smallest_eigenvalue_symmetric(sym));
  out.tag = "saddle-quadratic";
  out.matrix = std::move(stacked);
  out.offset = Vec(nx + ny, 0.0);
  return out;
}

BuiltOperator build_regularized(const json& j, const std::string& ctx) {
  BuiltOperator inner = build_operator(need(j, "inner", ctx), ctx + "inner.");
  const json& mu_j = need(j, "mu", ctx);
  if (!mu_j.is_number()) schema_error(ctx + "mu", "expected a number");
  double mu = mu_j.get<double>();
  if (mu <= 0.0) schema_error(ctx + "mu", "must be positive");
  Vec anchor(inner.op.dim, 0.0);
  if (j.contains("anchor")) {
    anchor = parse_vec(j.at("anchor"), ctx + "anchor");
    if (static_cast<int>(anchor.size()) != inner.op.dim) {
      schema_error(ctx + "anchor", "dimension mismatch with inner operator");
    }
  }
  BuiltOperator out;
  out.op = regularize(inner.op, mu, anchor);
  out.tag = "regularized";
  if (inner.matrix) {
    out.matrix = mat_add(*inner.matrix, mat_scaled(DenseMatrix::identity(inner.op.dim), mu));
    out.offset = sub(*inner.offset, scaled(anchor, mu));
  }
  return out;
}

BuiltOperator build_zero(const json& j, const std::string& ctx) {
  const json& dim_j = need(j, "dim", ctx);
  if (!dim_j.is_number_integer() || dim_j.get<int>() < 1) {
    schema_error(ctx + "dim", "expected a positive integer");
  }
  int dim = dim_j.get<int>();
  BuiltOperator out;
  out.op.dim = dim;
  out.op.description = "zero";
  out.op.evaluate = [dim](const Vec&) { return Vec(dim, 0.0); };
  // The zero operator satisfies any Lipschitz/cocoercivity bound.
  out.op.metadata.lipschitz_L = 1.0;
  out.op.metadata.cocoercivity_gamma = 1.0;
  out.op.metadata.strong_mono_mu = 0.0;
  out.tag = "zero";
  out.matrix = DenseMatrix(dim, dim);
  out.offset = Vec(dim, 0.0);
  return out;
}

BuiltOperator build_operator(const json& j, const std::string& ctx) {
  std::string type = need(j, "type", ctx).get<std::string>();
  if (type == "affine") return build_affine(j, ctx);
  if (type == "saddle-quadratic") return build_saddle_quadratic(j, ctx);
  if (type == "regularized") return build_regularized(j, ctx);
  if (type == "zero") return build_zero(j, ctx);
  schema_error(ctx + "type", "unknown operator type '" + type + "'");
}

FeasibleSet build_set(const json& j, int dim, std::string* tag) {
  std::string type = need(j, "type", "set.").get<std::string>();
  *tag = type;
  if (type == "whole-space") return make_whole_space(dim);
  if (type == "box") {
    Vec lower = parse_vec(need(j, "lower", "set."), "set.lower");
    Vec upper = parse_vec(need(j, "upper", "set."), "set.upper");
    if (static_cast<int>(lower.size()) != dim) schema_error("set.lower", "dimension mismatch");
    return make_box_set(std::move(lower), std::move(upper));
  }
  if (type == "ball") {
    Vec center = parse_vec(need(j, "center", "set."), "set.center");
    if (static_cast<int>(center.size()) != dim) schema_error("set.center", "dimension mismatch");
    const json& rj = need(j, "radius", "set.");
    if (!rj.is_number() || rj.get<double>() <= 0.0) schema_error("set.radius", "must be a positive number");
    return make_ball_set(std::move(center), rj.get<double>());
  }
  if (type == "simplex") return make_simplex_set(dim);
  schema_error("set.type", "unknown set type '" + type + "'");
}

ProblemInstance build_instance(const json& root) {
  if (!root.is_object()) throw std::runtime_error("problem file: top level must be an object");
  ProblemInstance inst;
  BuiltOperator built = build_operator(need(root, "operator", ""), "operator.");
  inst.op = std::move(built.op);
  inst.operator_tag = built.tag;
  inst.affine_matrix = std::move(built.matrix);
  inst.affine_offset = std::move(built.offset);

  inst.u0 = parse_vec(need(root, "u0", ""), "u0");
  if (static_cast<int>(inst.u0.size()) != inst.op.dim) schema_error("u0", "dimension mismatch with operator");

  inst.set = build_set(need(root, "set", ""), inst.op.dim, &inst.set_tag);

  if (root.contains("overrides")) {
    const json& ov = root.at("overrides");
    if (!ov.is_object()) schema_error("overrides", "expected an object");
    if (ov.contains("L")) inst.op.metadata.lipschitz_L = ov.at("L").get<double>();
    if (ov.contains("mu")) inst.op.metadata.strong_mono_mu = ov.at("mu").get<double>();
    if (ov.contains("gamma")) inst.op.metadata.cocoercivity_gamma = ov.at("gamma").get<double>();
    try {
      inst.op.metadata.validate();
    } catch (const std::exception& e) {
      schema_error("overrides", e.what());
    }
  }

  if (!inst.set.contains(inst.u0, 1e-9 * (1.0 + norm(inst.u0)))) {
    schema_error("u0", "infeasible for the given set");
  }

  // Purity spot check: the oracle contract is deterministic evaluation.
  Vec e1 = inst.op.evaluate(inst.u0);
  Vec e2 = inst.op.evaluate(inst.u0);
  if (e1 != e2) schema_error("operator", "evaluation is not deterministic");

  if (root.contains("reference_solution")) {
    Vec ref = parse_vec(root.at("reference_solution"), "reference_solution");
    if (static_cast<int>(ref.size()) != inst.op.dim) {
      schema_error("reference_solution", "dimension mismatch with operator");
    }
    double gap = restricted_gap(inst.op, inst.set, ref, 1.0);
    if (gap > 1e-8) {
      schema_error("reference_solution",
                   "restricted gap " + std::to_string(gap) + " exceeds 1e-8");
    }
    inst.reference_solution = std::move(ref);
  }
  return inst;
}

}  // namespace

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "halpern-cocoercive") return Algorithm::HalpernCocoercive;
  if (name == "halpern-constrained") return Algorithm::HalpernConstrained;
  if (name == "halpern-constrained-simple") return Algorithm::HalpernConstrainedSimple;
  if (name == "halpern-lipschitz") return Algorithm::HalpernLipschitz;
  if (name == "halpern-lipschitz-scaled") return Algorithm::HalpernLipschitzScaled;
  if (name == "eg") return Algorithm::Eg;
  if (name == "restart") return Algorithm::Restart;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::HalpernCocoercive: return "halpern-cocoercive";
    case Algorithm::HalpernConstrained: return "halpern-constrained";
    case Algorithm::HalpernConstrainedSimple: return "halpern-constrained-simple";
    case Algorithm::HalpernLipschitz: return "halpern-lipschitz";
    case Algorithm::HalpernLipschitzScaled: return "halpern-lipschitz-scaled";
    case Algorithm::Eg: return "eg";
    case Algorithm::Restart: return "restart";
  }
  return "?";
}

void RunConfig::validate() const {
  if (eps <= 0.0) throw std::invalid_argument("config: eps must be positive");
  bool doubling_family = algorithm == Algorithm::HalpernCocoercive ||
                         algorithm == Algorithm::HalpernConstrained ||
                         algorithm == Algorithm::HalpernConstrainedSimple;
  if (l0 && !doubling_family) {
    throw std::invalid_argument("config: l0 only applies to the halpern-cocoercive family");
  }
  if (a0 && algorithm != Algorithm::Eg) throw std::invalid_argument("config: a0 only applies to eg");
  if (eta && algorithm != Algorithm::HalpernLipschitzScaled) {
    throw std::invalid_argument("config: eta only applies to halpern-lipschitz-scaled");
  }
  if (algorithm == Algorithm::HalpernLipschitzScaled && !eta) {
    throw std::invalid_argument("config: halpern-lipschitz-scaled requires eta");
  }
  if (l0 && *l0 <= 0.0) throw std::invalid_argument("config: l0 must be positive");
  if (a0 && *a0 <= 0.0) throw std::invalid_argument("config: a0 must be positive");
  if (eta && *eta <= 0.0) throw std::invalid_argument("config: eta must be positive");
}

ProblemInstance parse_problem(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("problem file: cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_problem_text(buf.str());
}

ProblemInstance parse_problem_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("problem file: invalid JSON: ") + e.what());
  }
  try {
    return build_instance(root);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("problem file: ") + e.what());
  }
}

SolverReport run(const ProblemInstance& instance, const RunConfig& config) {
  config.validate();
  const OperatorMetadata& md = instance.op.metadata;
  std::optional<double> dist_hint;
  if (instance.reference_solution) dist_hint = dist(instance.u0, *instance.reference_solution);

  SolverReport rep;
  switch (config.algorithm) {
    case Algorithm::HalpernCocoercive: {
      if (!md.cocoercivity_gamma || *md.cocoercivity_gamma <= 0.0) {
        throw std::invalid_argument(
            "run: halpern-cocoercive needs a known cocoercivity constant (metadata or override)");
      }
      if (!instance.set.whole_space) {
        throw std::invalid_argument(
            "run: halpern-cocoercive is unconstrained; use halpern-constrained for this set");
      }
      HalpernOptions opts;
      if (config.l0) opts.L0 = *config.l0;
      if (config.max_iters) opts.max_iters = *config.max_iters;
      opts.distance_hint = dist_hint;
      rep = halpern_cocoercive_solve(instance.op, instance.u0, config.eps, opts);
      break;
    }
    case Algorithm::HalpernConstrained:
    case Algorithm::HalpernConstrainedSimple: {
      if (!md.cocoercivity_gamma || *md.cocoercivity_gamma <= 0.0) {
        throw std::invalid_argument(
            "run: the constrained solver needs a known cocoercivity constant (metadata or override)");
      }
      HalpernOptions opts;
      if (config.l0) opts.L0 = *config.l0;
      if (config.max_iters) opts.max_iters = *config.max_iters;
      opts.distance_hint = dist_hint;
      rep = (config.algorithm == Algorithm::HalpernConstrained)
                ? halpern_constrained_solve(instance.op, instance.set, instance.u0, config.eps, opts)
                : halpern_constrained_simple_solve(instance.op, instance.set, instance.u0,
                                                   config.eps, opts);
      break;
    }
    case Algorithm::HalpernLipschitz:
    case Algorithm::HalpernLipschitzScaled: {
      InexactOptions opts;
      if (config.max_iters) opts.max_iters = *config.max_iters;
      opts.distance_hint = dist_hint;
      rep = (config.algorithm == Algorithm::HalpernLipschitz)
                ? halpern_lipschitz_solve(instance.op, instance.set, instance.u0, config.eps, opts)
                : scaled_resolvent_solve(instance.op, instance.set, instance.u0, config.eps,
                                         *config.eta, opts);
      break;
    }
    case Algorithm::Eg: {
      if (!md.strong_mono_mu || *md.strong_mono_mu <= 0.0) {
        throw std::invalid_argument(
            "run: eg needs a known strong-monotonicity modulus (metadata or override)");
      }
      EgOptions opts;
      opts.a0 = config.a0;
      if (config.max_iters) opts.max_iters = *config.max_iters;
      opts.distance_hint = dist_hint;
      rep = eg_solve(instance.op, instance.set, *md.strong_mono_mu, config.eps, instance.u0, opts);
      break;
    }
    case Algorithm::Restart: {
      InexactOptions opts;
      if (config.max_iters) opts.max_iters = *config.max_iters;
      opts.distance_hint = dist_hint;
      rep = restart_solve(instance.op, instance.set, instance.u0, config.eps, opts);
      break;
    }
  }

  if (!config.trace_path.empty()) emit_trace(rep, config.trace_path);
  return rep;
}

}  // namespace mincl
