#ifndef MINCL_ACCEPTANCE_HPP
#define MINCL_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace mincl {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Names of the verification criteria, in execution order.
std::vector<std::string> acceptance_criteria();

/// Runs the verification battery. `suite` is "acceptance" (or "all", or
/// empty) for everything, or the name of a single criterion. Unknown names
/// are a hard error.
std::vector<CriterionResult> run_acceptance(const std::string& suite);

}  // namespace mincl

#endif
