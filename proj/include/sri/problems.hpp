#pragma once

#include "sri/analysis.hpp"
#include "sri/noise.hpp"
#include "sri/schedule.hpp"
#include "sri/set_valued_map.hpp"

#include <map>
#include <string>
#include <vector>

namespace sri {

struct ProblemSpec {
  std::string id;
  SetValuedMap map;
  AttractorSpec attractor;
  StepSchedule schedule;
  NoiseModel noise;
  double L;  // Lipschitz value for K0 = e^{L T_u}
  std::map<std::string, std::string> notes;  // derivation of each stored constant
  std::vector<Point> growth_grid;            // samples growth_check is documented on

  int dim() const { return map.dim(); }
};

/// F(x) = Ball(-x, eps) in R^dim, A = Ball(0, eps).
ProblemSpec make_biased_linear(double eps = 0.1, int dim = 1);

/// F(x) = {-sign(x)}, F(x) = [-1, 1] for |x| <= 1e-12; A = {0}.
ProblemSpec make_sign_subgradient();

/// F(x) = {f(x)} with f(x) = -x on [-1,1], x - 2 for x > 1, x + 2 for x < -1.
ProblemSpec make_local_basin();

std::vector<ProblemSpec> list_problems();

/// Catalog lookup; dim and eps apply to biased_linear only.
ProblemSpec make_problem(const std::string& id, int dim = 1, double eps = 0.1);

}  // namespace sri
