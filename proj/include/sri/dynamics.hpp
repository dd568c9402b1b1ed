#pragma once

#include "sri/selection.hpp"
#include "sri/set_valued_map.hpp"

#include <cstdint>
#include <vector>

namespace sri {

/// Sampled path: times strictly increasing from 0, one point per time.
struct PathGrid {
  std::vector<double> times;
  std::vector<Point> points;

  void validate() const;
  double horizon() const { return times.back(); }
  /// Linear interpolation at t in [0, horizon()].
  Point at(double t) const;
};

/// Finite sample of a solution funnel; every path shares one time grid.
struct Funnel {
  std::vector<PathGrid> paths;
  double horizon = 0.0;

  void validate() const;
};

/// Piecewise-constant control: values[i] on [breakpoints[i], breakpoints[i+1]).
class ControlSignal {
 public:
  ControlSignal(std::vector<double> breakpoints, std::vector<Parameter> values);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Parameter>& values() const { return values_; }
  const Parameter& at(double t) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<Parameter> values_;
};

/// Uniform grid 0, h, 2h, ..., with the last step shortened to end at T.
std::vector<double> uniform_grid(double T, double h);

/// Explicit Euler path x_{k+1} = x_k + h_k v_k, v_k in F(x_k) from the
/// selector, on uniform_grid(T, h). Throws NumericalError on a non-finite state.
PathGrid euler_inclusion_path(const SetValuedMap& F, const Point& x0, double T, double h,
                              const Selector& selector, std::uint64_t seed);

/// Explicit Euler path of dx/dt = parametrized_selection(F, x, u(t)) on
/// uniform_grid(T, min(h, T)); each step uses the control at its left end.
PathGrid ode_controlled_path(const SetValuedMap& F, const Point& x0, const ControlSignal& u,
                             double T, double h, const SelectionOptions& opt = {});

/// Euler paths of F from every point of Y0: per initial point, path 0 uses the
/// Steiner selection, paths 1 and 2 the extremes toward +e1 and -e1, and the
/// rest fresh random support directions (seed substream per path). Bitwise
/// duplicate paths from the same initial point are kept once.
Funnel sample_funnel(const SetValuedMap& F, const std::vector<Point>& Y0, double T, double h,
                     int n_paths_per_x0, std::uint64_t seed,
                     const SteinerOptions& steiner = {});

/// min over funnel paths of max over the funnel grid of |p(t) - q(t)|, with p
/// resampled linearly. An upper estimate of the distance to the true funnel.
double path_funnel_distance(const PathGrid& p, const Funnel& f);

/// (r + K T) e^{K T}.
double gronwall_bound(double r, double K, double T);

struct RefinementLevel {
  int level;
  double distance;  // max over sampled S^(l) paths of the distance to the S funnel
};

struct RefinementReport {
  std::vector<RefinementLevel> levels;
  bool nonincreasing = true;
  bool strictly_decreasing = true;
};

/// For each l, funnels of dilate_map(F, l) are sampled from Y0 and compared
/// path by path with the funnel of F itself.
RefinementReport funnel_refinement_check(const SetValuedMap& F, const std::vector<int>& levels,
                                         const std::vector<Point>& Y0, double T, double h,
                                         std::uint64_t seed, int n_paths_per_x0 = 6);

}  // namespace sri
