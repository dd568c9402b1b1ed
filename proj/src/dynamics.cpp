#include "sri/dynamics.hpp"

#include "sri/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sri {

void PathGrid::validate() const {
  if (times.empty() || times.size() != points.size())
    throw GeometryError("PathGrid: times and points must be nonempty and of equal length");
  if (times.front() != 0.0) throw GeometryError("PathGrid: first time must be 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw GeometryError("PathGrid: times must increase strictly");
}

Point PathGrid::at(double t) const {
  if (!(t >= 0.0 && t <= times.back() * (1.0 + 1e-12))) {
    std::ostringstream os;
    os << "PathGrid: t = " << t << " outside [0, " << times.back() << "]";
    throw GeometryError(os.str());
  }
  auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.end()) return points.back();
  const auto k = static_cast<std::size_t>(std::distance(times.begin(), it)) - 1;
  const double w = (t - times[k]) / (times[k + 1] - times[k]);
  if (w == 0.0) return points[k];
  return (1.0 - w) * points[k] + w * points[k + 1];
}

void Funnel::validate() const {
  if (paths.empty()) throw GeometryError("Funnel: no paths");
  for (const auto& p : paths) {
    p.validate();
    if (p.times != paths.front().times) throw GeometryError("Funnel: paths must share one time grid");
  }
}

ControlSignal::ControlSignal(std::vector<double> breakpoints, std::vector<Parameter> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2 || values_.size() + 1 != breakpoints_.size())
    throw GeometryError("ControlSignal: need one value per interval");
  if (breakpoints_.front() != 0.0) throw GeometryError("ControlSignal: must start at 0");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] > breakpoints_[i - 1]))
      throw GeometryError("ControlSignal: breakpoints must increase strictly");
}

const Parameter& ControlSignal::at(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) throw GeometryError("ControlSignal: t before 0");
  auto k = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1;
  return values_[std::min(k, values_.size() - 1)];
}

std::vector<double> uniform_grid(double T, double h) {
  if (!(T > 0.0) || !std::isfinite(T)) throw GeometryError("uniform_grid: T must be positive");
  if (!(h > 0.0 && h <= T)) throw GeometryError("uniform_grid: need 0 < h <= T");
  const auto n = static_cast<long>(std::ceil(T / h * (1.0 - 1e-12)));
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = static_cast<double>(k) * h;
  g.back() = T;
  return g;
}

namespace {

void require_finite(const Point& x, double t, const char* where) {
  if (!x.allFinite()) {
    std::ostringstream os;
    os << where << ": non-finite state at t = " << t;
    throw NumericalError(os.str());
  }
}

}  // namespace

PathGrid euler_inclusion_path(const SetValuedMap& F, const Point& x0, double T, double h,
                              const Selector& selector, std::uint64_t seed) {
  if (x0.size() != F.dim()) throw GeometryError("euler_inclusion_path: x0 has wrong dimension");
  PathGrid p;
  p.times = uniform_grid(T, h);
  p.points.reserve(p.times.size());
  p.points.push_back(x0);
  Rng rng(seed);
  for (std::size_t k = 0; k + 1 < p.times.size(); ++k) {
    const Point& x = p.points.back();
    const Point v = selector.select(F(x), rng);
    Point next = x + (p.times[k + 1] - p.times[k]) * v;
    require_finite(next, p.times[k + 1], "euler_inclusion_path");
    p.points.push_back(std::move(next));
  }
  return p;
}

PathGrid ode_controlled_path(const SetValuedMap& F, const Point& x0, const ControlSignal& u,
                             double T, double h, const SelectionOptions& opt) {
  if (x0.size() != F.dim()) throw GeometryError("ode_controlled_path: x0 has wrong dimension");
  if (!(h > 0.0)) throw GeometryError("ode_controlled_path: h must be positive");
  const auto& bp = u.breakpoints();
  if (bp.back() < T * (1.0 - 1e-12)) throw GeometryError("ode_controlled_path: control does not cover [0,T]");
  PathGrid p;
  p.times = uniform_grid(T, std::min(h, T));
  p.points.reserve(p.times.size());
  p.points.push_back(x0);
  for (std::size_t k = 0; k + 1 < p.times.size(); ++k) {
    const Point& x = p.points.back();
    const double step = p.times[k + 1] - p.times[k];
    Point next = x + step * parametrized_selection(F, x, u.at(p.times[k]), opt);
    require_finite(next, p.times[k + 1], "ode_controlled_path");
    p.points.push_back(std::move(next));
  }
  return p;
}

Funnel sample_funnel(const SetValuedMap& F, const std::vector<Point>& Y0, double T, double h,
                     int n_paths_per_x0, std::uint64_t seed, const SteinerOptions& steiner) {
  if (Y0.empty()) throw GeometryError("sample_funnel: empty initial set");
  if (n_paths_per_x0 < 1) throw GeometryError("sample_funnel: need at least one path per point");
  Funnel f;
  f.horizon = T;
  for (std::size_t i = 0; i < Y0.size(); ++i) {
    const std::size_t first = f.paths.size();
    for (int j = 0; j < n_paths_per_x0; ++j) {
      Selector sel;
      sel.steiner = steiner;
      if (j == 0) {
        sel.strategy = Strategy::kSteiner;
      } else if (j <= 2) {
        sel.strategy = Strategy::kExtremeTowardFixedDirection;
        sel.direction = (j == 1 ? 1.0 : -1.0) * Point::Unit(F.dim(), 0);
      } else {
        sel.strategy = Strategy::kRandomSupportDirection;
      }
      const std::uint64_t sub = substream_seed(seed, i * static_cast<std::uint64_t>(n_paths_per_x0) + j);
      PathGrid p = euler_inclusion_path(F, Y0[i], T, h, sel, sub);
      bool dup = false;
      for (std::size_t q = first; q < f.paths.size() && !dup; ++q) dup = f.paths[q].points == p.points;
      if (!dup) f.paths.push_back(std::move(p));
    }
  }
  return f;
}

double path_funnel_distance(const PathGrid& p, const Funnel& f) {
  if (f.paths.empty()) throw GeometryError("path_funnel_distance: empty funnel");
  const double T = f.horizon;
  if (std::abs(p.horizon() - T) > 1e-9 * (1.0 + T))
    throw GeometryError("path_funnel_distance: horizon mismatch");
  const auto& grid = f.paths.front().times;
  std::vector<Point> resampled;
  resampled.reserve(grid.size());
  const bool same = p.times == grid;
  for (std::size_t k = 0; k < grid.size(); ++k)
    resampled.push_back(same ? p.points[k] : p.at(std::min(grid[k], p.horizon())));
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : f.paths) {
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size() && worst < best; ++k)
      worst = std::max(worst, (resampled[k] - q.points[k]).norm());
    best = std::min(best, worst);
  }
  return best;
}

double gronwall_bound(double r, double K, double T) {
  if (r < 0.0 || K < 0.0 || T < 0.0) throw GeometryError("gronwall_bound: arguments must be >= 0");
  return (r + K * T) * std::exp(K * T);
}

RefinementReport funnel_refinement_check(const SetValuedMap& F, const std::vector<int>& levels,
                                         const std::vector<Point>& Y0, double T, double h,
                                         std::uint64_t seed, int n_paths_per_x0) {
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1]) throw GeometryError("funnel_refinement_check: levels must increase");
  const Funnel base = sample_funnel(F, Y0, T, h, n_paths_per_x0, seed);
  RefinementReport rep;
  for (int l : levels) {
    const SetValuedMap Fl = dilate_map(F, l);
    const Funnel fl = sample_funnel(Fl, Y0, T, h, n_paths_per_x0, seed);
    double worst = 0.0;
    for (const auto& p : fl.paths) worst = std::max(worst, path_funnel_distance(p, base));
    if (!rep.levels.empty()) {
      const double prev = rep.levels.back().distance;
      if (worst > prev) rep.nonincreasing = false;
      if (!(worst < prev)) rep.strictly_decreasing = false;
    }
    rep.levels.push_back({l, worst});
  }
  return rep;
}

}  // namespace sri
