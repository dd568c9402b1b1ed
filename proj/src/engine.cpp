#include "sri/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sri {

std::size_t Trajectory::offset(long n) const {
  if (n < start_index || n > end_index()) {
    std::ostringstream os;
    os << "Trajectory: index " << n << " outside [" << start_index << ", " << end_index() << "]";
    throw GeometryError(os.str());
  }
  return static_cast<std::size_t>(n - start_index);
}

namespace detail {

Trajectory start_trajectory(const Point& x0, const StepSchedule& s, long start_index, long N,
                            std::uint64_t seed) {
  if (N < 1) throw GeometryError("run: N must be >= 1");
  if (start_index < 0) throw GeometryError("run: start index must be >= 0");
  if (!x0.allFinite()) throw GeometryError("run: non-finite initial point");
  Trajectory traj;
  traj.start_index = start_index;
  traj.seed = seed;
  const auto n1 = static_cast<std::size_t>(N) + 1;
  traj.X.reserve(n1);
  traj.Xp.reserve(n1);
  traj.t.reserve(n1);
  traj.chi.reserve(n1);
  traj.performed_reset.reserve(n1);
  traj.v.reserve(n1 - 1);
  traj.M.reserve(n1 - 1);
  traj.a.reserve(n1 - 1);
  traj.X.push_back(x0);
  traj.Xp.push_back(x0);
  traj.t.push_back(s.t(start_index));
  traj.chi.push_back(0);
  traj.performed_reset.push_back(0);
  return traj;
}

bool Stepper::step(Trajectory& traj, long n) {
  const Point& xp = traj.Xp.back();
  const ConvexSet Y = F(xp);
  Point v = opt.selector.select(Y, rng);
  Point m = noise.sample(xp, rng);
  const double an = s.a(n);
  Point next = xp + an * (v + m);
  if (!next.allFinite()) {
    traj.divergent = true;
    return false;
  }
  if (opt.record_parameters) traj.u.push_back(recover_parameter(F, xp, v).value());
  traj.v.push_back(std::move(v));
  traj.M.push_back(std::move(m));
  traj.a.push_back(an);
  traj.t.push_back(traj.t.back() + an);
  traj.X.push_back(next);
  traj.Xp.push_back(std::move(next));
  traj.chi.push_back(0);
  traj.performed_reset.push_back(0);
  return true;
}

}  // namespace detail

Trajectory run_inclusion(const SetValuedMap& F, const Point& x0, const StepSchedule& s,
                         const NoiseModel& noise, long N, std::uint64_t seed, const RunOptions& opt) {
  if (x0.size() != F.dim()) throw GeometryError("run_inclusion: x0 has wrong dimension");
  Trajectory traj = detail::start_trajectory(x0, s, opt.start_index, N, seed);
  detail::Stepper stepper(F, s, noise, opt, seed);
  for (long i = 0; i < N; ++i) {
    if (!stepper.step(traj, opt.start_index + i)) break;
  }
  return traj;
}

Point interpolate(const Trajectory& traj, double t) {
  const double lo = traj.t.front(), hi = traj.t.back();
  if (!(t >= lo && t <= hi)) {
    std::ostringstream os;
    os << "interpolate: t = " << t << " outside [" << lo << ", " << hi << "]";
    throw GeometryError(os.str());
  }
  auto it = std::upper_bound(traj.t.begin(), traj.t.end(), t);
  if (it == traj.t.end()) return traj.X.back();
  const auto k = static_cast<std::size_t>(std::distance(traj.t.begin(), it)) - 1;
  const double t0 = traj.t[k];
  if (t == t0) return traj.X[k];
  const double w = (t - t0) / traj.a[k];
  return (1.0 - w) * traj.X[k] + w * traj.X[k + 1];
}

double zeta_fluctuation(const Trajectory& traj, long n_lo, long n_hi) {
  if (n_hi < n_lo) throw GeometryError("zeta_fluctuation: n_hi < n_lo");
  const std::size_t lo = traj.offset(n_lo), hi = traj.offset(n_hi);
  const int d = static_cast<int>(traj.X.front().size());
  Point zeta = Point::Zero(d);
  double best = 0.0;
  for (std::size_t k = lo; k < hi; ++k) {
    zeta += traj.a[k] * traj.M[k];
    best = std::max(best, zeta.norm());
  }
  return best;
}

std::vector<Point> replay(const Trajectory& traj) {
  std::vector<Point> X{traj.X.front()};
  X.reserve(traj.X.size());
  for (std::size_t k = 0; k < traj.v.size(); ++k) {
    X.push_back(traj.Xp[k] + traj.a[k] * (traj.v[k] + traj.M[k]));
  }
  return X;
}

}  // namespace sri
