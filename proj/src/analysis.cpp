#include "sri/analysis.hpp"

#include "sri/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace sri {

void AttractorSpec::validate() const {
  if (!(O_prime_radius > 0.0 && O_radius > 0.0 && eps0 > 0.0 && T_A > 0.0 && T_u > 0.0))
    throw GeometryError("AttractorSpec: radii, eps0, T_A and T_u must be positive");
  if (T_u < T_A) throw GeometryError("AttractorSpec: T_u must be >= T_A");
  const double reach = radius_about(A, center());
  if (!(reach + 2.0 * eps0 < O_prime_radius)) {
    std::ostringstream os;
    os << "AttractorSpec: N^{2 eps0}(A) reaches " << reach + 2.0 * eps0 << ", not inside O' of radius "
       << O_prime_radius;
    throw GeometryError(os.str());
  }
  if (!(O_prime_radius + eps0 < O_radius)) {
    std::ostringstream os;
    os << "AttractorSpec: N^{eps0}(closure O') reaches " << O_prime_radius + eps0
       << ", not inside O of radius " << O_radius;
    throw GeometryError(os.str());
  }
}

std::vector<Point> ball_grid(const Point& c, double R, int m, bool closed) {
  if (m < (closed ? 2 : 1)) throw GeometryError("ball_grid: too few points per axis");
  const int d = static_cast<int>(c.size());
  std::vector<double> axis(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    axis[static_cast<std::size_t>(j)] =
        closed ? R * (2.0 * j / (m - 1) - 1.0) : R * (2.0 * (j + 1) / (m + 1) - 1.0);
  }
  std::vector<Point> out;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    Point off(d);
    for (int i = 0; i < d; ++i) off(i) = axis[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    const double n = off.norm();
    if (closed ? n <= R * (1.0 + 1e-12) : n < R) out.push_back(c + off);
    int i = 0;
    while (i < d && ++idx[static_cast<std::size_t>(i)] == m) idx[static_cast<std::size_t>(i++)] = 0;
    if (i == d) break;
  }
  return out;
}

void BoundInputs::validate() const {
  if (d < 1 || !(eps0 > 0.0 && K > 0.0 && T_u > 0.0 && C > 0.0 && L > 0.0))
    throw GeometryError("BoundInputs: all inputs must be positive");
}

BoundInputs make_bound_inputs(const AttractorSpec& att, int d, double K, double L) {
  BoundInputs in;
  in.d = d;
  in.eps0 = att.eps0;
  in.K = K;
  in.T_u = att.T_u;
  in.C = att.center().norm() + att.O_prime_radius;
  in.L = L;
  in.validate();
  return in;
}

double bound_K0(const BoundInputs& in) { return std::exp(in.L * in.T_u); }

double bound_K_tilde(const BoundInputs& in) {
  in.validate();
  const double K0 = bound_K0(in);
  const double growth = 1.0 + std::exp(2.0 * in.K * in.T_u) * (1.0 + 2.0 * in.K * in.T_u * in.C);
  return in.eps0 * in.eps0 / (32.0 * K0 * K0 * in.d * in.K * growth);
}

double lockin_bound_from_tail(const BoundInputs& in, double b) {
  if (!(b >= 0.0)) throw GeometryError("lockin bound: tail sum must be >= 0");
  if (b == 0.0) return 1.0;
  return std::max(0.0, 1.0 - 2.0 * in.d * std::exp(-bound_K_tilde(in) / b));
}

double theoretical_lockin_bound(const BoundInputs& in, const StepSchedule& s, long n0) {
  return lockin_bound_from_tail(in, b_tail(s, n0));
}

std::vector<double> per_window_azuma(const BoundInputs& in, const StepSchedule& s,
                                     const std::vector<std::pair<long, long>>& windows) {
  const double kt = bound_K_tilde(in);
  std::vector<double> out;
  out.reserve(windows.size());
  for (const auto& [lo, hi] : windows) {
    if (hi < lo) throw GeometryError("per_window_azuma: window end before start");
    const double gap = b_tail(s, lo) - b_tail(s, hi);
    out.push_back(gap > 0.0 ? 2.0 * in.d * std::exp(-kt / gap) : 0.0);
  }
  return out;
}

WilsonInterval wilson_interval(long successes, long trials, double z) {
  if (trials <= 0 || successes < 0 || successes > trials)
    throw GeometryError("wilson_interval: need 0 <= successes <= trials, trials > 0");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half))};
}

bool convergence_to_set(const Trajectory& traj, const ConvexSet& A, double eps, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw GeometryError("convergence_to_set: tail_fraction must lie in (0, 1]");
  if (traj.divergent) return false;
  const long N = traj.steps();
  const long tail = static_cast<long>(std::ceil(tail_fraction * static_cast<double>(N)));
  for (long i = N - tail; i <= N; ++i) {
    if (point_set_distance(traj.Xp[static_cast<std::size_t>(i)], A) > eps) return false;
  }
  return true;
}

InitRule parse_init_rule(const std::string& name) {
  if (name == "grid-in-Oprime") return InitRule::kGridInOPrime;
  if (name == "fixed-point") return InitRule::kFixedPoint;
  throw GeometryError("unknown init rule '" + name + "'");
}

std::string to_string(InitRule r) { return r == InitRule::kGridInOPrime ? "grid-in-Oprime" : "fixed-point"; }

LockInReport lock_in_empirical(const SetValuedMap& F, const AttractorSpec& att, const StepSchedule& s,
                               const NoiseModel& noise, const std::vector<long>& n0_list, long trials,
                               long horizon, InitRule init, std::uint64_t seed, const LockInOptions& opt) {
  att.validate();
  if (trials < 100) throw GeometryError("lock_in_empirical: trials must be >= 100");
  std::vector<Point> starts;
  if (init == InitRule::kFixedPoint) {
    starts.push_back(att.center());
  } else {
    starts = ball_grid(att.center(), att.O_prime_radius, opt.grid_points, false);
  }
  std::vector<Point> valid;
  for (const auto& x : starts)
    if (att.in_O_prime(x)) valid.push_back(x);
  if (valid.empty()) throw GeometryError("lock_in_empirical: no initial point inside O' (empty conditioning)");
  const double eps = opt.eps.value_or(att.eps0);
  RunOptions ro;
  ro.selector = opt.selector;
  ro.record_parameters = false;
  LockInReport rep;
  rep.horizon = horizon;
  rep.init = init;
  for (std::size_t i = 0; i < n0_list.size(); ++i) {
    const long n0 = n0_list[i];
    if (n0 < 0 || n0 >= horizon) throw GeometryError("lock_in_empirical: each n0 must lie in [0, horizon)");
    ro.start_index = n0;
    LockInRow row;
    row.n0 = n0;
    row.trials = trials;
    const std::uint64_t base = substream_seed(seed, i);
    for (long j = 0; j < trials; ++j) {
      const Point& x0 = valid[static_cast<std::size_t>(j) % valid.size()];
      const Trajectory tr = run_inclusion(F, x0, s, noise, horizon - n0, substream_seed(base, j), ro);
      if (tr.divergent) ++row.divergent;
      if (convergence_to_set(tr, att.A, eps, opt.tail_fraction)) ++row.successes;
    }
    row.p = static_cast<double>(row.successes) / static_cast<double>(trials);
    row.ci = wilson_interval(row.successes, trials);
    if (opt.bound) {
      row.bound = theoretical_lockin_bound(*opt.bound, s, n0);
      row.bound_vacuous = row.bound <= 0.0;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

RhoResult rho_diagnostics(const Trajectory& traj, const SetValuedMap& F, long n_start, long n_end,
                          const AttractorSpec& att, int l, const FunnelConfig& cfg) {
  if (n_end <= n_start) throw GeometryError("rho_diagnostics: empty window");
  if (l < 0) throw GeometryError("rho_diagnostics: level must be >= 0");
  const std::size_t lo = traj.offset(n_start), hi = traj.offset(n_end);
  const Point& x_start = traj.Xp[lo];
  if ((x_start - att.center()).norm() > att.O_prime_radius * (1.0 + 1e-12)) {
    throw GeometryError("rho_diagnostics: window start lies outside the closure of O'");
  }
  const SetValuedMap G = l == 0 ? F : dilate_map(F, l);
  RhoResult res;
  res.n_start = n_start;
  res.n_end = n_end;

  PathGrid seg;
  std::vector<double> breakpoints;
  std::vector<Parameter> controls;
  for (std::size_t k = lo; k <= hi; ++k) {
    const double t = traj.t[k] - traj.t[lo];
    seg.times.push_back(t);
    seg.points.push_back(traj.Xp[k]);
    breakpoints.push_back(t);
    if (k < hi) controls.push_back(recover_parameter(G, traj.Xp[k], traj.v[k]));
  }
  res.T = seg.times.back();
  seg.validate();

  std::vector<Point> Y0{x_start};
  for (auto& p : ball_grid(att.center(), att.O_prime_radius, cfg.grid_points, true)) Y0.push_back(std::move(p));
  const Funnel funnel = sample_funnel(G, Y0, res.T, cfg.h, cfg.paths_per_x0, cfg.seed, cfg.selection.steiner);

  const ControlSignal u(std::move(breakpoints), std::move(controls));
  const PathGrid ctrl = ode_controlled_path(G, x_start, u, res.T, cfg.h, cfg.selection);

  res.rho = path_funnel_distance(seg, funnel);
  res.rho2 = path_funnel_distance(ctrl, funnel);
  std::set<double> times(seg.times.begin(), seg.times.end());
  times.insert(ctrl.times.begin(), ctrl.times.end());
  times.insert(funnel.paths.front().times.begin(), funnel.paths.front().times.end());
  double r1 = 0.0;
  double scale = 1.0;
  for (double t : times) {
    const double tt = std::min(t, res.T);
    const Point a = seg.at(tt), b = ctrl.at(std::min(tt, ctrl.horizon()));
    r1 = std::max(r1, (a - b).norm());
    scale = std::max(scale, std::max(a.norm(), b.norm()));
  }
  res.rho1 = r1;
  res.slack = 1e-12 * scale;
  res.triangle_ok = res.rho <= res.rho1 + res.rho2 + res.slack;
  return res;
}

FiniteResetReport finite_reset_experiment(const SetValuedMap& F, const SsriConfig& cfg,
                                          const AttractorSpec& att, const StepSchedule& s,
                                          const NoiseModel& noise, long trials, long horizon,
                                          std::uint64_t seed, const FiniteResetOptions& opt) {
  if (trials < 100) throw GeometryError("finite_reset_experiment: trials must be >= 100");
  cfg.validate();
  const double eps = opt.eps.value_or(att.eps0);
  RunOptions ro;
  ro.selector = opt.selector;
  ro.record_parameters = false;
  FiniteResetReport rep;
  rep.trials = trials;
  long late = 0, converged = 0, total = 0;
  for (long j = 0; j < trials; ++j) {
    const SsriResult r = run_ssri(F, cfg, s, noise, horizon, substream_seed(seed, j), ro);
    long count = 0;
    bool late_reset = false;
    for (std::size_t i = 0; i < r.traj.chi.size(); ++i) {
      if (!r.traj.performed_reset[i]) continue;
      ++count;
      if (2 * static_cast<long>(i) >= horizon) late_reset = true;
    }
    if (r.traj.divergent) ++rep.divergent;
    rep.reset_counts.push_back(count);
    rep.max_resets = std::max(rep.max_resets, count);
    total += count;
    if (late_reset) ++late;
    if (convergence_to_set(r.traj, att.A, eps, opt.tail_fraction)) ++converged;
  }
  rep.mean_resets = static_cast<double>(total) / static_cast<double>(trials);
  rep.late_reset_fraction = static_cast<double>(late) / static_cast<double>(trials);
  rep.converged_fraction = static_cast<double>(converged) / static_cast<double>(trials);
  return rep;
}

double estimate_lipschitz(const SetValuedMap& G, const Point& c, double r, double min_separation,
                          int n_pairs, std::uint64_t seed) {
  if (n_pairs < 1 || !(r > 0.0) || !(min_separation > 0.0) || min_separation > 2.0 * r)
    throw GeometryError("estimate_lipschitz: invalid sampling parameters");
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int d = G.dim();
  auto draw = [&]() {
    const double rad = r * std::pow(unif(rng), 1.0 / d);
    return Point(c + rad * random_direction(d, rng));
  };
  double best = 0.0;
  int done = 0;
  while (done < n_pairs) {
    const Point x = draw(), y = draw();
    const double sep = (x - y).norm();
    if (sep < min_separation) continue;
    best = std::max(best, hausdorff(G(x), G(y)) / sep);
    ++done;
  }
  return best;
}

}  // namespace sri
