#pragma once

#include "sri/dynamics.hpp"
#include "sri/engine.hpp"
#include "sri/resetter.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sri {

/// Attracting set A with open balls O' subset O about c = A.center().
struct AttractorSpec {
  ConvexSet A = ConvexSet::Singleton(Point::Zero(1));
  double O_prime_radius = 1.0;
  double O_radius = 2.0;
  double eps0 = 0.1;
  double T_A = 1.0;
  double T_u = 2.0;

  Point center() const { return A.center(); }
  /// N^{2 eps0}(A) inside O' and N^{eps0}(closure O') inside O, using
  /// sup_u h_A(u) - <c,u> = sup_{y in A} |y - c|; also T_u >= T_A.
  void validate() const;
  bool in_O_prime(const Point& x) const { return (x - center()).norm() < O_prime_radius; }
};

/// Points of a per-axis grid inside the ball |x - c| < R (open) or <= R (closed).
/// Open: per axis c_i + R (2(j+1)/(m+1) - 1), j < m. Closed: c_i + R (2j/(m-1) - 1).
std::vector<Point> ball_grid(const Point& c, double R, int points_per_axis, bool closed);

struct BoundInputs {
  int d = 1;
  double eps0 = 0.1;
  double K = 1.0;  // shared growth and noise constant
  double T_u = 1.0;
  double C = 1.0;  // sup of |x| over O'
  double L = 1.0;  // Lipschitz estimate entering K0 = e^{L T_u}

  void validate() const;
};

BoundInputs make_bound_inputs(const AttractorSpec& att, int d, double K, double L);

double bound_K0(const BoundInputs& in);
/// eps0^2 / (32 K0^2 d K (1 + e^{2 K T_u} (1 + 2 K T_u C))).
double bound_K_tilde(const BoundInputs& in);
/// max(0, 1 - 2 d e^{-K_tilde / b}), 1 for b = 0.
double lockin_bound_from_tail(const BoundInputs& in, double b);
double theoretical_lockin_bound(const BoundInputs& in, const StepSchedule& s, long n0);

/// 2 d e^{-K_tilde / (b(n_m) - b(n_{m+1}))} per window (n_m, n_{m+1}).
std::vector<double> per_window_azuma(const BoundInputs& in, const StepSchedule& s,
                                     const std::vector<std::pair<long, long>>& windows);

struct WilsonInterval {
  double lo, hi;
};
WilsonInterval wilson_interval(long successes, long trials, double z = 1.959963984540054);

/// True iff the run did not diverge and every post-reset iterate with offset
/// i >= N - ceil(tail_fraction * N) lies within eps of A.
bool convergence_to_set(const Trajectory& traj, const ConvexSet& A, double eps, double tail_fraction);

enum class InitRule { kGridInOPrime, kFixedPoint };
InitRule parse_init_rule(const std::string& name);
std::string to_string(InitRule r);

struct LockInOptions {
  Selector selector{};
  std::optional<double> eps;  // default eps0
  double tail_fraction = 0.2;
  int grid_points = 11;       // per axis, grid-in-Oprime rule
  std::optional<BoundInputs> bound;
};

struct LockInRow {
  long n0 = 0;
  long trials = 0;
  long successes = 0;
  long divergent = 0;
  double p = 0.0;
  WilsonInterval ci{0.0, 0.0};
  double bound = 0.0;
  bool bound_vacuous = true;  // bound formula <= 0
};

struct LockInReport {
  long horizon = 0;
  InitRule init = InitRule::kFixedPoint;
  std::vector<LockInRow> rows;
};

/// For each n0: trials runs started at index n0 inside O' (grid points cycled
/// per trial, or A's center), run to `horizon`, scored by convergence_to_set.
/// Trial j of the i-th n0 uses seed substream_seed(substream_seed(seed, i), j).
LockInReport lock_in_empirical(const SetValuedMap& F, const AttractorSpec& att, const StepSchedule& s,
                               const NoiseModel& noise, const std::vector<long>& n0_list, long trials,
                               long horizon, InitRule init, std::uint64_t seed,
                               const LockInOptions& opt = {});

struct FunnelConfig {
  double h = 0.01;
  int paths_per_x0 = 6;
  int grid_points = 5;  // per axis over closure of O'
  std::uint64_t seed = 1;
  SelectionOptions selection{};
};

struct RhoResult {
  long n_start = 0, n_end = 0;
  double T = 0.0;
  double rho = 0.0, rho1 = 0.0, rho2 = 0.0;
  double slack = 0.0;  // floating-point allowance in the triangle check
  bool triangle_ok = false;
};

/// Window diagnostics on [n_start, n_end] for the map F^(l) (F itself for
/// l = 0). rho and rho2 are distances to one funnel sample of S(T, closure O'),
/// started from X'_{n_start} and a closed grid of O', evaluated on the funnel
/// grid; rho1 is the sup distance between the interpolated iterates and the
/// controlled path on the union of their grids and the funnel grid. The
/// controlled path is driven by u_k = recover_parameter(F^(l), X'_k, v_k).
RhoResult rho_diagnostics(const Trajectory& traj, const SetValuedMap& F, long n_start, long n_end,
                          const AttractorSpec& att, int l, const FunnelConfig& cfg = {});

struct FiniteResetOptions {
  Selector selector{};
  std::optional<double> eps;
  double tail_fraction = 0.2;
};

struct FiniteResetReport {
  long trials = 0;
  std::vector<long> reset_counts;
  long max_resets = 0;
  double mean_resets = 0.0;
  double late_reset_fraction = 0.0;  // trials with a reset at index >= horizon / 2
  double converged_fraction = 0.0;
  long divergent = 0;
};

FiniteResetReport finite_reset_experiment(const SetValuedMap& F, const SsriConfig& cfg,
                                          const AttractorSpec& att, const StepSchedule& s,
                                          const NoiseModel& noise, long trials, long horizon,
                                          std::uint64_t seed, const FiniteResetOptions& opt = {});

/// max of H(G(x), G(y)) / |x - y| over n_pairs seeded pairs in the ball
/// |x - c| <= r with |x - y| >= min_separation.
double estimate_lipschitz(const SetValuedMap& G, const Point& c, double r, double min_separation,
                          int n_pairs, std::uint64_t seed);

}  // namespace sri
