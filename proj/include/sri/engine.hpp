#pragma once

#include "sri/noise.hpp"
#include "sri/schedule.hpp"
#include "sri/selection.hpp"
#include "sri/set_valued_map.hpp"

#include <cstdint>
#include <vector>

namespace sri {

/// Recorded run of the recursion from iteration index start_index.
///
/// Entry i of X, Xp, chi, performed_reset and t belongs to iteration
/// n = start_index + i (N+1 entries). Entry i of a, v, M and u belongs to
/// the step from n to n+1 (N entries): X[i+1] = Xp[i] + a[i] * (v[i] + M[i])
/// with v[i] in F(Xp[i]) and M[i] the noise M_{n+1}.
struct Trajectory {
  long start_index = 0;
  std::vector<Point> X, Xp;
  std::vector<Point> v, M, u;
  std::vector<double> a, t;
  std::vector<std::uint8_t> chi;              // X_n != X'_n
  std::vector<std::uint8_t> performed_reset;  // reset assigned at n
  std::uint64_t seed = 0;
  bool divergent = false;

  long steps() const { return static_cast<long>(v.size()); }
  long end_index() const { return start_index + steps(); }
  std::size_t offset(long n) const;  // n - start_index, range checked
};

struct RunOptions {
  Selector selector{};
  long start_index = 0;
  // Parameters u_n = recover_parameter(F, X'_n, v_n); skipping them leaves u empty.
  bool record_parameters = true;
};

/// X_{n+1} = X_n + a(n) (v_n + M_{n+1}), v_n chosen by the selector, for N
/// steps from X_{start} = x0. Draws use one Rng seeded with `seed` (selector
/// randomness first, then noise, per step). A non-finite iterate ends the run
/// early with divergent = true.
Trajectory run_inclusion(const SetValuedMap& F, const Point& x0, const StepSchedule& s,
                         const NoiseModel& noise, long N, std::uint64_t seed,
                         const RunOptions& opt = {});

/// Linear interpolation of the iterates at DI time t in [t(start), t(end)].
Point interpolate(const Trajectory& traj, double t);

/// max_{j in [n_lo, n_hi]} |zeta_j - zeta_{n_lo}| with zeta_j = sum_{n<j} a(n) M_{n+1}.
double zeta_fluctuation(const Trajectory& traj, long n_lo, long n_hi);

/// Iterates rebuilt from Xp, a, v, M by the update rule.
std::vector<Point> replay(const Trajectory& traj);

namespace detail {

// One step of the recursion, shared by run_inclusion and run_ssri.
struct Stepper {
  const SetValuedMap& F;
  const StepSchedule& s;
  const NoiseModel& noise;
  const RunOptions& opt;
  Rng rng;

  Stepper(const SetValuedMap& F_, const StepSchedule& s_, const NoiseModel& noise_,
          const RunOptions& opt_, std::uint64_t seed)
      : F(F_), s(s_), noise(noise_), opt(opt_), rng(seed) {}

  // Advances from traj.Xp.back() at iteration n; appends v, M, a, u and the
  // new X (also as provisional Xp). Returns false when the new iterate is not
  // finite; nothing is appended then and the trajectory is marked divergent.
  bool step(Trajectory& traj, long n);
};

Trajectory start_trajectory(const Point& x0, const StepSchedule& s, long start_index,
                            long N, std::uint64_t seed);

}  // namespace detail

}  // namespace sri
