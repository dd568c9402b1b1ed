#pragma once

#include "sri/engine.hpp"

#include <string>
#include <vector>

namespace sri {

enum class RadiusKind { kGeometric, kArithmetic };

/// r_k = r0 c^k (geometric, c > 1) or r0 + c k (arithmetic, c > 0).
struct RadiusSchedule {
  RadiusKind kind = RadiusKind::kGeometric;
  double r0 = 1.0;
  double c = 2.0;

  double r(int k) const;
  void validate() const;
};

/// Parses "geometric:C" or "arithmetic:C".
RadiusSchedule parse_radius_schedule(const std::string& text, double r0);
std::string to_string(const RadiusSchedule& r);

struct SsriConfig {
  Point x0;
  RadiusSchedule radius{};
  double T_W = 1.0;
  // When false, |x0| >= r0 is accepted (the reset target then lies outside
  // the first ball; the reset logic is unchanged).
  bool require_initial_inside = true;

  void validate() const;
};

/// One elapsed window (t_e reached T_W). `check` marks windows that ended
/// with n_W = 1, where the norm test ran.
struct WindowEvent {
  long index;        // n+1, the iterate examined
  double elapsed;    // t_e at the event
  long n_W_before;
  long n_W_after;
  bool check;
  int k_before;      // reset count when the test ran
  double radius;     // r_{k_before} (checks only)
  double norm;       // |X_{n+1}| (checks only)
  bool reset;
};

struct ResetTrace {
  std::vector<WindowEvent> windows;

  std::vector<long> check_indices() const;
  std::vector<long> reset_indices() const;
  /// Reset count after each check.
  std::vector<int> k_per_check() const;
};

struct SsriResult {
  Trajectory traj;
  ResetTrace trace;
};

/// The recursion run from X'_n with the windowed reset test.
/// Shares its stepping core (and therefore its random stream) with
/// run_inclusion, so runs without resets coincide bit for bit.
SsriResult run_ssri(const SetValuedMap& F, const SsriConfig& cfg, const StepSchedule& s,
                    const NoiseModel& noise, long N, std::uint64_t seed, const RunOptions& opt = {});

struct CheckAudit {
  long index;
  long windows_since_previous;  // windows ending after the previous check, this one included
  long expected_windows;        // n_W assigned at the previous check (1 before the first)
  double elapsed;               // DI time since the previous check (or the start)
  double lo, hi;                // expected_windows * T_W and expected_windows * (T_W + 1)
  bool ok;
};

struct ResetSummary {
  long total_resets = 0;         // sum of chi_n
  long performed_resets = 0;
  long coincidences = 0;         // resets with X_n == x0
  long last_reset_index = -1;
  std::vector<CheckAudit> audits;
  bool window_elapsed_ok = true;  // every window's t_e in [T_W, T_W + 1]
  bool audit_ok = true;
};

ResetSummary reset_summary(const ResetTrace& trace, const Trajectory& traj, const SsriConfig& cfg);

}  // namespace sri
