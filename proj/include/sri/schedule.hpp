#pragma once

#include <vector>

namespace sri {

/// Step sizes a(n) = a0 / (n+1)^gamma with 0 < a0 <= 1 and 1/2 < gamma <= 1,
/// so that sum a(n) diverges, sum a(n)^2 converges and sup a(n) <= 1.
class StepSchedule {
 public:
  explicit StepSchedule(double a0 = 1.0, double gamma = 1.0);

  double a0() const { return a0_; }
  double gamma() const { return gamma_; }

  double a(long n) const;
  /// t(n) = sum_{k<n} a(k), compensated summation.
  double t(long n) const;
  /// t(m) - t(n) summed directly over k in [n, m).
  double elapsed(long n, long m) const;

 private:
  double a0_;
  double gamma_;
};

/// (t(0), ..., t(N-1)); a single 0 for N = 0.
std::vector<double> time_grid(const StepSchedule& s, long N);

/// Smallest k >= n with t(k) >= t(n) + T. Requires T > 0.
long tau(const StepSchedule& s, long n, double T);

/// t(tau(n,T)) - t(n).
double delta(const StepSchedule& s, long n, double T);

/// b(n) = sum_{k>=n} a(k)^2.
///
/// Summed backwards from an anchor index M (the first multiple of 1024 that
/// is at least n + 1024) onto an Euler-Maclaurin tail for k >= M with three
/// derivative corrections; the tail's truncation error is below 1e-25 for the
/// admissible schedules. Consecutive n sharing an anchor satisfy
/// b(n) = fl(a(n)^2 + b(n+1)).
double b_tail(const StepSchedule& s, long n);

/// (n_0, n_1, ..., n_count) with n_{m+1} = tau(n_m, T_A).
std::vector<long> window_subsequence(const StepSchedule& s, long n0, double T_A, int count);

}  // namespace sri
