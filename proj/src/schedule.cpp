#include "sri/schedule.hpp"

#include "sri/types.hpp"

#include <cmath>
#include <sstream>

namespace sri {

StepSchedule::StepSchedule(double a0, double gamma) : a0_(a0), gamma_(gamma) {
  if (!(a0_ > 0.0 && a0_ <= 1.0)) {
    std::ostringstream os;
    os << "StepSchedule: a0 must lie in (0, 1], got " << a0_;
    throw GeometryError(os.str());
  }
  if (!(gamma_ > 0.5 && gamma_ <= 1.0)) {
    std::ostringstream os;
    os << "StepSchedule: gamma must lie in (1/2, 1], got " << gamma_;
    throw GeometryError(os.str());
  }
}

double StepSchedule::a(long n) const {
  if (n < 0) throw GeometryError("StepSchedule: negative index");
  const double m = static_cast<double>(n) + 1.0;
  return gamma_ == 1.0 ? a0_ / m : a0_ * std::pow(m, -gamma_);
}

double StepSchedule::elapsed(long n, long m) const {
  if (n < 0 || m < n) throw GeometryError("StepSchedule: invalid index range");
  double sum = 0.0, comp = 0.0;
  for (long k = n; k < m; ++k) {
    const double y = a(k) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double StepSchedule::t(long n) const { return elapsed(0, n); }

std::vector<double> time_grid(const StepSchedule& s, long N) {
  if (N < 0) throw GeometryError("time_grid: N must be >= 0");
  const long count = N > 0 ? N : 1;
  std::vector<double> out(static_cast<std::size_t>(count));
  double sum = 0.0, comp = 0.0;
  for (long n = 0; n < count; ++n) {
    out[static_cast<std::size_t>(n)] = sum;
    const double y = s.a(n) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return out;
}

namespace {

// Walks k upward from n until the summed steps reach T; returns (k, sum).
std::pair<long, double> walk(const StepSchedule& s, long n, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw GeometryError("tau: T must be positive and finite");
  if (n < 0) throw GeometryError("tau: negative index");
  double sum = 0.0, comp = 0.0;
  long k = n;
  while (sum < T) {
    const double y = s.a(k) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    ++k;
  }
  return {k, sum};
}

}  // namespace

long tau(const StepSchedule& s, long n, double T) { return walk(s, n, T).first; }

double delta(const StepSchedule& s, long n, double T) { return walk(s, n, T).second; }

double b_tail(const StepSchedule& s, long n) {
  if (n < 0) throw GeometryError("b_tail: negative index");
  constexpr long kBlock = 1024;
  const long M = ((n + kBlock) / kBlock + 1) * kBlock;
  // f(k) = a0^2 (k+1)^{-p}; sum_{k>=M} f(k) by Euler-Maclaurin at x = M+1.
  const double a0 = s.a0();
  const double p = 2.0 * s.gamma();
  const double x = static_cast<double>(M) + 1.0;
  const double f = std::pow(x, -p);
  const double integral = x * f / (p - 1.0);
  const double d1 = -p * f / x;
  const double d3 = -p * (p + 1.0) * (p + 2.0) * f / (x * x * x);
  double sum = a0 * a0 * (integral + 0.5 * f - d1 / 12.0 + d3 / 720.0);
  for (long k = M - 1; k >= n; --k) {
    const double ak = s.a(k);
    sum = ak * ak + sum;
  }
  return sum;
}

std::vector<long> window_subsequence(const StepSchedule& s, long n0, double T_A, int count) {
  if (count < 1) throw GeometryError("window_subsequence: count must be >= 1");
  if (!(T_A > 0.0)) throw GeometryError("window_subsequence: T_A must be positive");
  std::vector<long> out{n0};
  for (int m = 0; m < count; ++m) out.push_back(tau(s, out.back(), T_A));
  return out;
}

}  // namespace sri
