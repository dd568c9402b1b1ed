#include "sri/resetter.hpp"

#include <cmath>
#include <sstream>

namespace sri {

double RadiusSchedule::r(int k) const {
  return kind == RadiusKind::kGeometric ? r0 * std::pow(c, k) : r0 + c * k;
}

void RadiusSchedule::validate() const {
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw GeometryError("radius schedule: r0 must be positive");
  if (kind == RadiusKind::kGeometric && !(c > 1.0))
    throw GeometryError("radius schedule: geometric factor must exceed 1");
  if (kind == RadiusKind::kArithmetic && !(c > 0.0))
    throw GeometryError("radius schedule: arithmetic increment must be positive");
  if (!std::isfinite(c)) throw GeometryError("radius schedule: non-finite parameter");
}

RadiusSchedule parse_radius_schedule(const std::string& text, double r0) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw GeometryError("radius schedule must read KIND:C, got '" + text + "'");
  RadiusSchedule r;
  const std::string kind = text.substr(0, colon);
  if (kind == "geometric") r.kind = RadiusKind::kGeometric;
  else if (kind == "arithmetic") r.kind = RadiusKind::kArithmetic;
  else throw GeometryError("unknown radius schedule kind '" + kind + "'");
  try {
    std::size_t used = 0;
    r.c = std::stod(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw GeometryError("radius schedule: bad constant in '" + text + "'");
  }
  r.r0 = r0;
  r.validate();
  return r;
}

std::string to_string(const RadiusSchedule& r) {
  std::ostringstream os;
  os.precision(17);
  os << (r.kind == RadiusKind::kGeometric ? "geometric:" : "arithmetic:") << r.c;
  return os.str();
}

void SsriConfig::validate() const {
  radius.validate();
  if (x0.size() < 1 || !x0.allFinite()) throw GeometryError("SsriConfig: x0 must be a finite point");
  if (!(T_W > 0.0) || !std::isfinite(T_W)) throw GeometryError("SsriConfig: T_W must be positive");
  if (require_initial_inside && !(x0.norm() < radius.r0)) {
    std::ostringstream os;
    os << "SsriConfig: |x0| = " << x0.norm() << " must be below r0 = " << radius.r0;
    throw GeometryError(os.str());
  }
}

std::vector<long> ResetTrace::check_indices() const {
  std::vector<long> out;
  for (const auto& w : windows)
    if (w.check) out.push_back(w.index);
  return out;
}

std::vector<long> ResetTrace::reset_indices() const {
  std::vector<long> out;
  for (const auto& w : windows)
    if (w.reset) out.push_back(w.index);
  return out;
}

std::vector<int> ResetTrace::k_per_check() const {
  std::vector<int> out;
  for (const auto& w : windows)
    if (w.check) out.push_back(w.k_before + (w.reset ? 1 : 0));
  return out;
}

SsriResult run_ssri(const SetValuedMap& F, const SsriConfig& cfg, const StepSchedule& s,
                    const NoiseModel& noise, long N, std::uint64_t seed, const RunOptions& opt) {
  cfg.validate();
  if (cfg.x0.size() != F.dim()) throw GeometryError("run_ssri: x0 has wrong dimension");
  SsriResult res;
  Trajectory& traj = res.traj;
  traj = detail::start_trajectory(cfg.x0, s, opt.start_index, N, seed);
  detail::Stepper stepper(F, s, noise, opt, seed);
  int k = 0;
  double t_e = 0.0;
  long n_W = 1;
  for (long i = 0; i < N; ++i) {
    const long n = opt.start_index + i;
    if (!stepper.step(traj, n)) break;
    t_e += traj.a.back();
    if (!(t_e >= cfg.T_W)) continue;
    WindowEvent ev{n + 1, t_e, n_W, 0, false, k, 0.0, 0.0, false};
    if (n_W == 1) {
      ev.check = true;
      ev.radius = cfg.radius.r(k);
      ev.norm = traj.X.back().norm();
      if (ev.norm > ev.radius) {
        traj.Xp.back() = cfg.x0;
        traj.performed_reset.back() = 1;
        ev.reset = true;
        ++k;
      }
      n_W = 1L << std::min(k, 62);
    } else {
      --n_W;
    }
    ev.n_W_after = n_W;
    res.trace.windows.push_back(ev);
    t_e = 0.0;
    const std::size_t last = traj.X.size() - 1;
    traj.chi[last] = (traj.X[last] != traj.Xp[last]) ? 1 : 0;
  }
  return res;
}

ResetSummary reset_summary(const ResetTrace& trace, const Trajectory& traj, const SsriConfig& cfg) {
  ResetSummary rep;
  for (std::size_t i = 0; i < traj.chi.size(); ++i) {
    rep.total_resets += traj.chi[i];
    if (traj.performed_reset[i]) {
      ++rep.performed_resets;
      if (!traj.chi[i]) ++rep.coincidences;
      rep.last_reset_index = traj.start_index + static_cast<long>(i);
    }
  }
  long expected = 1;
  long count = 0;
  std::size_t prev = 0;  // offset of the previous check
  for (const auto& w : trace.windows) {
    const std::size_t off = traj.offset(w.index);
    if (!(w.elapsed >= cfg.T_W && w.elapsed <= cfg.T_W + 1.0)) rep.window_elapsed_ok = false;
    if (w.reset != static_cast<bool>(traj.performed_reset[off])) {
      throw GeometryError("reset_summary: trace and trajectory disagree");
    }
    ++count;
    if (!w.check) continue;
    CheckAudit a;
    a.index = w.index;
    a.windows_since_previous = count;
    a.expected_windows = expected;
    a.elapsed = 0.0;
    for (std::size_t j = prev; j < off; ++j) a.elapsed += traj.a[j];
    a.lo = static_cast<double>(expected) * cfg.T_W;
    a.hi = static_cast<double>(expected) * (cfg.T_W + 1.0);
    a.ok = count == expected && a.elapsed >= a.lo * (1.0 - 1e-12) && a.elapsed <= a.hi * (1.0 + 1e-12);
    rep.audit_ok = rep.audit_ok && a.ok;
    rep.audits.push_back(a);
    expected = w.n_W_after;
    count = 0;
    prev = off;
  }
  rep.audit_ok = rep.audit_ok && rep.window_elapsed_ok;
  return rep;
}

}  // namespace sri
