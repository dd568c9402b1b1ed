#include "sri/resetter.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sri;

namespace {

Point S(double x) { return Point::Constant(1, x); }

SetValuedMap neg_identity(int d = 1) {
  return SetValuedMap([](const Point& x) { return ConvexSet::Singleton(-x); }, 1.0, d, "neg");
}

SetValuedMap identity(int d = 1) {
  return SetValuedMap([](const Point& x) { return ConvexSet::Singleton(x); }, 1.0, d, "id");
}

SetValuedMap biased(double eps, int d = 1) {
  return SetValuedMap([eps](const Point& x) { return ConvexSet::Ball(-x, eps); }, 1.0 + eps, d, "biased");
}

SsriConfig config(Point x0, double r0, double c, double T_W) {
  SsriConfig cfg;
  cfg.x0 = std::move(x0);
  cfg.radius = RadiusSchedule{RadiusKind::kGeometric, r0, c};
  cfg.T_W = T_W;
  return cfg;
}

// Plain transcription of the flowchart for a noise-free scalar map x -> g(x).
struct RefRun {
  std::vector<long> checks, resets;
  std::vector<double> Xp;
};

template <typename G>
RefRun reference_ssri(G g, double x0, const std::vector<double>& radii, double T_W, const StepSchedule& s, long N) {
  RefRun out;
  double x = x0, te = 0.0;
  long nW = 1;
  int k = 0;
  out.Xp.push_back(x);
  for (long n = 0; n < N; ++n) {
    const double a = s.a(n);
    double next = x + a * g(x);
    te += a;
    if (te >= T_W) {
      if (nW == 1) {
        out.checks.push_back(n + 1);
        if (std::abs(next) > radii[k]) {
          next = x0;
          ++k;
          out.resets.push_back(n + 1);
        }
        nW = 1L << k;
      } else {
        --nW;
      }
      te = 0.0;
    }
    x = next;
    out.Xp.push_back(x);
  }
  return out;
}

}  // namespace

TEST(RadiusSchedule, Values) {
  const RadiusSchedule g{RadiusKind::kGeometric, 1.5, 2.0};
  EXPECT_DOUBLE_EQ(g.r(0), 1.5);
  EXPECT_DOUBLE_EQ(g.r(3), 12.0);
  const RadiusSchedule a{RadiusKind::kArithmetic, 1.0, 0.5};
  EXPECT_DOUBLE_EQ(a.r(4), 3.0);
  for (int k = 0; k < 40; ++k) {
    EXPECT_LT(g.r(k), g.r(k + 1));
    EXPECT_LT(a.r(k), a.r(k + 1));
  }
}

TEST(RadiusSchedule, ParseAndValidate) {
  const RadiusSchedule r = parse_radius_schedule("geometric:3", 2.0);
  EXPECT_EQ(r.kind, RadiusKind::kGeometric);
  EXPECT_DOUBLE_EQ(r.c, 3.0);
  EXPECT_DOUBLE_EQ(r.r0, 2.0);
  const RadiusSchedule back = parse_radius_schedule(to_string(r), 2.0);
  EXPECT_EQ(back.kind, r.kind);
  EXPECT_EQ(back.c, r.c);
  EXPECT_EQ(parse_radius_schedule("arithmetic:0.25", 1.0).kind, RadiusKind::kArithmetic);
  EXPECT_THROW(parse_radius_schedule("geometric:1", 1.0), GeometryError);
  EXPECT_THROW(parse_radius_schedule("arithmetic:0", 1.0), GeometryError);
  EXPECT_THROW(parse_radius_schedule("cubic:2", 1.0), GeometryError);
  EXPECT_THROW(parse_radius_schedule("geometric", 1.0), GeometryError);
  EXPECT_THROW(parse_radius_schedule("geometric:2x", 1.0), GeometryError);
  EXPECT_THROW(parse_radius_schedule("geometric:2", -1.0), GeometryError);
}

TEST(SsriConfig, InitialPointMustLieInsideFirstBall) {
  SsriConfig cfg = config(S(1.0), 1.0, 2.0, 1.0);
  EXPECT_THROW(cfg.validate(), GeometryError);
  cfg.require_initial_inside = false;
  EXPECT_NO_THROW(cfg.validate());
  SsriConfig bad = config(S(0.1), 1.0, 2.0, 0.0);
  EXPECT_THROW(bad.validate(), GeometryError);
}

TEST(RunSsri, ContractionNeverResets) {
  // a(0) < 1 keeps the product recursion strictly positive.
  const SsriResult r = run_ssri(neg_identity(), config(S(0.5), 1.0, 2.0, 1.0), StepSchedule(0.5, 1.0),
                                NoiseModel(), 5000, 1);
  EXPECT_TRUE(r.trace.reset_indices().empty());
  EXPECT_FALSE(r.trace.check_indices().empty());
  for (std::size_t i = 0; i < r.traj.X.size(); ++i) {
    EXPECT_GT(r.traj.X[i](0), 0.0);
    EXPECT_LE(r.traj.X[i](0), 0.5);
  }
  const ResetSummary sum = reset_summary(r.trace, r.traj, config(S(0.5), 1.0, 2.0, 1.0));
  EXPECT_EQ(sum.total_resets, 0);
  EXPECT_EQ(sum.last_reset_index, -1);
  EXPECT_TRUE(sum.audit_ok);
}

TEST(RunSsri, WindowLongerThanHorizonGivesEmptyTrace) {
  const StepSchedule s;
  const long N = 100;
  const SsriConfig cfg = config(S(0.5), 1.0, 2.0, s.t(N) + 1.0);
  const SsriResult r = run_ssri(identity(), cfg, s, NoiseModel(), N, 1);
  EXPECT_TRUE(r.trace.windows.empty());
  const ResetSummary sum = reset_summary(r.trace, r.traj, cfg);
  EXPECT_EQ(sum.total_resets, 0);
  EXPECT_TRUE(sum.audits.empty());
  EXPECT_TRUE(sum.audit_ok);
}

TEST(RunSsri, ExpansionMatchesReferenceFlowchart) {
  const StepSchedule s(1.0, 0.7);
  const long N = 30000;
  for (double T_W : {0.5, 1.0, 2.5}) {
    const SsriConfig cfg = config(S(0.5), 1.0, 2.0, T_W);
    const SsriResult r = run_ssri(identity(), cfg, s, NoiseModel(), N, 1);
    std::vector<double> radii;
    for (int k = 0; k < 64; ++k) radii.push_back(cfg.radius.r(k));
    const RefRun ref = reference_ssri([](double x) { return x; }, 0.5, radii, T_W, s, N);
    EXPECT_EQ(r.trace.check_indices(), ref.checks);
    EXPECT_EQ(r.trace.reset_indices(), ref.resets);
    ASSERT_GE(ref.resets.size(), 3u) << T_W;
    for (std::size_t i = 0; i < ref.Xp.size(); ++i) ASSERT_NEAR(r.traj.Xp[i](0), ref.Xp[i], 1e-12 * (1 + ref.Xp[i]));
  }
}

TEST(RunSsri, DoublingAuditOnExpansion) {
  const StepSchedule s(1.0, 0.7);
  const SsriConfig cfg = config(S(0.5), 1.0, 2.0, 1.0);
  const SsriResult r = run_ssri(identity(), cfg, s, NoiseModel(), 30000, 1);
  const ResetSummary sum = reset_summary(r.trace, r.traj, cfg);
  EXPECT_TRUE(sum.audit_ok);
  EXPECT_TRUE(sum.window_elapsed_ok);
  ASSERT_GE(sum.audits.size(), 4u);
  // Gap before a check equals 2^k windows of length in [T_W, T_W + 1].
  const auto checks = r.trace.check_indices();
  const auto kper = r.trace.k_per_check();
  for (std::size_t c = 1; c < checks.size(); ++c) {
    const double width = std::ldexp(1.0, kper[c - 1]);
    const double gap = s.elapsed(checks[c - 1], checks[c]);
    EXPECT_GE(gap, width * cfg.T_W * (1 - 1e-12));
    EXPECT_LE(gap, width * (cfg.T_W + 1.0) * (1 + 1e-12));
    EXPECT_EQ(sum.audits[c].expected_windows, static_cast<long>(width));
    EXPECT_EQ(sum.audits[c].windows_since_previous, sum.audits[c].expected_windows);
  }
}

TEST(RunSsri, WindowCounterFollowsResetCount) {
  const SsriConfig cfg = config(S(0.5), 1.0, 2.0, 0.5);
  const SsriResult r = run_ssri(identity(), cfg, StepSchedule(1.0, 0.7), NoiseModel(), 20000, 1);
  int k = 0;
  long nW = 1;
  for (const auto& w : r.trace.windows) {
    EXPECT_EQ(w.n_W_before, nW);
    EXPECT_EQ(w.check, nW == 1);
    EXPECT_EQ(w.k_before, k);
    if (w.check) {
      EXPECT_DOUBLE_EQ(w.radius, cfg.radius.r(k));
      EXPECT_EQ(w.reset, w.norm > w.radius);
      if (w.reset) ++k;
      EXPECT_EQ(w.n_W_after, 1L << k);
    } else {
      EXPECT_FALSE(w.reset);
      EXPECT_EQ(w.n_W_after, nW - 1);
    }
    nW = w.n_W_after;
  }
  EXPECT_GT(k, 0);
}

TEST(RunSsri, ResetAssignsStartAndSetsChi) {
  const SsriConfig cfg = config(S(0.5), 1.0, 2.0, 1.0);
  const SsriResult r = run_ssri(identity(), cfg, StepSchedule(1.0, 0.7), NoiseModel(), 20000, 1);
  const ResetSummary sum = reset_summary(r.trace, r.traj, cfg);
  long performed = 0;
  for (std::size_t i = 0; i < r.traj.X.size(); ++i) {
    if (r.traj.performed_reset[i]) {
      ++performed;
      EXPECT_EQ(r.traj.Xp[i], cfg.x0);
      EXPECT_NE(r.traj.X[i], cfg.x0);
    }
    EXPECT_EQ(r.traj.chi[i], r.traj.performed_reset[i]);
  }
  EXPECT_EQ(sum.performed_resets, performed);
  EXPECT_EQ(sum.total_resets, performed);
  EXPECT_EQ(sum.coincidences, 0);
  EXPECT_EQ(sum.last_reset_index, r.trace.reset_indices().back());
}

TEST(RunSsri, SingleResetSummary) {
  // Expansion with a(n) = 1/(n+1): X_1 = 1 > r0 at the first check, then X stays below r1 = 60 up to n = 40.
  const StepSchedule s;
  const SsriConfig cfg = config(S(0.5), 0.6, 100.0, 1.0);
  const SsriResult r = run_ssri(identity(), cfg, s, NoiseModel(), 40, 1);
  const auto resets = r.trace.reset_indices();
  ASSERT_EQ(resets.size(), 1u);
  const ResetSummary sum = reset_summary(r.trace, r.traj, cfg);
  EXPECT_EQ(sum.total_resets, 1);
  EXPECT_EQ(sum.last_reset_index, resets[0]);
}

TEST(RunSsri, HugeRadiusIsBitwiseRunInclusion) {
  const SetValuedMap F = biased(0.2, 2);
  const Point x0 = Point::Constant(2, 0.3);
  const SsriConfig cfg = config(x0, 1e12, 2.0, 0.5);
  for (NoiseKind kind : {NoiseKind::kSphereUniform, NoiseKind::kRademacherCoordinates}) {
    RunOptions opt;
    opt.selector.strategy = Strategy::kRandomSupportDirection;
    const NoiseModel noise(kind, 1.0);
    const SsriResult r = run_ssri(F, cfg, StepSchedule(0.9, 0.8), noise, 5000, 123, opt);
    const Trajectory plain = run_inclusion(F, x0, StepSchedule(0.9, 0.8), noise, 5000, 123, opt);
    EXPECT_TRUE(r.trace.reset_indices().empty());
    ASSERT_EQ(r.traj.X.size(), plain.X.size());
    for (std::size_t i = 0; i < plain.X.size(); ++i) ASSERT_TRUE(r.traj.X[i] == plain.X[i]) << i;
    for (std::size_t i = 0; i < plain.v.size(); ++i) ASSERT_TRUE(r.traj.M[i] == plain.M[i]) << i;
  }
}

TEST(RunSsri, NoiseBoundUsesResetState) {
  const double K = 2.0;
  SsriConfig cfg = config(S(0.5), 1.0, 2.0, 0.5);
  const SsriResult r = run_ssri(biased(0.1), cfg, StepSchedule(), NoiseModel(NoiseKind::kSphereUniform, K),
                                20000, 17);
  ASSERT_FALSE(r.trace.reset_indices().empty());
  for (std::size_t k = 0; k < r.traj.M.size(); ++k) {
    EXPECT_LE(r.traj.M[k].norm(), K * (1 + r.traj.Xp[k].norm()) * (1 + 1e-15));
    const Point rebuilt = r.traj.Xp[k] + r.traj.a[k] * (r.traj.v[k] + r.traj.M[k]);
    EXPECT_TRUE(rebuilt == r.traj.X[k + 1]);
  }
  EXPECT_TRUE(reset_summary(r.trace, r.traj, cfg).audit_ok);
}

TEST(RunSsri, StartOutsideFirstBall) {
  SsriConfig cfg = config(S(50.0), 1.0, 2.0, 1.0);
  cfg.require_initial_inside = false;
  const SsriResult r = run_ssri(biased(0.1), cfg, StepSchedule(), NoiseModel(NoiseKind::kSphereUniform, 0.5),
                                20000, 3);
  const ResetSummary sum = reset_summary(r.trace, r.traj, cfg);
  EXPECT_GE(sum.total_resets, 1);
  EXPECT_TRUE(sum.audit_ok);
  cfg.require_initial_inside = true;
  EXPECT_THROW(run_ssri(biased(0.1), cfg, StepSchedule(), NoiseModel(), 10, 3), GeometryError);
}

TEST(RunSsri, DivergenceIsFlagged) {
  const SetValuedMap blow([](const Point&) { return ConvexSet::Singleton(S(1e308)); }, 1e308, 1);
  RunOptions opt;
  opt.record_parameters = false;
  const SsriResult r = run_ssri(blow, config(S(0.0), 1e300, 2.0, 100.0), StepSchedule(), NoiseModel(), 50, 1, opt);
  EXPECT_TRUE(r.traj.divergent);
  EXPECT_LT(r.traj.steps(), 50);
}

TEST(ResetSummary, RejectsMismatchedTrace) {
  const SsriConfig cfg = config(S(0.5), 1.0, 2.0, 1.0);
  const SsriResult expand = run_ssri(identity(), cfg, StepSchedule(1.0, 0.7), NoiseModel(), 20000, 1);
  const SsriResult calm = run_ssri(neg_identity(), cfg, StepSchedule(1.0, 0.7), NoiseModel(), 20000, 1);
  ASSERT_FALSE(expand.trace.reset_indices().empty());
  EXPECT_THROW(reset_summary(expand.trace, calm.traj, cfg), GeometryError);
  const SsriResult shorter = run_ssri(identity(), cfg, StepSchedule(1.0, 0.7), NoiseModel(), 10, 1);
  EXPECT_THROW(reset_summary(expand.trace, shorter.traj, cfg), GeometryError);
}
