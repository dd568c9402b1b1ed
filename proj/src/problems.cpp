#include "sri/problems.hpp"

#include <cmath>

namespace sri {

namespace {

std::vector<Point> line_grid(double lo, double hi, int n) {
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) out.push_back(Point::Constant(1, lo + (hi - lo) * i / (n - 1)));
  return out;
}

}  // namespace

ProblemSpec make_biased_linear(double eps, int dim) {
  if (!(eps > 0.0)) throw GeometryError("biased_linear: eps must be positive");
  if (dim < 1) throw GeometryError("biased_linear: dimension must be >= 1");
  const double K = 1.0 + eps;
  SetValuedMap F([eps](const Point& x) { return ConvexSet::Ball(-x, eps); }, K, dim, "biased_linear");
  AttractorSpec att;
  att.A = ConvexSet::Ball(Point::Zero(dim), eps);
  att.O_prime_radius = 2.0;
  att.O_radius = 3.0;
  att.eps0 = 0.3;
  // x' = -x + eps from |x| = 3 reaches |x| = eps + eps0 after ln((3 - eps) / eps0).
  att.T_A = std::max(2.3, std::ceil(10.0 * std::log((3.0 - eps) / att.eps0)) / 10.0);
  att.T_u = att.T_A + 1.0;
  att.validate();
  ProblemSpec p{"biased_linear", F, att, StepSchedule(1.0, 1.0),
                NoiseModel(NoiseKind::kSphereUniform, 0.5), 1.0, {}, {}};
  p.notes["K"] = "sup |y| over Ball(-x, eps) is |x| + eps <= (1 + eps)(1 + |x|)";
  p.notes["L"] = "H(Ball(-x, eps), Ball(-y, eps)) = |x - y|";
  p.notes["T_A"] = "worst case x' = -x + eps from |x| = O radius to eps + eps0: ln((3 - eps) / eps0)";
  p.notes["A"] = "globally attracting: every solution enters Ball(0, eps + delta) for all delta > 0";
  if (dim == 1) {
    p.growth_grid = line_grid(-5.0, 5.0, 41);
  } else {
    p.growth_grid = ball_grid(Point::Zero(dim), 5.0, 5, true);
  }
  return p;
}

ProblemSpec make_sign_subgradient() {
  constexpr double kSnap = 1e-12;
  SetValuedMap F(
      [](const Point& x) {
        if (std::abs(x(0)) <= kSnap) {
          PointMatrix v(1, 2);
          v << -1.0, 1.0;
          return ConvexSet::Hull(std::move(v));
        }
        return ConvexSet::Singleton(Point::Constant(1, x(0) > 0.0 ? -1.0 : 1.0));
      },
      1.0, 1, "sign_subgradient");
  AttractorSpec att;
  att.A = ConvexSet::Singleton(Point::Zero(1));
  att.O_prime_radius = 1.0;
  att.O_radius = 2.0;
  att.eps0 = 0.2;
  att.T_A = 2.0;
  att.T_u = 3.0;
  att.validate();
  ProblemSpec p{"sign_subgradient", F, att, StepSchedule(1.0, 1.0),
                NoiseModel(NoiseKind::kSphereUniform, 0.5), 0.0, {}, {}};
  // F is not Lipschitz; L is a difference-quotient estimate for F^(1) over
  // pairs at least 2 * 3^{-1} apart in |x| <= O radius.
  p.L = estimate_lipschitz(dilate_map(F, 1), Point::Zero(1), att.O_radius, 2.0 / 3.0, 400, 0x1e57);
  p.notes["K"] = "values lie in [-1, 1], so sup |y| <= 1 <= 1 + |x|";
  p.notes["L"] = "sampled Hausdorff difference quotients of F^(1), pairs separated by >= 2/3";
  p.notes["T_A"] = "x' = -sign(x) from |x| = 2 reaches |x| = 0.2 at t = 1.8";
  p.notes["snap"] = "|x| <= 1e-12 is treated as 0";
  p.growth_grid = line_grid(-5.0, 5.0, 41);
  return p;
}

ProblemSpec make_local_basin() {
  SetValuedMap F(
      [](const Point& x) {
        const double y = x(0);
        double f = -y;
        if (y > 1.0) f = y - 2.0;
        else if (y < -1.0) f = y + 2.0;
        return ConvexSet::Singleton(Point::Constant(1, f));
      },
      3.0, 1, "local_basin");
  AttractorSpec att;
  att.A = ConvexSet::Singleton(Point::Zero(1));
  att.O_prime_radius = 1.5;
  att.O_radius = 1.9;
  att.eps0 = 0.2;
  // From |x| = 1.9: 2 - 0.1 e^t reaches 1 at ln 10, then e^{-t} reaches 0.2 after ln 5.
  att.T_A = 4.0;
  att.T_u = 5.0;
  att.validate();
  ProblemSpec p{"local_basin", F, att, StepSchedule(0.5, 1.0),
                NoiseModel(NoiseKind::kSphereUniform, 0.5), 1.0, {}, {}};
  p.notes["K"] = "|f(x)| <= |x| + 2 <= 3 (1 + |x|)";
  p.notes["L"] = "every piece has slope of modulus 1";
  p.notes["T_A"] = "ln 10 + ln 5 = ln 50 ~ 3.91 from the boundary of O, rounded up to 4";
  p.notes["basin"] = "(-2, 2); the equilibria +-2 are unstable";
  p.growth_grid = line_grid(-5.0, 5.0, 41);
  return p;
}

std::vector<ProblemSpec> list_problems() {
  return {make_biased_linear(), make_sign_subgradient(), make_local_basin()};
}

ProblemSpec make_problem(const std::string& id, int dim, double eps) {
  if (id == "biased_linear") return make_biased_linear(eps, dim);
  if (dim != 1) throw GeometryError("problem '" + id + "' is one-dimensional");
  if (id == "sign_subgradient") return make_sign_subgradient();
  if (id == "local_basin") return make_local_basin();
  throw GeometryError("unknown problem '" + id + "'");
}

}  // namespace sri
