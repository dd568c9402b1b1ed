#pragma once

#include "sri/convex_set.hpp"
#include "sri/projection.hpp"
#include "sri/steiner.hpp"
#include "sri/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sri {

/// A set-valued drift map x -> F(x) with a declared linear-growth constant:
/// sup_{y in F(x)} |y| <= growth_K (1 + |x|).
class SetValuedMap {
 public:
  using Evaluator = std::function<ConvexSet(const Point&)>;

  SetValuedMap(Evaluator evaluate, double growth_K, int dim, std::string name = {});

  ConvexSet operator()(const Point& x) const;

  double growth_K() const { return growth_K_; }
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

 private:
  Evaluator evaluate_;
  double growth_K_;
  int dim_;
  std::string name_;
};

/// Element of the closed unit ball U used to parametrize a set-valued map.
class Parameter {
 public:
  static constexpr double kNormSlack = 1e-12;

  explicit Parameter(Point u);

  const Point& value() const { return u_; }
  double norm() const { return u_.norm(); }

 private:
  Point u_;
};

struct SelectionOptions {
  ClipOptions clip{};
  SteinerOptions steiner{};
};

/// f(x,u) = steiner_point(project_pi(F(x), growth_K (1 + |x|) u)).
Point parametrized_selection(const SetValuedMap& F, const Point& x, const Parameter& u,
                             const SelectionOptions& opt = {});

/// u = v / (growth_K (1 + |x|)) for v in F(x); inverts parametrized_selection
/// on F(x) because the target point then lies in F(x) and the clipped set is
/// the singleton {v}. Throws GeometryError when v is outside F(x) by more than
/// `tol` (absolute plus relative to the set's size) or when the declared growth
/// bound is violated at x.
Parameter recover_parameter(const SetValuedMap& F, const Point& x, const Point& v,
                            double tol = kMembershipTol);

/// Radius 2 * 3^{-l} of the dilation ball at level l.
double dilation_radius(int l);

/// Sampling layout of dilate_map: a unit grid (the center plus n_samples - 1
/// boundary directions; in 1-D an odd uniform grid of [-1,1]) replicated at
/// the radii rho_l * 3^{-j}, j = 0..scales-1. Level l+1 then re-uses every
/// shell of level l except the innermost, so the containment chain between
/// consecutive levels holds up to the variation of F over that innermost
/// shell (radius below 1e-8 * rho_l by default).
struct DilationOptions {
  int n_samples = 0;  // 0: 9 in 1-D, 17 in 2-D, 33 otherwise
  int scales = 18;
  int ball_facets = 32;  // circumscribing polygon for balls of unequal radius
};

/// F^(l)(x) := co( union of F(x_j) ) over the sample grid {x_j} of the closed
/// ball x + 2*3^{-l} U. When every sampled value shares one radius r the hull
/// is kept exactly as HullBall(vertices, r); otherwise the excess radius of
/// each value is covered by a circumscribing polygon (exact in 1-D and 2-D).
/// The returned map declares K^(l) = growth_K (1 + 2*3^{-l}) times the
/// circumscription factor.
SetValuedMap dilate_map(const SetValuedMap& F, int l, int n_samples = 0,
                        const DilationOptions& opt = {});

struct GrowthViolation {
  Point x;
  double sup_norm;
  double bound;
};

struct GrowthReport {
  std::size_t checked = 0;
  double max_ratio = 0.0;  // max of sup_norm / bound over samples
  std::vector<GrowthViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Compares sup_{y in F(x)} |y| = max_{|u|=1} h_{F(x)}(u) with growth_K (1+|x|).
GrowthReport growth_check(const SetValuedMap& F, const std::vector<Point>& samples);

}  // namespace sri
