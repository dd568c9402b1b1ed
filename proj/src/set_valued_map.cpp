#include "sri/set_valued_map.hpp"

#include "sri/directions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace sri {

SetValuedMap::SetValuedMap(Evaluator evaluate, double growth_K, int dim, std::string name)
    : evaluate_(std::move(evaluate)), growth_K_(growth_K), dim_(dim), name_(std::move(name)) {
  if (!evaluate_) throw GeometryError("SetValuedMap: empty evaluator");
  if (!(growth_K_ > 0.0) || !std::isfinite(growth_K_))
    throw GeometryError("SetValuedMap: growth constant must be positive and finite");
  if (dim_ < 1) throw GeometryError("SetValuedMap: dimension must be >= 1");
}

ConvexSet SetValuedMap::operator()(const Point& x) const {
  if (x.size() != dim_) throw GeometryError("SetValuedMap: argument has wrong dimension");
  ConvexSet y = evaluate_(x);
  if (y.dim() != dim_) throw GeometryError("SetValuedMap: value has wrong dimension");
  return y;
}

Parameter::Parameter(Point u) : u_(std::move(u)) {
  if (!u_.allFinite()) throw GeometryError("Parameter: non-finite entry");
  if (u_.norm() > 1.0 + kNormSlack) {
    std::ostringstream os;
    os << "Parameter: |u| = " << u_.norm() << " exceeds 1";
    throw GeometryError(os.str());
  }
}

Point parametrized_selection(const SetValuedMap& F, const Point& x, const Parameter& u,
                             const SelectionOptions& opt) {
  if (u.value().size() != F.dim()) throw GeometryError("parametrized_selection: parameter dimension");
  const ConvexSet Y = F(x);
  const Point target = F.growth_K() * (1.0 + x.norm()) * u.value();
  const ConvexSet clipped = project_pi(Y, target, opt.clip);
  if (clipped.is_singleton()) return clipped.vertices().col(0);
  return steiner_point(clipped, opt.steiner);
}

Parameter recover_parameter(const SetValuedMap& F, const Point& x, const Point& v, double tol) {
  const ConvexSet Y = F(x);
  const double dist = point_set_distance(v, Y);
  const double slack = tol * (1.0 + max_norm(Y));
  if (dist > slack) {
    std::ostringstream os;
    os << "recover_parameter: point lies " << dist << " outside F(x)";
    throw GeometryError(os.str());
  }
  Point u = v / (F.growth_K() * (1.0 + x.norm()));
  const double n = u.norm();
  if (n > 1.0 + Parameter::kNormSlack) {
    if (n > 1.0 + 1e-9) {
      std::ostringstream os;
      os << "recover_parameter: growth bound violated at x (|u| = " << n << ")";
      throw GeometryError(os.str());
    }
    u /= n;
  }
  return Parameter(std::move(u));
}

double dilation_radius(int l) { return 2.0 * std::pow(3.0, -l); }

namespace {

PointMatrix unit_sample_grid(int dim, int n_samples) {
  if (dim == 1) {
    int n = std::max(3, n_samples);
    if (n % 2 == 0) ++n;
    PointMatrix g(1, n);
    for (int i = 0; i < n; ++i) g(0, i) = -1.0 + 2.0 * i / (n - 1);
    g(0, n / 2) = 0.0;
    return g;
  }
  const PointMatrix ring = direction_grid(dim, std::max(2 * dim, n_samples - 1));
  PointMatrix g(dim, ring.cols() + 1);
  g.col(0).setZero();
  g.rightCols(ring.cols()) = ring;
  return g;
}

int default_samples(int dim) { return dim == 1 ? 9 : (dim == 2 ? 17 : 33); }

}  // namespace

SetValuedMap dilate_map(const SetValuedMap& F, int l, int n_samples, const DilationOptions& opt) {
  if (l < 1) throw GeometryError("dilate_map: level must be >= 1");
  const int dim = F.dim();
  if (n_samples == 0) n_samples = opt.n_samples > 0 ? opt.n_samples : default_samples(dim);
  if (n_samples < 2 * dim) throw GeometryError("dilate_map: n_samples must be >= 2 * dimension");
  const double rho = dilation_radius(l);

  // Offsets: center once, then the nonzero unit-grid points at every shell.
  const PointMatrix unit = unit_sample_grid(dim, n_samples);
  std::vector<Point> offsets{Point::Zero(dim)};
  for (int j = 0; j < std::max(1, opt.scales); ++j) {
    const double r = rho * std::pow(3.0, -j);
    for (Eigen::Index c = 0; c < unit.cols(); ++c) {
      if (unit.col(c).norm() == 0.0) continue;
      offsets.push_back(r * unit.col(c));
    }
  }

  const int facets = std::max(8, opt.ball_facets);
  const PointMatrix ball_dirs = direction_grid(dim, facets);
  // Radius factor that makes the polygon on ball_dirs circumscribe the ball.
  double circ = 1.0;
  if (dim == 2) {
    circ = 1.0 / std::cos(std::numbers::pi / static_cast<double>(ball_dirs.cols()));
  } else if (dim > 2) {
    const double cover = 2.0 * std::sqrt(4.0 * std::numbers::pi / static_cast<double>(ball_dirs.cols()));
    circ = 1.0 / std::cos(std::min(cover, 1.2));
  }

  auto evaluate = [F, offsets = std::move(offsets), ball_dirs, circ](const Point& x) {
    std::vector<ConvexSet> values;
    values.reserve(offsets.size());
    double r_min = std::numeric_limits<double>::infinity();
    double r_max = 0.0;
    Eigen::Index n_vert = 0;
    for (const auto& o : offsets) {
      values.push_back(F(Point(x + o)));
      r_min = std::min(r_min, values.back().radius());
      r_max = std::max(r_max, values.back().radius());
      n_vert += values.back().vertices().cols();
    }
    const bool uniform = r_max - r_min <= 1e-15 * (1.0 + r_max);
    std::vector<Point> verts;
    verts.reserve(static_cast<std::size_t>(n_vert));
    for (const auto& y : values) {
      const double excess = y.radius() - r_min;
      for (Eigen::Index c = 0; c < y.vertices().cols(); ++c) {
        if (uniform || excess <= 0.0) {
          verts.emplace_back(y.vertices().col(c));
        } else {
          const double rr = y.dim() == 1 ? excess : excess * circ;
          for (Eigen::Index k = 0; k < ball_dirs.cols(); ++k)
            verts.emplace_back(y.vertices().col(c) + rr * ball_dirs.col(k));
        }
      }
    }
    PointMatrix V = ConvexSet::Hull(verts).vertices();
    if (V.rows() == 1) {
      PointMatrix ends(1, 2);
      ends << V.minCoeff(), V.maxCoeff();
      V = ends;
    } else if (V.rows() == 2) {
      V = detail::planar_hull<double>(V);
    }
    if (r_min > 0.0) return ConvexSet::HullBall(std::move(V), r_min);
    return ConvexSet::Hull(std::move(V));
  };
  const double K_l = F.growth_K() * (1.0 + rho) * (dim == 1 ? 1.0 : circ);
  return SetValuedMap(std::move(evaluate), K_l, dim,
                      F.name() + "^(" + std::to_string(l) + ")");
}

GrowthReport growth_check(const SetValuedMap& F, const std::vector<Point>& samples) {
  if (samples.empty()) throw GeometryError("growth_check: empty sample list");
  GrowthReport rep;
  for (const auto& x : samples) {
    const double sup = max_norm(F(x));
    const double bound = F.growth_K() * (1.0 + x.norm());
    rep.max_ratio = std::max(rep.max_ratio, sup / bound);
    if (sup > bound * (1.0 + 1e-12) + 1e-12) rep.violations.push_back({x, sup, bound});
    ++rep.checked;
  }
  return rep;
}

}  // namespace sri
