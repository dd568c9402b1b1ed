#pragma once

#include "sri/directions.hpp"
#include "sri/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace sri {

/// A nonempty compact convex subset of R^d in one of three forms:
///   Ball      center + radius * U
///   Hull      conv(vertices)
///   HullBall  conv(vertices) + radius * U   (Minkowski sum)
/// Vertices are stored column-wise. A Ball keeps its center as the single
/// vertex column, so every form is "vertices plus radius" internally.
template <typename Scalar>
class CompactConvexSet {
 public:
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;

  enum class Kind { kBall, kHull, kHullBall };

  static CompactConvexSet Ball(Vector center, Scalar radius) {
    Matrix v = center;
    return CompactConvexSet(Kind::kBall, std::move(v), radius);
  }
  static CompactConvexSet Hull(Matrix vertices) {
    return CompactConvexSet(Kind::kHull, std::move(vertices), Scalar(0));
  }
  static CompactConvexSet Hull(const std::vector<Vector>& points) {
    if (points.empty()) throw GeometryError("Hull: vertex list must be nonempty");
    Matrix v(points.front().size(), static_cast<Eigen::Index>(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (points[j].size() != v.rows()) throw GeometryError("Hull: vertices of mixed dimension");
      v.col(static_cast<Eigen::Index>(j)) = points[j];
    }
    return Hull(std::move(v));
  }
  static CompactConvexSet HullBall(Matrix vertices, Scalar radius) {
    return CompactConvexSet(Kind::kHullBall, std::move(vertices), radius);
  }
  static CompactConvexSet Singleton(const Vector& p) {
    Matrix v = p;
    return Hull(std::move(v));
  }

  Kind kind() const { return kind_; }
  int dim() const { return static_cast<int>(vertices_.rows()); }
  const Matrix& vertices() const { return vertices_; }
  Scalar radius() const { return radius_; }
  /// Ball center; for the other forms the first vertex.
  Vector center() const { return vertices_.col(0); }
  bool is_singleton() const { return radius_ == Scalar(0) && vertices_.cols() == 1; }
  /// True when the radius part vanishes, i.e. the set is a plain polytope.
  bool is_polytope() const { return radius_ == Scalar(0); }

 private:
  CompactConvexSet(Kind kind, Matrix vertices, Scalar radius)
      : kind_(kind), vertices_(std::move(vertices)), radius_(radius) {
    if (vertices_.cols() < 1) throw GeometryError("CompactConvexSet: vertex list must be nonempty");
    if (vertices_.rows() < 1) throw GeometryError("CompactConvexSet: dimension must be >= 1");
    if (!(radius_ >= Scalar(0)) || !std::isfinite(static_cast<double>(radius_)))
      throw GeometryError("CompactConvexSet: radius must be finite and >= 0");
    if (!vertices_.allFinite()) throw GeometryError("CompactConvexSet: non-finite vertex");
  }

  Kind kind_;
  Matrix vertices_;
  Scalar radius_;
};

using ConvexSet = CompactConvexSet<double>;

namespace detail {

template <typename Scalar>
void require_same_dim(int a, int b, const char* where) {
  if (a != b)
    throw GeometryError(std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                        " vs " + std::to_string(b) + ")");
}

/// Minimum-norm point of conv(columns of P) by Wolfe's active-set method.
/// Finite in exact arithmetic; the iteration cap only guards roundoff cycling.
template <typename Scalar>
VectorX<Scalar> min_norm_point(const MatrixX<Scalar>& P) {
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;
  const Eigen::Index m = P.cols();
  if (m == 1) return P.col(0);

  Eigen::Index j0 = 0;
  const Scalar scale = P.colwise().squaredNorm().maxCoeff();
  if (scale == Scalar(0)) return Vector::Zero(P.rows());
  P.colwise().squaredNorm().minCoeff(&j0);
  const Scalar gap_tol = Scalar(1e-14) * scale;

  std::vector<Eigen::Index> active{j0};
  std::vector<Scalar> lambda{Scalar(1)};
  Vector w = P.col(j0);

  const int max_major = 20 * static_cast<int>(m) + 50;
  for (int major = 0; major < max_major; ++major) {
    Eigen::Index j = 0;
    const Vector g = P.transpose() * w;
    const Scalar best = g.minCoeff(&j);
    if (w.squaredNorm() - best <= gap_tol) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    lambda.push_back(Scalar(0));

    bool stalled = false;
    for (int minor = 0; minor < 4 * static_cast<int>(m) + 8; ++minor) {
      const auto k = static_cast<Eigen::Index>(active.size());
      Matrix Q(P.rows(), k);
      for (Eigen::Index i = 0; i < k; ++i) Q.col(i) = P.col(active[static_cast<std::size_t>(i)]);
      // Affine minimizer: argmin |Q a|^2 s.t. sum a = 1, via (Q^T Q + 1 1^T) a ∝ 1.
      Matrix H = Q.transpose() * Q;
      H.array() += Scalar(1);
      Vector alpha = H.completeOrthogonalDecomposition().solve(Vector::Ones(k));
      alpha /= alpha.sum();
      if ((alpha.array() > Scalar(1e-13)).all()) {
        for (Eigen::Index i = 0; i < k; ++i) lambda[static_cast<std::size_t>(i)] = alpha(i);
        w = Q * alpha;
        break;
      }
      Scalar theta = Scalar(1);
      Eigen::Index drop = -1;
      for (Eigen::Index i = 0; i < k; ++i) {
        const Scalar li = lambda[static_cast<std::size_t>(i)];
        if (alpha(i) <= Scalar(1e-13)) {
          const Scalar denom = li - alpha(i);
          const Scalar t = denom > Scalar(0) ? li / denom : Scalar(0);
          if (t < theta) {
            theta = t;
            drop = i;
          }
        }
      }
      if (drop == k - 1 && lambda.back() == Scalar(0)) {
        // The entering point cannot carry weight: roundoff; keep the old iterate.
        active.pop_back();
        lambda.pop_back();
        stalled = true;
        break;
      }
      std::vector<Eigen::Index> next_active;
      std::vector<Scalar> next_lambda;
      for (Eigen::Index i = 0; i < k; ++i) {
        const auto si = static_cast<std::size_t>(i);
        const Scalar li = lambda[si] + theta * (alpha(i) - lambda[si]);
        if (i == drop || li <= Scalar(0)) continue;
        next_active.push_back(active[si]);
        next_lambda.push_back(li);
      }
      Scalar total = Scalar(0);
      for (Scalar li : next_lambda) total += li;
      for (Scalar& li : next_lambda) li /= total;
      active = std::move(next_active);
      lambda = std::move(next_lambda);
      w = Vector::Zero(P.rows());
      for (std::size_t i = 0; i < active.size(); ++i) w += lambda[i] * P.col(active[i]);
    }
    if (stalled) break;
  }
  return w;
}

}  // namespace detail

/// Result of projecting a point onto a set.
template <typename Scalar>
struct Projection {
  VectorX<Scalar> point;
  Scalar distance;
};

/// h_Y(u) = sup_{y in Y} <y,u>.
template <typename Scalar>
Scalar support_function(const CompactConvexSet<Scalar>& Y, const VectorX<Scalar>& u) {
  detail::require_same_dim<Scalar>(Y.dim(), static_cast<int>(u.size()), "support_function");
  const Scalar un = u.norm();
  if (un == Scalar(0)) throw GeometryError("support_function: zero direction");
  const Scalar hull_max = (Y.vertices().transpose() * u).maxCoeff();
  return hull_max + Y.radius() * un;
}

/// A maximizer of <y,u> over Y (first maximizing vertex on ties).
template <typename Scalar>
VectorX<Scalar> support_point(const CompactConvexSet<Scalar>& Y, const VectorX<Scalar>& u) {
  detail::require_same_dim<Scalar>(Y.dim(), static_cast<int>(u.size()), "support_point");
  const Scalar un = u.norm();
  if (un == Scalar(0)) throw GeometryError("support_point: zero direction");
  Eigen::Index j = 0;
  (Y.vertices().transpose() * u).maxCoeff(&j);
  VectorX<Scalar> p = Y.vertices().col(j);
  if (Y.radius() > Scalar(0)) p += (Y.radius() / un) * u;
  return p;
}

/// sup_{y in Y} |y|.
template <typename Scalar>
Scalar max_norm(const CompactConvexSet<Scalar>& Y) {
  return Y.vertices().colwise().norm().maxCoeff() + Y.radius();
}

/// sup_{y in Y} |y - c|.
template <typename Scalar>
Scalar radius_about(const CompactConvexSet<Scalar>& Y, const VectorX<Scalar>& c) {
  detail::require_same_dim<Scalar>(Y.dim(), static_cast<int>(c.size()), "radius_about");
  return (Y.vertices().colwise() - c).colwise().norm().maxCoeff() + Y.radius();
}

/// Nearest point of Y to x and the distance d(x,Y).
template <typename Scalar>
Projection<Scalar> project_point(const CompactConvexSet<Scalar>& Y, const VectorX<Scalar>& x) {
  using Vector = VectorX<Scalar>;
  detail::require_same_dim<Scalar>(Y.dim(), static_cast<int>(x.size()), "point_set_distance");
  Vector q;
  if (Y.dim() == 1) {
    const Scalar lo = Y.vertices().minCoeff();
    const Scalar hi = Y.vertices().maxCoeff();
    q = Vector::Constant(1, std::clamp(x(0), lo, hi));
  } else if (Y.vertices().cols() == 1) {
    q = Y.vertices().col(0);
  } else {
    q = x + detail::min_norm_point<Scalar>(Y.vertices().colwise() - x);
  }
  const Scalar dq = (x - q).norm();
  const Scalar r = Y.radius();
  if (dq <= r) return {x, Scalar(0)};
  Vector p = r > Scalar(0) ? Vector(q + (r / dq) * (x - q)) : q;
  return {std::move(p), dq - r};
}

/// d(x,Y) = inf_{y in Y} |x - y|.
template <typename Scalar>
Scalar point_set_distance(const VectorX<Scalar>& x, const CompactConvexSet<Scalar>& Y) {
  return project_point(Y, x).distance;
}

template <typename Scalar>
bool contains(const CompactConvexSet<Scalar>& Y, const VectorX<Scalar>& x,
              Scalar tol = Scalar(kMembershipTol)) {
  return point_set_distance(x, Y) <= tol;
}

/// Direction-grid controls for Hausdorff distances that involve a ball part.
struct HausdorffOptions {
  int n_dirs = 0;       // 0 selects 1024 (d=2), 4096 (d=3), 8192 (d>3)
  int refine_seeds = 4;  // grid maxima polished by a local search on the sphere
};

inline int default_hausdorff_dirs(int dim) {
  return dim == 2 ? 1024 : (dim == 3 ? 4096 : 8192);
}

namespace detail {

// Orthonormal basis of the tangent space at unit vector u (columns).
template <typename Scalar>
MatrixX<Scalar> tangent_basis(const VectorX<Scalar>& u) {
  const auto d = u.size();
  MatrixX<Scalar> A(d, d);
  A.col(0) = u;
  Eigen::Index k = 0;
  u.cwiseAbs().minCoeff(&k);
  for (Eigen::Index i = 1; i < d; ++i) A.col(i) = VectorX<Scalar>::Unit(d, (k + i) % d);
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(A);
  MatrixX<Scalar> Q = qr.householderQ();
  return Q.rightCols(d - 1);
}

// Maximize f over the unit sphere from a starting direction by compass search.
template <typename Scalar, typename F>
Scalar polish_on_sphere(F&& f, VectorX<Scalar> u, Scalar value, Scalar step) {
  MatrixX<Scalar> basis = tangent_basis<Scalar>(u);
  while (step > Scalar(1e-10)) {
    bool improved = false;
    for (Eigen::Index t = 0; t < basis.cols() && !improved; ++t) {
      for (Scalar sgn : {Scalar(1), Scalar(-1)}) {
        VectorX<Scalar> cand = u + (sgn * step) * basis.col(t);
        cand.normalize();
        const Scalar fc = f(cand);
        if (fc > value) {
          value = fc;
          u = cand;
          basis = tangent_basis<Scalar>(u);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= Scalar(0.5);
  }
  return value;
}

}  // namespace detail

/// Hausdorff distance H(Y1,Y2).
///
/// Exact for pairs of polytopes (max over vertices of the point-to-set
/// distance in both directions), for pairs of balls, and in dimension 1.
/// Otherwise it is sup_{|u|=1} |h1(u) - h2(u)| evaluated on the direction
/// grid of HausdorffOptions and polished locally around the best grid
/// directions; this is a lower estimate that is exact in the limit.
template <typename Scalar>
Scalar hausdorff(const CompactConvexSet<Scalar>& Y1, const CompactConvexSet<Scalar>& Y2,
                 const HausdorffOptions& opt = {}) {
  using Vector = VectorX<Scalar>;
  detail::require_same_dim<Scalar>(Y1.dim(), Y2.dim(), "hausdorff");
  const int d = Y1.dim();
  if (d == 1) {
    const Scalar hi = std::abs((Y1.vertices().maxCoeff() + Y1.radius()) -
                               (Y2.vertices().maxCoeff() + Y2.radius()));
    const Scalar lo = std::abs((Y1.vertices().minCoeff() - Y1.radius()) -
                               (Y2.vertices().minCoeff() - Y2.radius()));
    return std::max(hi, lo);
  }
  if (Y1.is_polytope() && Y2.is_polytope()) {
    Scalar h = Scalar(0);
    for (Eigen::Index j = 0; j < Y1.vertices().cols(); ++j)
      h = std::max(h, point_set_distance<Scalar>(Y1.vertices().col(j), Y2));
    for (Eigen::Index j = 0; j < Y2.vertices().cols(); ++j)
      h = std::max(h, point_set_distance<Scalar>(Y2.vertices().col(j), Y1));
    return h;
  }
  if (Y1.vertices().cols() == 1 && Y2.vertices().cols() == 1) {
    return (Y1.center() - Y2.center()).norm() + std::abs(Y1.radius() - Y2.radius());
  }
  const int n = opt.n_dirs > 0 ? opt.n_dirs : default_hausdorff_dirs(d);
  const MatrixX<Scalar> dirs = direction_grid<Scalar>(d, n);
  auto gap = [&](const Vector& u) {
    return std::abs(support_function(Y1, u) - support_function(Y2, u));
  };
  std::vector<std::pair<Scalar, Eigen::Index>> vals;
  vals.reserve(static_cast<std::size_t>(dirs.cols()));
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) vals.emplace_back(gap(dirs.col(i)), i);
  const auto seeds = std::min<std::size_t>(static_cast<std::size_t>(std::max(opt.refine_seeds, 0)),
                                           vals.size());
  std::partial_sort(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(seeds), vals.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  Scalar best = vals.front().first;
  // Angular spacing of the grid, used as the initial polish step.
  const Scalar spacing = d == 2 ? Scalar(2 * std::numbers::pi) / Scalar(dirs.cols())
                                : std::sqrt(Scalar(4 * std::numbers::pi) / Scalar(dirs.cols()));
  for (std::size_t s = 0; s < seeds; ++s) {
    best = std::max(best, detail::polish_on_sphere<Scalar>(gap, Vector(dirs.col(vals[s].second)),
                                                           vals[s].first, spacing));
  }
  return best;
}

}  // namespace sri
