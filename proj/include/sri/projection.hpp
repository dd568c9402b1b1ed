#pragma once

#include "sri/convex_set.hpp"

#include <cmath>
#include <vector>

namespace sri {

struct ClipOptions {
  int n_dirs = 64;
  int bisection_steps = 48;
};

namespace detail {

// Supporting point, in direction u, of Y ∩ B(x, R) where d(x,Y) < R.
//
// For s > 0 the point y(s) = proj_Y(x + s u) maximizes <y,u> - |y-x|^2/(2s)
// over Y, so |y(s) - x| is nondecreasing in s. Bisection on s finds the
// multiplier at which y(s) reaches the sphere |y - x| = R; that y maximizes
// <y,u> over the intersection.
template <typename Scalar>
VectorX<Scalar> clipped_support_point(const CompactConvexSet<Scalar>& Y, const VectorX<Scalar>& x,
                                      const VectorX<Scalar>& u, Scalar R, Scalar delta,
                                      int bisection_steps) {
  using Vector = VectorX<Scalar>;
  const Vector top = support_point(Y, u);
  if ((top - x).norm() <= R) return top;
  auto at = [&](Scalar s) { return project_point(Y, Vector(x + s * u)).point; };
  Scalar lo = Scalar(0);
  Scalar hi = std::max(delta, Scalar(1e-300));
  Vector y_hi = at(hi);
  Scalar g_prev = -Scalar(1);
  for (int k = 0; k < 200; ++k) {
    const Scalar g = (y_hi - x).norm();
    if (g >= R) break;
    // The projection no longer moves: the face is reached inside the ball.
    if (k > 8 && std::abs(g - g_prev) <= Scalar(1e-15) * (Scalar(1) + R)) return y_hi;
    g_prev = g;
    lo = hi;
    hi *= Scalar(2);
    y_hi = at(hi);
  }
  Vector y_lo = at(lo);
  for (int it = 0; it < bisection_steps; ++it) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    Vector y = at(mid);
    if ((y - x).norm() <= R) {
      lo = mid;
      y_lo = std::move(y);
    } else {
      hi = mid;
    }
  }
  return y_lo;
}

}  // namespace detail

/// Clipped projection Pi(Y, x) = Y ∩ (x + 2 d(x,Y) U).
///
/// Returns a Hull inscribed in the exact intersection: its vertices are the
/// supporting points of the intersection along `n_dirs` grid directions
/// (see direction_grid), each located by the bisection documented in
/// detail::clipped_support_point. In dimension 1 the result is exact. When x
/// lies in Y the result is the singleton {x}.
template <typename Scalar>
CompactConvexSet<Scalar> project_pi(const CompactConvexSet<Scalar>& Y, const VectorX<Scalar>& x,
                                    const ClipOptions& opt = {}) {
  using Vector = VectorX<Scalar>;
  using Set = CompactConvexSet<Scalar>;
  const auto proj = project_point(Y, x);
  const Scalar scale = Scalar(1) + max_norm(Y) + x.norm();
  if (proj.distance <= Scalar(1e-14) * scale) return Set::Singleton(x);
  const Scalar delta = proj.distance;
  const Scalar R = Scalar(2) * delta;

  if (Y.dim() == 1) {
    const Scalar lo = std::max(Y.vertices().minCoeff() - Y.radius(), x(0) - R);
    const Scalar hi = std::min(Y.vertices().maxCoeff() + Y.radius(), x(0) + R);
    if (hi - lo <= Scalar(0)) return Set::Singleton(Vector::Constant(1, lo));
    MatrixX<Scalar> v(1, 2);
    v << lo, hi;
    return Set::Hull(std::move(v));
  }

  const MatrixX<Scalar> dirs = direction_grid<Scalar>(Y.dim(), opt.n_dirs);
  std::vector<Vector> pts;
  pts.reserve(static_cast<std::size_t>(dirs.cols()));
  const Scalar dup_tol = Scalar(1e-12) * scale;
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    Vector p = detail::clipped_support_point<Scalar>(Y, x, dirs.col(i), R, delta, opt.bisection_steps);
    bool dup = false;
    for (const auto& q : pts) {
      if ((q - p).norm() <= dup_tol) {
        dup = true;
        break;
      }
    }
    if (!dup) pts.push_back(std::move(p));
  }
  return Set::Hull(pts);
}

}  // namespace sri
