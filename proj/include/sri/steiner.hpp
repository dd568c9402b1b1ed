#pragma once

#include "sri/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

namespace sri {

// Smallest accepted quadrature order.
inline constexpr int kMinSteinerOrder = 8;

struct SteinerOptions {
  // d = 2: 32 * quad_order equally spaced angles.
  // d = 3: quad_order Gauss-Legendre nodes in z times 2 * quad_order angles.
  // d > 3: 64 * quad_order antithetic Monte Carlo pairs from a fixed seed.
  int quad_order = 64;
  // Accepted residual between the rule and its half-order companion,
  // relative to the set's extent about its vertex mean.
  double rel_tol = 5e-3;
};

namespace detail {

// Positive-weight rule on S^{d-1} with sum of weights = |S^{d-1}|, plus a
// coarser companion rule used for the residual estimate.
template <typename Scalar>
struct SphereRule {
  MatrixX<Scalar> nodes, coarse_nodes;
  VectorX<Scalar> weights, coarse_weights;
  Scalar kappa;  // volume of the unit d-ball
};

template <typename Scalar>
void gauss_legendre(int n, VectorX<Scalar>& x, VectorX<Scalar>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    x(i) = Scalar(z);
    w(i) = Scalar(2.0 / ((1.0 - z * z) * dp * dp));
  }
}

template <typename Scalar>
void product_rule_3d(int nz, MatrixX<Scalar>& U, VectorX<Scalar>& W) {
  VectorX<Scalar> z, wz;
  gauss_legendre<Scalar>(nz, z, wz);
  const int nphi = 2 * nz;
  U.resize(3, nz * nphi);
  W.resize(nz * nphi);
  for (int i = 0; i < nz; ++i) {
    const Scalar rho = std::sqrt(std::max(Scalar(0), Scalar(1) - z(i) * z(i)));
    for (int j = 0; j < nphi; ++j) {
      const Scalar phi = Scalar(2 * std::numbers::pi) * Scalar(j) / Scalar(nphi);
      const int c = i * nphi + j;
      U(0, c) = rho * std::cos(phi);
      U(1, c) = rho * std::sin(phi);
      U(2, c) = z(i);
      W(c) = wz(i) * Scalar(2 * std::numbers::pi) / Scalar(nphi);
    }
  }
}

template <typename Scalar>
SphereRule<Scalar> build_sphere_rule(int d, int q) {
  SphereRule<Scalar> r;
  r.kappa = Scalar(std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0));
  if (d == 2) {
    const int n = 32 * q;
    r.nodes.resize(2, n);
    for (int i = 0; i < n; ++i) {
      const Scalar th = Scalar(2 * std::numbers::pi) * Scalar(i) / Scalar(n);
      r.nodes(0, i) = std::cos(th);
      r.nodes(1, i) = std::sin(th);
    }
    r.weights = VectorX<Scalar>::Constant(n, Scalar(2 * std::numbers::pi) / Scalar(n));
    // Every other angle.
    r.coarse_nodes.resize(2, n / 2);
    for (int i = 0; i < n / 2; ++i) r.coarse_nodes.col(i) = r.nodes.col(2 * i);
    r.coarse_weights = VectorX<Scalar>::Constant(n / 2, Scalar(4 * std::numbers::pi) / Scalar(n));
  } else if (d == 3) {
    product_rule_3d<Scalar>(q, r.nodes, r.weights);
    product_rule_3d<Scalar>(q / 2, r.coarse_nodes, r.coarse_weights);
  } else {
    const int pairs = 64 * q;
    std::mt19937_64 gen(0x57e14e7ULL + static_cast<unsigned>(d));
    std::normal_distribution<double> normal(0.0, 1.0);
    r.nodes.resize(d, 2 * pairs);
    for (int i = 0; i < pairs; ++i) {
      VectorX<Scalar> g(d);
      for (int k = 0; k < d; ++k) g(k) = Scalar(normal(gen));
      g.normalize();
      r.nodes.col(2 * i) = g;
      r.nodes.col(2 * i + 1) = -g;
    }
    const Scalar area = Scalar(d) * r.kappa;
    r.weights = VectorX<Scalar>::Constant(2 * pairs, area / Scalar(2 * pairs));
    r.coarse_nodes = r.nodes.leftCols(pairs);
    r.coarse_weights = VectorX<Scalar>::Constant(pairs, area / Scalar(pairs));
  }
  return r;
}

template <typename Scalar>
const SphereRule<Scalar>& sphere_rule(int d, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, SphereRule<Scalar>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({d, q});
  if (it == cache.end()) it = cache.emplace(std::make_pair(d, q), build_sphere_rule<Scalar>(d, q)).first;
  return it->second;
}

template <typename Scalar>
VectorX<Scalar> apply_rule(const MatrixX<Scalar>& V, const MatrixX<Scalar>& U,
                           const VectorX<Scalar>& W, Scalar kappa) {
  const VectorX<Scalar> h = (V.transpose() * U).colwise().maxCoeff().transpose();
  return U * h.cwiseProduct(W) / kappa;
}

// Convex hull of planar points in counter-clockwise order (monotone chain).
template <typename Scalar>
MatrixX<Scalar> planar_hull(const MatrixX<Scalar>& P) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(P.cols()));
  for (Eigen::Index i = 0; i < P.cols(); ++i) idx[static_cast<std::size_t>(i)] = i;
  std::sort(idx.begin(), idx.end(), [&P](Eigen::Index a, Eigen::Index b) {
    return P(0, a) < P(0, b) || (P(0, a) == P(0, b) && P(1, a) < P(1, b));
  });
  auto cross = [&P](Eigen::Index o, Eigen::Index a, Eigen::Index b) {
    return (P(0, a) - P(0, o)) * (P(1, b) - P(1, o)) - (P(1, a) - P(1, o)) * (P(0, b) - P(0, o));
  };
  std::vector<Eigen::Index> h(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], idx[i]) <= Scalar(0)) --k;
    h[k++] = idx[i];
  }
  for (std::size_t i = idx.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], idx[i - 1]) <= Scalar(0)) --k;
    h[k++] = idx[i - 1];
  }
  const std::size_t m = k > 1 ? k - 1 : 1;
  MatrixX<Scalar> out(2, static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) out.col(static_cast<Eigen::Index>(i)) = P.col(h[i]);
  return out;
}

// Same quantity as apply_rule for d = 2 and equally spaced angles: the
// maximizing hull vertex advances monotonically with the angle.
template <typename Scalar>
VectorX<Scalar> apply_rule_planar(const MatrixX<Scalar>& H, const MatrixX<Scalar>& U,
                                  const VectorX<Scalar>& W, Scalar kappa) {
  const Eigen::Index m = H.cols();
  Eigen::Index j = 0;
  (H.transpose() * U.col(0)).maxCoeff(&j);
  VectorX<Scalar> acc = VectorX<Scalar>::Zero(2);
  for (Eigen::Index i = 0; i < U.cols(); ++i) {
    const auto u = U.col(i);
    for (Eigen::Index step = 0; step < m; ++step) {
      const Eigen::Index nx = (j + 1) % m;
      if (H.col(nx).dot(u) > H.col(j).dot(u)) j = nx;
      else break;
    }
    acc += (W(i) * H.col(j).dot(u)) * u;
  }
  return acc / kappa;
}

}  // namespace detail

/// Steiner point s(Y) = (1/kappa_d) * integral over S^{d-1} of h_Y(u) u du,
/// kappa_d the volume of the unit d-ball.
///
/// Balls and singletons return their center, one-dimensional sets the
/// midpoint of their extent. The radius part of a HullBall integrates to zero
/// and is skipped. The integral is evaluated by a fixed positive-weight rule
/// (see SteinerOptions) whose weights sum to the sphere's area; the estimate
/// is compared with the half-order rule and NumericalError is thrown when they
/// differ by more than rel_tol times the set's extent. The estimate is then
/// projected onto the polytope part, which moves it by at most the
/// quadrature error.
template <typename Scalar>
VectorX<Scalar> steiner_point(const CompactConvexSet<Scalar>& Y, const SteinerOptions& opt = {}) {
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;
  if (opt.quad_order < kMinSteinerOrder) {
    throw GeometryError("steiner_point: quad_order must be >= " + std::to_string(kMinSteinerOrder));
  }
  const int d = Y.dim();
  if (Y.vertices().cols() == 1) return Y.vertices().col(0);
  if (d == 1) {
    return Vector::Constant(1, Scalar(0.5) * (Y.vertices().minCoeff() + Y.vertices().maxCoeff()));
  }

  const Vector shift = Y.vertices().rowwise().mean();
  const Matrix V = Y.vertices().colwise() - shift;
  const Scalar extent = V.colwise().norm().maxCoeff();
  if (extent == Scalar(0)) return shift;

  const auto& rule = detail::sphere_rule<Scalar>(d, opt.quad_order);
  Vector s, s_coarse;
  if (d == 2) {
    const Matrix H = detail::planar_hull<Scalar>(V);
    s = detail::apply_rule_planar<Scalar>(H, rule.nodes, rule.weights, rule.kappa);
    s_coarse = detail::apply_rule_planar<Scalar>(H, rule.coarse_nodes, rule.coarse_weights, rule.kappa);
  } else {
    s = detail::apply_rule<Scalar>(V, rule.nodes, rule.weights, rule.kappa);
    s_coarse = detail::apply_rule<Scalar>(V, rule.coarse_nodes, rule.coarse_weights, rule.kappa);
  }
  const Scalar resid = (s - s_coarse).norm();
  if (!(resid <= Scalar(opt.rel_tol) * extent)) {
    std::ostringstream os;
    os << "steiner_point: quadrature residual " << resid << " exceeds " << opt.rel_tol * extent;
    throw NumericalError(os.str());
  }

  const Vector p = shift + s;
  const auto polytope = CompactConvexSet<Scalar>::Hull(Y.vertices());
  auto proj = project_point(polytope, p);
  return proj.distance > Scalar(0) ? proj.point : p;
}

}  // namespace sri
