#pragma once

#include "sri/types.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sri {

/// Deterministic set of unit directions in R^dim, stored as columns.
///
/// Every grid is antipodally symmetric (u and -u both present), so even
/// parts of a support function integrate or extremize exactly.
///   dim 1: {+1, -1}
///   dim 2: n equally spaced angles (n rounded up to even)
///   dim 3: n/2 Fibonacci-lattice points on the upper shell and their negatives
///   dim>3: n/2 normalized Gaussian draws from a fixed seed and their negatives
template <typename Scalar = double>
MatrixX<Scalar> direction_grid(int dim, int n) {
  if (dim < 1) throw GeometryError("direction_grid: dimension must be >= 1");
  if (dim == 1) {
    MatrixX<Scalar> out(1, 2);
    out << Scalar(1), Scalar(-1);
    return out;
  }
  const int half = std::max(1, (n + 1) / 2);
  MatrixX<Scalar> out(dim, 2 * half);
  if (dim == 2) {
    const Scalar step = Scalar(std::numbers::pi) / Scalar(half);
    for (int i = 0; i < half; ++i) {
      const Scalar th = step * Scalar(i);
      out(0, i) = std::cos(th);
      out(1, i) = std::sin(th);
    }
  } else if (dim == 3) {
    const Scalar golden = Scalar(std::numbers::pi) * (Scalar(3) - std::sqrt(Scalar(5)));
    for (int i = 0; i < half; ++i) {
      const Scalar z = (Scalar(i) + Scalar(0.5)) / Scalar(half);
      const Scalar rho = std::sqrt(std::max(Scalar(0), Scalar(1) - z * z));
      const Scalar phi = golden * Scalar(i);
      out(0, i) = rho * std::cos(phi);
      out(1, i) = rho * std::sin(phi);
      out(2, i) = z;
    }
  } else {
    std::mt19937_64 gen(0x5eed'd1ec'7105ULL + static_cast<unsigned>(dim));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < half; ++i) {
      VectorX<Scalar> g(dim);
      for (int k = 0; k < dim; ++k) g(k) = Scalar(normal(gen));
      out.col(i) = g / g.norm();
    }
  }
  out.rightCols(half) = -out.leftCols(half);
  return out;
}

}  // namespace sri
