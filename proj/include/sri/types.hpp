#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace sri {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Points of the state space. Columns of a MatrixX are points.
using Point = VectorX<double>;
using PointMatrix = MatrixX<double>;

/// Thrown when a precondition on geometric input is violated (dimension
/// mismatch, zero direction, empty vertex list).
class GeometryError : public std::invalid_argument {
 public:
  explicit GeometryError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a numerical procedure fails (non-convergent quadrature,
/// non-finite state).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Membership tolerance shared by the convex-set routines.
inline constexpr double kMembershipTol = 1e-6;

}  // namespace sri
