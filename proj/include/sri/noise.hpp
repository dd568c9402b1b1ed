#pragma once

#include "sri/types.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace sri {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of substream `index` under `base`: mix64(mix64(base) + golden * (index + 1)).
/// Substreams for distinct (base, index) pairs are decorrelated.
std::uint64_t substream_seed(std::uint64_t base, std::uint64_t index);

enum class NoiseKind { kSphereUniform, kTruncatedGaussian, kRademacherCoordinates };

NoiseKind parse_noise_kind(const std::string& name);
std::string to_string(NoiseKind kind);

/// Zero-mean noise with |M| <= K (1 + |x|) surely, where x is the state the
/// drift is evaluated at.
///   sphere-uniform          R u, u uniform on the unit sphere, R = K (1 + |x|)
///   truncated-gaussian      N(0, (R/2)^2 I / d) conditioned on |M| <= R
///   rademacher-coordinates  independent signs times R / sqrt(d) per coordinate
struct NoiseModel {
  NoiseKind kind = NoiseKind::kSphereUniform;
  double K = 0.0;

  NoiseModel() = default;
  NoiseModel(NoiseKind kind, double K);

  double bound(const Point& x) const { return K * (1.0 + x.norm()); }
  /// Draws M; returns zero without consuming randomness when K = 0.
  Point sample(const Point& x, Rng& rng) const;
};

/// Uniform direction on the unit sphere of R^dim.
Point random_direction(int dim, Rng& rng);

}  // namespace sri
