#include "sri/noise.hpp"

#include <cmath>

namespace sri {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(mix64(base) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

NoiseKind parse_noise_kind(const std::string& name) {
  if (name == "sphere-uniform") return NoiseKind::kSphereUniform;
  if (name == "truncated-gaussian") return NoiseKind::kTruncatedGaussian;
  if (name == "rademacher-coordinates") return NoiseKind::kRademacherCoordinates;
  throw GeometryError("unknown noise kind '" + name + "'");
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kSphereUniform: return "sphere-uniform";
    case NoiseKind::kTruncatedGaussian: return "truncated-gaussian";
    case NoiseKind::kRademacherCoordinates: return "rademacher-coordinates";
  }
  return "?";
}

NoiseModel::NoiseModel(NoiseKind k, double K_) : kind(k), K(K_) {
  if (!(K >= 0.0) || !std::isfinite(K)) throw GeometryError("NoiseModel: K must be finite and >= 0");
}

Point random_direction(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Point g(dim);
  double n = 0.0;
  while (n == 0.0) {
    for (int i = 0; i < dim; ++i) g(i) = normal(rng);
    n = g.norm();
  }
  return g / n;
}

Point NoiseModel::sample(const Point& x, Rng& rng) const {
  const int d = static_cast<int>(x.size());
  if (K == 0.0) return Point::Zero(d);
  const double R = bound(x);
  switch (kind) {
    case NoiseKind::kSphereUniform:
      return R * random_direction(d, rng);
    case NoiseKind::kRademacherCoordinates: {
      std::bernoulli_distribution coin(0.5);
      Point m(d);
      const double c = R / std::sqrt(static_cast<double>(d));
      for (int i = 0; i < d; ++i) m(i) = coin(rng) ? c : -c;
      return m;
    }
    case NoiseKind::kTruncatedGaussian: {
      std::normal_distribution<double> normal(0.0, 0.5 * R / std::sqrt(static_cast<double>(d)));
      Point m(d);
      for (;;) {
        for (int i = 0; i < d; ++i) m(i) = normal(rng);
        if (m.norm() <= R) return m;
      }
    }
  }
  return Point::Zero(d);
}

}  // namespace sri
