#include "camo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "camo/error.hpp"

namespace camo {

namespace {

constexpr double kZeroNorm = 1e-12;

double clamped_distance(double cosine) noexcept {
  return 1.0 - std::clamp(cosine, -1.0, 1.0);
}

}  // namespace

double cosine_distance(const EmbeddingVector& x, const EmbeddingVector& y) {
  if (x.dim() != y.dim()) {
    throw ConfigError("cosine_distance: dimension mismatch (" +
                      std::to_string(x.dim()) + " vs " + std::to_string(y.dim()) + ")");
  }
  const double nx = x.norm();
  const double ny = y.norm();
  if (!(nx > 0.0) || !(ny > 0.0)) throw DegenerateVector("cosine_distance: zero-norm input");
  return clamped_distance(dot(x.values(), y.values()) / (nx * ny));
}

double unit_cosine_distance(std::span<const double> x, std::span<const double> y) noexcept {
  return clamped_distance(dot(x, y));
}

EmbeddingVector l2_normalize(const EmbeddingVector& x) {
  const double n = x.norm();
  if (!(n > kZeroNorm)) throw DegenerateVector("l2_normalize: zero-norm vector");
  std::vector<double> out(x.values().begin(), x.values().end());
  for (double& v : out) v /= n;
  return EmbeddingVector(std::move(out));
}

bool is_unit(const EmbeddingVector& x, double tol) noexcept {
  return std::abs(x.norm() - 1.0) <= tol;
}

MeanDirectionResult mean_direction(std::span<const EmbeddingVector> vectors) {
  if (vectors.empty()) throw InvalidInput("mean_direction: no vectors");
  const std::size_t d = vectors.front().dim();
  std::vector<double> sum(d, 0.0);
  for (const auto& v : vectors) {
    if (v.dim() != d) throw ConfigError("mean_direction: mixed dimensions");
    if (!is_unit(v)) throw InvalidInput("mean_direction: input is not unit-normalized");
    for (std::size_t i = 0; i < d; ++i) sum[i] += v[i];
  }
  const double len = std::sqrt(dot(sum, sum));
  if (len < kZeroNorm) throw DegenerateMean("mean_direction: resultant vector vanishes");
  for (double& s : sum) s /= len;
  MeanDirectionResult r;
  r.mu = EmbeddingVector(std::move(sum));
  r.n = vectors.size();
  r.r_bar = std::min(1.0, len / static_cast<double>(vectors.size()));
  return r;
}

}  // namespace camo
