#pragma once

#include <cstddef>
#include <span>

#include "camo/vector.hpp"

namespace camo {

struct MeanDirectionResult {
  EmbeddingVector mu;   // unit mean direction
  double r_bar = 0.0;   // mean resultant length, ||sum x_i|| / n
  std::size_t n = 0;
};

/// 1 - cos(x, y), with the cosine clamped to [-1, 1] so the result always
/// lies in [0, 2]. Throws DegenerateVector on a zero-norm input and
/// ConfigError on a dimension mismatch.
double cosine_distance(const EmbeddingVector& x, const EmbeddingVector& y);

/// Cosine distance for inputs already known to be unit length: 1 - x.y,
/// clamped. No validation; used on hot paths.
double unit_cosine_distance(std::span<const double> x, std::span<const double> y) noexcept;

/// Throws DegenerateVector when ||x|| <= 1e-12.
EmbeddingVector l2_normalize(const EmbeddingVector& x);

/// Mean direction of unit vectors. Throws InvalidInput for an empty set or
/// non-unit input, ConfigError on mixed dimensions, DegenerateMean when the
/// resultant vanishes (||sum|| < 1e-12).
MeanDirectionResult mean_direction(std::span<const EmbeddingVector> vectors);

inline constexpr double kUnitTolerance = 1e-6;

bool is_unit(const EmbeddingVector& x, double tol = kUnitTolerance) noexcept;

}  // namespace camo
