#include "camo/vector.hpp"

#include <cmath>

#include "camo/error.hpp"

namespace camo {

namespace {

void check_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidInput("embedding component is not finite");
  }
}

}  // namespace

EmbeddingVector::EmbeddingVector(std::vector<double> components)
    : values_(std::move(components)) {
  check_finite(values_);
}

EmbeddingVector::EmbeddingVector(std::initializer_list<double> components)
    : values_(components) {
  check_finite(values_);
}

double EmbeddingVector::norm() const noexcept {
  return std::sqrt(dot(values_, values_));
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace camo
