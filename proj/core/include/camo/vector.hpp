#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace camo {

/// A point in the semantic space. Components are always finite; the
/// constructor rejects NaN/Inf with InvalidInput.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> components);
  EmbeddingVector(std::initializer_list<double> components);

  std::size_t dim() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  double norm() const noexcept;

  bool operator==(const EmbeddingVector&) const = default;

 private:
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace camo
