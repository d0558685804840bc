#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "camo/vector.hpp"

namespace camo {

/// Concentrations are clamped here; beyond it a component is numerically a
/// point mass.
inline constexpr double kKappaMax = 1e7;

struct VmfComponent {
  EmbeddingVector mu;  // unit mean direction
  double kappa = 0.0;
};

struct VmfMixture {
  std::vector<double> weights;
  std::vector<VmfComponent> components;
  std::size_t dim = 0;

  std::size_t k() const noexcept { return components.size(); }

  /// Throws InvalidInput unless weights are non-negative and sum to 1
  /// (1e-9), components are non-empty with unit means and kappa in
  /// [0, kKappaMax], and all dimensions agree.
  void validate() const;
};

struct FitConfig {
  int k = 2;
  int max_iters = 200;
  double tol = 1e-6;  // relative change in log-likelihood
  int restarts = 4;
  std::uint64_t seed = 42;

  void validate() const;
};

struct FitResult {
  VmfMixture mixture;
  std::vector<int> assignments;  // argmax responsibility, ties to lowest index
  double log_likelihood = 0.0;

  // Diagnostics for the winning restart.
  std::vector<double> log_likelihood_trace;  // one entry per E-step
  std::vector<int> reseed_iterations;        // M-steps that re-seeded a component
  int iterations = 0;
  int restart = 0;
  bool converged = false;
};

/// ln C_d(kappa), the vMF normalizing constant on S^(d-1); kappa = 0 gives
/// the uniform density ln Gamma(d/2) - ln(2 pi^(d/2)).
double log_norm_constant(int d, double kappa);

/// ln C_d(kappa) + kappa mu.x. x must be unit length within 1e-6.
double log_density(const EmbeddingVector& x, const VmfComponent& comp);

/// Closed-form approximation (r d - r^3) / (1 - r^2), clamped to
/// [0, kKappaMax]. r_bar >= 1 returns kKappaMax with a warning.
double estimate_kappa(double r_bar, int d);

/// Maximum-likelihood kappa: solves A_d(kappa) = r_bar by Newton iteration
/// started from estimate_kappa. Used for the EM M-step.
double solve_kappa(double r_bar, int d);

/// Mean resultant length A_d(kappa) = I_{d/2}(kappa) / I_{d/2-1}(kappa).
double mean_resultant_length(int d, double kappa);

std::vector<double> responsibilities(const EmbeddingVector& x, const VmfMixture& mix);

/// Expectation-Maximization fit of a k-component vMF mixture. Best of
/// cfg.restarts runs by final log-likelihood (ties keep the earliest).
/// Deterministic for a given seed.
FitResult fit_mixture(std::span<const EmbeddingVector> points, const FitConfig& cfg);

}  // namespace camo

namespace camo {

/// Runs EM from the given starting mixture (no restarts). Exposed so the
/// initialization can be controlled directly.
FitResult fit_mixture_from(std::span<const EmbeddingVector> points, VmfMixture initial,
                           const FitConfig& cfg);

}  // namespace camo
