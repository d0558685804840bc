#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "camo/error.hpp"
#include "camo/geometry.hpp"
#include "camo/log.hpp"
#include "camo/vmf.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "references.hpp"

using namespace camo;
using reference::closed_form_c3;
using reference::kNormGrid;

namespace {

std::vector<EmbeddingVector> random_points(Rng& rng, std::size_t n, std::size_t d) {
  std::vector<EmbeddingVector> pts;
  // Mix of a few loose blobs so fits are non-trivial.
  const std::size_t blobs = 1 + rng.below(4);
  std::vector<EmbeddingVector> centers;
  for (std::size_t b = 0; b < blobs; ++b) centers.push_back(gen::random_unit(rng, d));
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(gen::perturb(rng, centers[rng.below(blobs)], rng.uniform() * 1.2));
  }
  return pts;
}

}  // namespace

TEST(LogNormConstant, UniformLimits) {
  EXPECT_NEAR(log_norm_constant(2, 0.0), -1.837877, 1e-6);
  EXPECT_NEAR(log_norm_constant(3, 0.0), -2.531024, 1e-6);
  EXPECT_NEAR(log_norm_constant(2, 0.0), -std::log(2 * std::numbers::pi), 1e-14);
  EXPECT_NEAR(log_norm_constant(3, 0.0), -std::log(4 * std::numbers::pi), 1e-14);
}

TEST(LogNormConstant, ThreeDimensionalClosedForm) {
  EXPECT_NEAR(log_norm_constant(3, 1.0), -2.6924636085404864, 1e-12);
  for (double k : {1e-6, 0.1, 1.0, 10.0, 100.0, 1e4, 1e6}) {
    const double expected = closed_form_c3(k);
    EXPECT_NEAR(log_norm_constant(3, k), expected, 1e-6 * std::abs(expected)) << k;
  }
}

TEST(LogNormConstant, MatchesReferenceGrid) {
  for (const auto& g : kNormGrid) {
    EXPECT_NEAR(log_norm_constant(g.d, g.kappa), g.value, 1e-6 * std::abs(g.value))
        << "d=" << g.d << " kappa=" << g.kappa;
  }
}

TEST(LogNormConstant, MatchesSeriesOracle) {
  for (const auto& g : kNormGrid) {
    const double series = reference::series_log_norm_constant(g.d, g.kappa);
    EXPECT_NEAR(series, g.value, 1e-9 * std::abs(g.value)) << "d=" << g.d << " kappa=" << g.kappa;
    EXPECT_NEAR(log_norm_constant(g.d, g.kappa), series, 1e-6 * std::abs(series));
  }
}

TEST(LogNormConstant, ContinuousAtZero) {
  for (int d : {2, 3, 10, 100, 300}) {
    EXPECT_NEAR(log_norm_constant(d, 1e-10), log_norm_constant(d, 0.0), 1e-9);
  }
}

TEST(LogNormConstant, Errors) {
  EXPECT_THROW(log_norm_constant(3, -1.0), InvalidInput);
  EXPECT_THROW(log_norm_constant(3, NAN), InvalidInput);
  EXPECT_THROW(log_norm_constant(3, INFINITY), InvalidInput);
  EXPECT_THROW(log_norm_constant(1, 1.0), InvalidInput);
}

TEST(LogDensity, Examples) {
  const VmfComponent uniform{{0, 0, 1}, 0.0};
  EXPECT_NEAR(log_density({1, 0, 0}, uniform), -2.531024, 1e-6);
  const VmfComponent c{{1, 0, 0}, 1.0};
  EXPECT_NEAR(log_density({1, 0, 0}, c), -1.6924636085404864, 1e-12);
  for (double k : {0.0, 0.5, 7.0, 1e4}) {
    const VmfComponent ck{{1, 0, 0}, k};
    EXPECT_EQ(log_density({0, 1, 0}, ck), log_norm_constant(3, k));
  }
  EXPECT_THROW(log_density({2, 0, 0}, c), InvalidInput);
}

TEST(LogDensity, IntegratesToOneOnTheSphere) {
  for (double k : {0.0, 1.0, 10.0}) {
    const double lc = log_norm_constant(3, k);
    const double total = oracle::sphere_integral_s2([&](double c) { return std::exp(lc + k * c); });
    EXPECT_NEAR(total, 1.0, 1e-4) << k;
  }
}

TEST(EstimateKappa, Examples) {
  EXPECT_EQ(estimate_kappa(0.0, 100), 0.0);
  EXPECT_NEAR(estimate_kappa(0.5, 3), 1.8333333333333333, 1e-12);
  // (9.99999 - 0.999997) / (1 - 0.999998000001): large but below the clamp.
  EXPECT_NEAR(estimate_kappa(0.999999, 10), 8.999993000001 / 1.999999e-6, 1e-3);
  EXPECT_EQ(estimate_kappa(0.9999999, 10), kKappaMax);
  EXPECT_EQ(estimate_kappa(0.999999, 100), kKappaMax);
  EXPECT_THROW(estimate_kappa(-0.1, 3), InvalidInput);
}

TEST(EstimateKappa, PointMassWarns) {
  std::vector<std::string> seen;
  ScopedWarningSink sink([&](std::string_view m) { seen.emplace_back(m); });
  EXPECT_EQ(estimate_kappa(1.0, 5), kKappaMax);
  EXPECT_EQ(estimate_kappa(1.5, 5), kKappaMax);
  EXPECT_EQ(seen.size(), 2u);
}

TEST(SolveKappa, InvertsMeanResultantLength) {
  for (int d : {2, 3, 10, 50, 100}) {
    for (double r : {0.01, 0.2, 0.5, 0.8, 0.95, 0.999}) {
      const double k = solve_kappa(r, d);
      EXPECT_NEAR(mean_resultant_length(d, k), r, 1e-9) << d << " " << r;
    }
  }
  EXPECT_EQ(solve_kappa(0.0, 10), 0.0);
  EXPECT_EQ(solve_kappa(1.0, 10), kKappaMax);
}

TEST(Responsibilities, Examples) {
  VmfMixture one{{1.0}, {{{1, 0, 0}, 3.0}}, 3};
  EXPECT_EQ(responsibilities({0, 1, 0}, one), std::vector<double>{1.0});

  VmfMixture twins{{0.5, 0.5}, {{{1, 0, 0}, 3.0}, {{1, 0, 0}, 3.0}}, 3};
  const auto r2 = responsibilities({0, 0, 1}, twins);
  EXPECT_NEAR(r2[0], 0.5, 1e-15);
  EXPECT_NEAR(r2[1], 0.5, 1e-15);

  VmfMixture ortho{{0.5, 0.5}, {{{1, 0, 0}, 10.0}, {{0, 1, 0}, 10.0}}, 3};
  const auto r3 = responsibilities({1, 0, 0}, ortho);
  const double expected = 1.0 / (1.0 + std::exp(-10.0));
  EXPECT_NEAR(r3[0], expected, 1e-12);
  EXPECT_NEAR(r3[0], 0.9999546, 1e-7);
  EXPECT_NEAR(r3[0] + r3[1], 1.0, 1e-9);

  EXPECT_THROW(responsibilities({1, 0}, ortho), ConfigError);
}

TEST(FitMixture, SingleComponentIsMeanDirection) {
  Rng rng(1);
  const auto pts = random_points(rng, 40, 6);
  FitConfig cfg;
  cfg.k = 1;
  const auto fit = fit_mixture(pts, cfg);
  const auto md = mean_direction(pts);
  ASSERT_EQ(fit.mixture.weights.size(), 1u);
  EXPECT_NEAR(fit.mixture.weights[0], 1.0, 1e-12);
  for (std::size_t i = 0; i < md.mu.dim(); ++i) {
    EXPECT_NEAR(fit.mixture.components[0].mu[i], md.mu[i], 1e-12);
  }
  EXPECT_NEAR(mean_resultant_length(6, fit.mixture.components[0].kappa), md.r_bar, 1e-9);
}

TEST(FitMixture, RecoversTwoTightClusters) {
  Rng rng(2024);
  const std::size_t d = 10;
  const std::vector<EmbeddingVector> centers = {gen::axis(d, 0), gen::axis(d, 1)};
  std::vector<int> truth;
  const auto pts = gen::clusters(rng, centers, 50, 5.0 * std::numbers::pi / 180.0, &truth);
  FitConfig cfg;
  cfg.k = 2;
  const auto fit = fit_mixture(pts, cfg);
  fit.mixture.validate();

  // Each true center has a fitted mean within 0.01.
  for (const auto& c : centers) {
    double best = 2.0;
    for (const auto& comp : fit.mixture.components) best = std::min(best, cosine_distance(c, comp.mu));
    EXPECT_LT(best, 0.01);
  }
  // Assignments equal the truth up to relabeling, and agree with the
  // brute-force spherical 2-means partition.
  const bool same = fit.assignments == truth;
  std::vector<int> flipped(truth.size());
  std::transform(truth.begin(), truth.end(), flipped.begin(), [](int v) { return 1 - v; });
  EXPECT_TRUE(same || fit.assignments == flipped);
  const auto km = oracle::spherical_two_means(pts);
  std::vector<int> km_flipped(km.size());
  std::transform(km.begin(), km.end(), km_flipped.begin(), [](int v) { return 1 - v; });
  EXPECT_TRUE(fit.assignments == km || fit.assignments == km_flipped);
}

TEST(FitMixture, LogLikelihoodIsMonotone) {
  Rng rng(99);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 2 + rng.below(49);
    const std::size_t n = 10 + rng.below(191);
    const auto pts = random_points(rng, n, d);
    FitConfig cfg;
    cfg.k = 1 + static_cast<int>(rng.below(4));
    cfg.seed = rng.next();
    const auto fit = fit_mixture(pts, cfg);
    const auto& tr = fit.log_likelihood_trace;
    for (std::size_t i = 1; i < tr.size(); ++i) {
      const bool after_reseed =
          std::find(fit.reseed_iterations.begin(), fit.reseed_iterations.end(),
                    static_cast<int>(i - 1)) != fit.reseed_iterations.end();
      if (after_reseed) continue;
      ASSERT_GE(tr[i] - tr[i - 1], -1e-9) << "dataset " << t << " step " << i;
    }
    EXPECT_EQ(fit.log_likelihood, tr.back());
  }
}

TEST(FitMixture, PermutedInitializationOnlyRelabels) {
  Rng rng(5);
  const auto pts = random_points(rng, 120, 8);
  FitConfig cfg;
  cfg.k = 3;
  const auto base = fit_mixture(pts, cfg);

  VmfMixture init;
  init.dim = 8;
  init.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  for (std::size_t idx : {0u, 40u, 80u}) init.components.push_back({pts[idx], 1.0});
  VmfMixture permuted = init;
  std::swap(permuted.components[0], permuted.components[2]);

  const auto a = fit_mixture_from(pts, init, cfg);
  const auto b = fit_mixture_from(pts, permuted, cfg);
  EXPECT_NEAR(a.log_likelihood, b.log_likelihood, 1e-6);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int mapped = a.assignments[i] == 0 ? 2 : (a.assignments[i] == 2 ? 0 : 1);
    EXPECT_EQ(b.assignments[i], mapped);
  }
  EXPECT_TRUE(std::isfinite(base.log_likelihood));
}

TEST(FitMixture, DeterministicForSeed) {
  Rng rng(8);
  const auto pts = random_points(rng, 60, 12);
  FitConfig cfg;
  cfg.k = 3;
  cfg.seed = 1234;
  const auto a = fit_mixture(pts, cfg);
  const auto b = fit_mixture(pts, cfg);
  EXPECT_EQ(a.log_likelihood, b.log_likelihood);
  EXPECT_EQ(a.assignments, b.assignments);
  EXPECT_EQ(a.mixture.weights, b.mixture.weights);
}

TEST(FitMixture, Errors) {
  const std::vector<EmbeddingVector> pts = {{1, 0}, {0, 1}};
  FitConfig cfg;
  cfg.k = 3;
  EXPECT_THROW(fit_mixture(pts, cfg), InvalidInput);
  cfg.k = 2;
  EXPECT_THROW(fit_mixture(std::vector<EmbeddingVector>{{2, 0}, {0, 1}}, cfg), InvalidInput);
  cfg.tol = 0;
  EXPECT_THROW(fit_mixture(pts, cfg), InvalidInput);
}

TEST(FitMixture, DuplicatePointsStayFinite) {
  // Identical points drive kappa to the clamp; everything must stay finite.
  std::vector<EmbeddingVector> pts(6, EmbeddingVector{0.6, 0.8, 0.0});
  pts.push_back({0, 0, 1});
  pts.push_back({0, 0, 1});
  FitConfig cfg;
  cfg.k = 2;
  ScopedWarningSink quiet([](std::string_view) {});
  const auto fit = fit_mixture(pts, cfg);
  EXPECT_TRUE(std::isfinite(fit.log_likelihood));
  for (const auto& c : fit.mixture.components) {
    EXPECT_LE(c.kappa, kKappaMax);
    EXPECT_GE(c.kappa, 0.0);
  }
  EXPECT_NE(fit.assignments[0], fit.assignments[6]);
}
