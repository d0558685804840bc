#include "camo/vmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "camo/error.hpp"
#include "camo/geometry.hpp"
#include "camo/log.hpp"
#include "camo/random.hpp"
#include "camo/special.hpp"

namespace camo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Neumaier compensated sum; the EM monotonicity check is at 1e-9 absolute
// on log-likelihoods in the thousands.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double log_sum_exp(std::span<const double> v) noexcept {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

double kappa_approx(double r_bar, int d) noexcept {
  if (r_bar <= 0.0) return 0.0;
  if (r_bar >= 1.0) return kKappaMax;
  const double r3 = r_bar * r_bar * r_bar;
  const double k = (r_bar * d - r3) / (1.0 - r_bar * r_bar);
  return std::clamp(k, 0.0, kKappaMax);
}

// Row-major copy of the points with validation.
struct PointMatrix {
  std::vector<double> data;
  std::size_t n = 0;
  std::size_t d = 0;

  std::span<const double> row(std::size_t i) const noexcept {
    return {data.data() + i * d, d};
  }
};

PointMatrix pack(std::span<const EmbeddingVector> points) {
  PointMatrix m;
  m.n = points.size();
  m.d = points.empty() ? 0 : points.front().dim();
  if (m.d < 2) throw InvalidInput("fit_mixture: dimension must be >= 2");
  m.data.reserve(m.n * m.d);
  for (const auto& p : points) {
    if (p.dim() != m.d) throw ConfigError("fit_mixture: mixed dimensions");
    if (!is_unit(p)) throw InvalidInput("fit_mixture: points must be unit vectors");
    m.data.insert(m.data.end(), p.values().begin(), p.values().end());
  }
  return m;
}

// Seeded k-means++ under cosine distance: first mean uniform, then each
// next mean drawn with probability proportional to squared distance from
// the nearest chosen mean.
VmfMixture initial_mixture(const PointMatrix& pts, int k, Rng& rng) {
  const std::size_t n = pts.n;
  std::vector<std::size_t> chosen;
  chosen.push_back(static_cast<std::size_t>(rng.below(n)));
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (chosen.size() < static_cast<std::size_t>(k)) {
    const auto last = pts.row(chosen.back());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], unit_cosine_distance(pts.row(i), last));
      total += nearest[i] * nearest[i];
    }
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += nearest[i] * nearest[i];
        if (nearest[i] > 0.0 && acc > target) {
          pick = i;
          break;
        }
      }
      if (pick == n) {  // rounding: take the last point with positive mass
        for (std::size_t i = n; i-- > 0;) {
          if (nearest[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // Every point coincides with a chosen mean; fall back to an unused index.
      std::vector<std::size_t> unused;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) unused.push_back(i);
      }
      pick = unused[static_cast<std::size_t>(rng.below(unused.size()))];
    }
    chosen.push_back(pick);
  }

  VmfMixture mix;
  mix.dim = pts.d;
  mix.weights.assign(static_cast<std::size_t>(k), 1.0 / k);
  for (std::size_t c : chosen) {
    const auto r = pts.row(c);
    mix.components.push_back({EmbeddingVector(std::vector<double>(r.begin(), r.end())), 1.0});
  }
  return mix;
}

struct EStep {
  std::vector<double> resp;  // n x k
  double log_likelihood = 0.0;
};

EStep expectation(const PointMatrix& pts, const VmfMixture& mix) {
  const std::size_t k = mix.k();
  std::vector<double> offset(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double lw = mix.weights[j] > 0.0 ? std::log(mix.weights[j]) : kNegInf;
    offset[j] = lw + log_norm_constant(static_cast<int>(pts.d), mix.components[j].kappa);
  }
  EStep e;
  e.resp.resize(pts.n * k);
  CompensatedSum ll;
  std::vector<double> logp(k);
  for (std::size_t i = 0; i < pts.n; ++i) {
    const auto x = pts.row(i);
    for (std::size_t j = 0; j < k; ++j) {
      logp[j] = offset[j] + mix.components[j].kappa * dot(mix.components[j].mu.values(), x);
    }
    const double lse = log_sum_exp(logp);
    ll.add(lse);
    for (std::size_t j = 0; j < k; ++j) e.resp[i * k + j] = std::exp(logp[j] - lse);
  }
  e.log_likelihood = ll.value();
  return e;
}

// Returns true when a component had to be re-seeded.
bool maximization(const PointMatrix& pts, const EStep& e, VmfMixture& mix) {
  const std::size_t k = mix.k();
  const std::size_t n = pts.n;
  const auto d = static_cast<int>(pts.d);
  bool reseeded = false;
  std::vector<bool> used_for_reseed(n, false);

  for (std::size_t j = 0; j < k; ++j) {
    CompensatedSum mass;
    std::vector<double> resultant(pts.d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = e.resp[i * k + j];
      mass.add(r);
      if (r == 0.0) continue;
      const auto x = pts.row(i);
      for (std::size_t c = 0; c < pts.d; ++c) resultant[c] += r * x[c];
    }
    const double n_j = mass.value();
    const double len = std::sqrt(dot(resultant, resultant));
    if (!(len >= 1e-12) || !(n_j > 0.0)) {
      // Degenerate mean: restart this component at the point the current
      // mixture explains worst (lowest max-responsibility, lowest index).
      std::size_t worst = n;
      double worst_max = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        if (used_for_reseed[i]) continue;
        double m = 0.0;
        for (std::size_t c = 0; c < k; ++c) m = std::max(m, e.resp[i * k + c]);
        if (m < worst_max) {
          worst_max = m;
          worst = i;
        }
      }
      if (worst == n) worst = 0;
      used_for_reseed[worst] = true;
      const auto x = pts.row(worst);
      mix.components[j].mu = EmbeddingVector(std::vector<double>(x.begin(), x.end()));
      mix.components[j].kappa = 1.0;
      mix.weights[j] = 1.0 / static_cast<double>(n);
      reseeded = true;
      continue;
    }
    for (double& c : resultant) c /= len;
    mix.components[j].mu = EmbeddingVector(std::move(resultant));
    mix.components[j].kappa = solve_kappa(std::min(1.0, len / n_j), d);
    mix.weights[j] = n_j / static_cast<double>(n);
  }

  double total = 0.0;
  for (double w : mix.weights) total += w;
  for (double& w : mix.weights) w /= total;
  return reseeded;
}

std::vector<int> hard_assignments(const EStep& e, std::size_t n, std::size_t k) {
  std::vector<int> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < k; ++j) {
      if (e.resp[i * k + j] > e.resp[i * k + best]) best = j;
    }
    out[i] = static_cast<int>(best);
  }
  return out;
}

FitResult run_em(const PointMatrix& pts, VmfMixture mix, const FitConfig& cfg) {
  FitResult result;
  EStep e = expectation(pts, mix);
  result.log_likelihood_trace.push_back(e.log_likelihood);
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    if (maximization(pts, e, mix)) result.reseed_iterations.push_back(iter);
    const double prev = e.log_likelihood;
    e = expectation(pts, mix);
    result.log_likelihood_trace.push_back(e.log_likelihood);
    const double change = std::abs(e.log_likelihood - prev);
    if (change <= cfg.tol * std::max(std::abs(prev), 1e-300)) {
      result.converged = true;
      ++iter;
      break;
    }
  }
  result.iterations = iter;
  result.assignments = hard_assignments(e, pts.n, mix.k());
  result.log_likelihood = e.log_likelihood;
  result.mixture = std::move(mix);
  return result;
}

}  // namespace

void VmfMixture::validate() const {
  if (components.empty()) throw InvalidInput("mixture has no components");
  if (weights.size() != components.size()) {
    throw InvalidInput("mixture weights and components differ in length");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidInput("mixture weight is negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidInput("mixture weights do not sum to 1");
  for (const auto& c : components) {
    if (c.mu.dim() != dim) throw InvalidInput("mixture component dimension mismatch");
    if (std::abs(c.mu.norm() - 1.0) > 1e-9) throw InvalidInput("component mean is not unit");
    if (!(c.kappa >= 0.0 && c.kappa <= kKappaMax)) {
      throw InvalidInput("component kappa out of range");
    }
  }
}

void FitConfig::validate() const {
  if (k < 1) throw InvalidInput("fit: k must be >= 1");
  if (max_iters < 1) throw InvalidInput("fit: max_iters must be >= 1");
  if (!(tol > 0.0)) throw InvalidInput("fit: tol must be > 0");
  if (restarts < 1) throw InvalidInput("fit: restarts must be >= 1");
}

double log_norm_constant(int d, double kappa) {
  if (d < 2) throw InvalidInput("log_norm_constant: d must be >= 2");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidInput("log_norm_constant: kappa must be finite and >= 0");
  }
  const double half_d = 0.5 * d;
  if (kappa == 0.0) {
    return std::lgamma(half_d) - std::log(2.0) - half_d * std::log(std::numbers::pi);
  }
  const double nu = half_d - 1.0;
  return nu * std::log(kappa) - half_d * std::log(2.0 * std::numbers::pi) -
         log_bessel_i(nu, kappa);
}

double log_density(const EmbeddingVector& x, const VmfComponent& comp) {
  if (x.dim() != comp.mu.dim()) throw ConfigError("log_density: dimension mismatch");
  if (!is_unit(x)) throw InvalidInput("log_density: x must be a unit vector");
  return log_norm_constant(static_cast<int>(x.dim()), comp.kappa) +
         comp.kappa * dot(comp.mu.values(), x.values());
}

double estimate_kappa(double r_bar, int d) {
  if (!(r_bar >= 0.0)) throw InvalidInput("estimate_kappa: r_bar must be >= 0");
  if (d < 2) throw InvalidInput("estimate_kappa: d must be >= 2");
  if (r_bar >= 1.0) {
    warn("estimate_kappa: r_bar >= 1, component is a point mass; kappa clamped");
    return kKappaMax;
  }
  return kappa_approx(r_bar, d);
}

double mean_resultant_length(int d, double kappa) {
  if (kappa <= 0.0) return 0.0;
  return bessel_i_ratio(0.5 * d - 1.0, kappa);
}

double solve_kappa(double r_bar, int d) {
  if (!(r_bar >= 0.0)) throw InvalidInput("solve_kappa: r_bar must be >= 0");
  double kappa = kappa_approx(r_bar, d);
  if (kappa <= 0.0 || kappa >= kKappaMax) return kappa;
  for (int it = 0; it < 30; ++it) {
    const double a = mean_resultant_length(d, kappa);
    const double slope = 1.0 - a * a - (d - 1.0) / kappa * a;
    if (!(slope > 0.0)) break;
    double next = kappa - (a - r_bar) / slope;
    if (!(next > 0.0) || !std::isfinite(next)) next = 0.5 * kappa;
    next = std::min(next, kKappaMax);
    const double step = std::abs(next - kappa);
    kappa = next;
    if (step <= 1e-13 * kappa) break;
  }
  return kappa;
}

std::vector<double> responsibilities(const EmbeddingVector& x, const VmfMixture& mix) {
  if (mix.components.empty()) throw InvalidInput("responsibilities: empty mixture");
  if (x.dim() != mix.dim) throw ConfigError("responsibilities: dimension mismatch");
  if (!is_unit(x)) throw InvalidInput("responsibilities: x must be a unit vector");
  std::vector<double> logp(mix.k());
  for (std::size_t j = 0; j < mix.k(); ++j) {
    const double lw = mix.weights[j] > 0.0 ? std::log(mix.weights[j]) : kNegInf;
    logp[j] = lw + log_density(x, mix.components[j]);
  }
  const double lse = log_sum_exp(logp);
  for (double& v : logp) v = std::exp(v - lse);
  return logp;
}

FitResult fit_mixture_from(std::span<const EmbeddingVector> points, VmfMixture initial,
                           const FitConfig& cfg) {
  cfg.validate();
  const PointMatrix pts = pack(points);
  if (initial.dim != pts.d) throw ConfigError("fit_mixture_from: dimension mismatch");
  initial.validate();
  return run_em(pts, std::move(initial), cfg);
}

FitResult fit_mixture(std::span<const EmbeddingVector> points, const FitConfig& cfg) {
  cfg.validate();
  if (points.size() < static_cast<std::size_t>(cfg.k)) {
    throw InvalidInput("fit_mixture: need at least k = " + std::to_string(cfg.k) +
                       " points, got " + std::to_string(points.size()));
  }
  const PointMatrix pts = pack(points);
  FitResult best;
  bool have = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    FitResult fit = run_em(pts, initial_mixture(pts, cfg.k, rng), cfg);
    fit.restart = r;
    if (!have || fit.log_likelihood > best.log_likelihood) {
      best = std::move(fit);
      have = true;
    }
  }
  return best;
}

}  // namespace camo
