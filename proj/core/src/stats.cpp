#include "camo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "camo/error.hpp"

namespace camo {

double kolmogorov_tail(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
  double q;
  if (lambda < 1.18) {
    // Jacobi theta form of the same distribution; converges fast for small
    // lambda where the alternating series does not.
    const double l2 = lambda * lambda;
    double cdf = 0.0;
    for (int j = 1; j < 100; ++j) {
      const double odd = 2.0 * j - 1.0;
      const double term = std::exp(-odd * odd * kPi2 / (8.0 * l2));
      cdf += term;
      if (term < 1e-16 * cdf) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    q = 1.0 - cdf;
  } else {
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j < 100; ++j) {
      const double term = std::exp(-2.0 * j * j * lambda * lambda);
      sum += sign * term;
      if (term < 1e-12) break;
      sign = -sign;
    }
    q = 2.0 * sum;
  }
  return std::clamp(q, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidInput("ks_two_sample: empty sample");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(a.begin(), a.end(), finite) || !std::all_of(b.begin(), b.end(), finite)) {
    throw InvalidInput("ks_two_sample: non-finite value");
  }
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());

  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    // Step both CDFs past every copy of the smallest remaining value so ties
    // are evaluated with right-continuous CDFs.
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  // Once one sample is exhausted the gap only shrinks toward 0.

  KsResult r;
  r.statistic = std::min(d, 1.0);
  r.n1 = x.size();
  r.n2 = y.size();
  const double ne = n1 * n2 / (n1 + n2);
  const double root = std::sqrt(ne);
  r.p_value = kolmogorov_tail((root + 0.12 + 0.11 / root) * r.statistic);
  return r;
}

double power_law_cdf(long x, double alpha, long x_min) {
  if (x < x_min) return 0.0;
  const double base = static_cast<double>(x_min) - 0.5;
  return 1.0 - std::pow((static_cast<double>(x) + 0.5) / base, 1.0 - alpha);
}

PowerLawFit power_law_fit(std::span<const long> counts) {
  if (counts.size() < 10) throw InvalidInput("power_law_fit: need at least 10 values");
  std::vector<long> v(counts.begin(), counts.end());
  for (long c : v) {
    if (c < 1) throw InvalidInput("power_law_fit: values must be >= 1");
  }
  std::sort(v.begin(), v.end());
  if (v.front() == v.back()) throw DegenerateDistribution("power_law_fit: all values equal");

  std::vector<double> logs(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) logs[i] = std::log(static_cast<double>(v[i]));

  PowerLawFit best;
  bool have = false;
  for (std::size_t start = 0; start < v.size();) {
    const long x_min = v[start];
    const std::size_t n_tail = v.size() - start;
    if (n_tail < 2) break;
    const double log_base = std::log(static_cast<double>(x_min) - 0.5);
    double sum = 0.0;
    for (std::size_t i = start; i < v.size(); ++i) sum += logs[i] - log_base;
    const double alpha = 1.0 + static_cast<double>(n_tail) / sum;

    // Both CDFs are step functions on the integers; between consecutive
    // data values the empirical CDF is flat while the model keeps rising.
    double ks = 0.0;
    const double nt = static_cast<double>(n_tail);
    for (std::size_t i = start; i < v.size();) {
      std::size_t k = i;
      while (k < v.size() && v[k] == v[i]) ++k;
      const double emp = static_cast<double>(k - start) / nt;
      ks = std::max(ks, std::abs(emp - power_law_cdf(v[i], alpha, x_min)));
      if (k < v.size() && v[k] - 1 > v[i]) {
        ks = std::max(ks, std::abs(emp - power_law_cdf(v[k] - 1, alpha, x_min)));
      }
      i = k;
    }
    if (!have || ks < best.ks_distance) {
      best = {alpha, x_min, ks, n_tail};
      have = true;
    }
    while (start < v.size() && v[start] == x_min) ++start;
  }
  if (!have) throw DegenerateDistribution("power_law_fit: no tail with two or more values");
  return best;
}

std::vector<HistogramBin> log_histogram(std::span<const long> counts, int bins) {
  if (counts.empty()) throw InvalidInput("log_histogram: no values");
  if (bins < 1) throw InvalidInput("log_histogram: bins must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(counts.begin(), counts.end());
  const double lo = static_cast<double>(*lo_it);
  const double hi = static_cast<double>(*hi_it);
  const double span = hi - lo;
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out[static_cast<std::size_t>(b)].low = lo + span * b / bins;
    out[static_cast<std::size_t>(b)].high = b + 1 == bins ? hi : lo + span * (b + 1) / bins;
  }
  for (long c : counts) {
    if (c < 1) throw InvalidInput("log_histogram: values must be >= 1");
    std::size_t idx = 0;
    if (span > 0.0) {
      idx = static_cast<std::size_t>(std::floor((static_cast<double>(c) - lo) * bins / span));
      idx = std::min(idx, static_cast<std::size_t>(bins - 1));
    }
    ++out[idx].count;
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidInput("median: no values");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(),
                                         values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace camo
