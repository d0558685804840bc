#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace camo {

struct KsResult {
  double statistic = 0.0;  // sup |F_a - F_b|
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

/// Two-sample Kolmogorov-Smirnov test. The p-value is the asymptotic
/// Kolmogorov tail at lambda = (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D with
/// ne = n1 n2 / (n1 + n2). Throws InvalidInput on an empty sample.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Q_KS(lambda) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lambda^2), in [0, 1].
double kolmogorov_tail(double lambda);

struct PowerLawFit {
  double alpha = 0.0;
  long x_min = 1;
  double ks_distance = 0.0;
  std::size_t n_tail = 0;
};

/// Power-law tail fit: for every distinct candidate x_min, the continuous
/// MLE alpha = 1 + n / sum ln(x / (x_min - 0.5)); the x_min whose tail has
/// the smallest KS distance to the fitted law wins (ties to smaller x_min).
/// Needs at least 10 values >= 1; all-equal input throws
/// DegenerateDistribution.
PowerLawFit power_law_fit(std::span<const long> counts);

/// CDF of the fitted law used by power_law_fit: P(X <= x) for integer x >= x_min.
double power_law_cdf(long x, double alpha, long x_min);

struct HistogramBin {
  double low = 0.0;
  double high = 0.0;
  std::size_t count = 0;
};

/// `bins` equal-width bins spanning [min, max]; the last bin is closed so
/// the maximum is counted.
std::vector<HistogramBin> log_histogram(std::span<const long> counts, int bins);

/// Median (mean of the two middle values for even sizes). Empty input
/// throws InvalidInput.
double median(std::vector<double> values);

}  // namespace camo
