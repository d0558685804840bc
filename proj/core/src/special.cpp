#include "camo/special.hpp"

#include <algorithm>
#include <array>
#include <initializer_list>
#include <cmath>
#include <limits>

#include "camo/error.hpp"

namespace camo {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

// Debye polynomials u_k(t), coefficients of t^(k), t^(k+2), ..., t^(3k).
// Generated from u_{k+1} = t^2(1-t^2)u_k'/2 + (1/8) int_0^t (1-5s^2) u_k ds.

double debye_u(int k, double t) {
  const double t2 = t * t;
  auto poly = [t2](std::initializer_list<double> c) {
    // c is ordered from the highest power down; Horner in t^2.
    double acc = 0.0;
    for (double v : c) acc = acc * t2 + v;
    return acc;
  };
  switch (k) {
    case 0: return 1.0;
    case 1: return t * poly({-5.0 / 24.0, 1.0 / 8.0});
    case 2: return t2 * poly({385.0 / 1152.0, -77.0 / 192.0, 9.0 / 128.0});
    case 3:
      return t * t2 *
             poly({-85085.0 / 82944.0, 17017.0 / 9216.0, -4563.0 / 5120.0, 75.0 / 1024.0});
    case 4:
      return t2 * t2 *
             poly({37182145.0 / 7962624.0, -7436429.0 / 663552.0, 144001.0 / 16384.0,
                   -96833.0 / 40960.0, 3675.0 / 32768.0});
    case 5:
      return t * t2 * t2 *
             poly({-5391411025.0 / 191102976.0, 5391411025.0 / 63700992.0,
                   -108313205.0 / 1179648.0, 250881631.0 / 5898240.0,
                   -67608983.0 / 9175040.0, 59535.0 / 262144.0});
    case 6:
      return t2 * t2 * t2 *
             poly({5849680962125.0 / 27518828544.0, -1169936192425.0 / 1528823808.0,
                   4445922195.0 / 4194304.0, -33010308331.0 / 47185920.0,
                   1441372804469.0 / 6606028800.0, -388895895.0 / 14680064.0,
                   2401245.0 / 4194304.0});
    default: return 0.0;
  }
}

// sum_k (x/2)^(2k+nu) / (k! Gamma(k+nu+1)), accumulated relative to the
// k = 0 term with periodic rescaling so large x cannot overflow.
double log_series(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  constexpr double kBig = 1e280;
  for (int k = 1; k < 1'000'000; ++k) {
    const double ratio = q / (static_cast<double>(k) * (static_cast<double>(k) + nu));
    term *= ratio;
    sum += term;
    if (sum > kBig) {
      sum /= kBig;
      term /= kBig;
      log_scale += std::log(kBig);
    }
    if (ratio < 1.0 && term <= sum * 1e-17) break;
  }
  return nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) + log_scale + std::log(sum);
}

// I_nu(nu z) ~ exp(nu eta) / (sqrt(2 pi nu) (1+z^2)^(1/4)) sum_k u_k(t) / nu^k.
double log_debye(double nu, double x) {
  const double root = std::hypot(nu, x);  // nu * sqrt(1 + z^2)
  const double t = nu / root;
  const double nu_eta = root + nu * std::log(x / (nu + root));
  double series = 0.0;
  double nu_pow = 1.0;
  for (int k = 0; k <= 6; ++k) {
    series += debye_u(k, t) / nu_pow;
    nu_pow *= nu;
  }
  return nu_eta - 0.5 * (kLog2Pi + std::log(nu)) + 0.5 * std::log(t) + std::log(series);
}

// I_nu(x) ~ e^x / sqrt(2 pi x) sum_k (-1)^k a_k(nu) / x^k.
double log_hankel(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev_mag = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * x);
    const double mag = std::abs(next);
    if (mag >= prev_mag) break;  // asymptotic series has started to diverge
    term = next;
    sum += term;
    prev_mag = mag;
    if (mag <= 1e-17 * std::abs(sum)) break;
  }
  return x - 0.5 * (kLog2Pi + std::log(x)) + std::log(sum);
}

}  // namespace

double log_bessel_i(double nu, double x) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw InvalidInput("log_bessel_i: order must be >= 0");
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("log_bessel_i: argument must be > 0");
  if (x <= std::max(10.0, 0.5 * nu)) return log_series(nu, x);
  if (nu >= 25.0) return log_debye(nu, x);
  if (x < std::max(30.0, nu * nu)) return log_series(nu, x);
  return log_hankel(nu, x);
}

double bessel_i_ratio(double nu, double x) {
  return std::exp(log_bessel_i(nu + 1.0, x) - log_bessel_i(nu, x));
}

}  // namespace camo
