#include <gtest/gtest.h>

#include <cmath>

#include "camo/error.hpp"
#include "camo/special.hpp"
#include "references.hpp"

using camo::reference::kBesselRefs;
using camo::reference::series_log_i;

using namespace camo;

TEST(LogBesselI, MatchesHighPrecisionReferences) {
  for (const auto& r : kBesselRefs) {
    EXPECT_NEAR(log_bessel_i(r.nu, r.x), r.log_i, 1e-10 * std::max(1.0, std::abs(r.log_i)))
        << "nu=" << r.nu << " x=" << r.x;
  }
}

TEST(LogBesselI, AgreesWithSeriesOracleAcrossRegimes) {
  // Spans both sides of every regime boundary.
  for (double nu : {0.0, 0.5, 1.0, 4.0, 11.5, 24.0, 24.5, 25.0, 49.0, 149.0, 300.0}) {
    for (double x : {1e-3, 0.5, 9.9, 10.1, 29.0, 31.0, 60.0, 80.0, 200.0, 700.0, 2000.0}) {
      const double expected = static_cast<double>(series_log_i(nu, x));
      EXPECT_NEAR(log_bessel_i(nu, x), expected, 1e-9 * std::max(1.0, std::abs(expected)))
          << "nu=" << nu << " x=" << x;
    }
  }
}

TEST(LogBesselI, HalfOrderClosedForm) {
  // I_{1/2}(x) = sqrt(2/(pi x)) sinh x.
  for (double x : {0.01, 1.0, 5.0, 12.0, 40.0, 300.0}) {
    const double expected =
        0.5 * std::log(2.0 / (M_PI * x)) + x + std::log1p(-std::exp(-2 * x)) - std::log(2.0);
    EXPECT_NEAR(log_bessel_i(0.5, x), expected, 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(LogBesselI, FiniteAtExtremes) {
  for (double nu : {0.0, 49.0, 512.0}) {
    for (double x : {1e-12, 1e3, 1e6, 1e7}) EXPECT_TRUE(std::isfinite(log_bessel_i(nu, x)));
  }
}

TEST(LogBesselI, RejectsBadArguments) {
  EXPECT_THROW(log_bessel_i(-1.0, 1.0), InvalidInput);
  EXPECT_THROW(log_bessel_i(1.0, 0.0), InvalidInput);
  EXPECT_THROW(log_bessel_i(1.0, NAN), InvalidInput);
}

TEST(BesselRatio, WithinUnitInterval) {
  for (double nu : {0.0, 0.5, 4.0, 49.0}) {
    double prev = 0.0;
    for (double x : {0.01, 0.1, 1.0, 10.0, 100.0, 1e4}) {
      const double r = bessel_i_ratio(nu, x);
      EXPECT_GT(r, prev);
      EXPECT_LT(r, 1.0);
      prev = r;
    }
  }
}
