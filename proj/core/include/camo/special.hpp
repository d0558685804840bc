#pragma once

namespace camo {

/// ln I_nu(x), the log of the modified Bessel function of the first kind,
/// for nu >= 0 and x > 0. Evaluated entirely in the log domain so it stays
/// finite where I_nu itself over- or underflows (nu up to ~1e3, x up to
/// ~1e7 and beyond).
///
/// Regimes:
///  - ascending power series, for x <= max(10, nu/2) and, when nu < 25,
///    for x < max(30, nu^2);
///  - Debye uniform expansion in nu through u_6(t), for nu >= 25;
///  - Hankel large-argument expansion, for nu < 25 and x >= max(30, nu^2).
double log_bessel_i(double nu, double x);

/// I_{nu+1}(x) / I_nu(x), from the log-domain values above.
double bessel_i_ratio(double nu, double x);

}  // namespace camo
