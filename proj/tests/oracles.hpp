#pragma once

// Long-double reference sums used to check the library. They share no code
// with it: plain loops over a fixed, generous range.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "deginv/theta.hpp"

namespace oracle {

using LComplex = std::complex<long double>;

inline constexpr long double kPi = std::numbers::pi_v<long double>;
inline const LComplex kI{0.0L, 1.0L};

inline LComplex widen(std::complex<double> z) { return {z.real(), z.imag()}; }

/// q^(1/24) times the pentagonal-number series for prod (1 - q^n).
inline LComplex eta(std::complex<double> omega_d) {
  const LComplex omega = widen(omega_d);
  LComplex sum = 0.0L;
  for (long k = -400; k <= 400; ++k) {
    const long double e = static_cast<long double>(k * (3 * k - 1)) / 2.0L;
    const LComplex term = std::exp(2.0L * kPi * kI * e * omega);
    sum += (k % 2 == 0) ? term : -term;
  }
  return std::exp(2.0L * kPi * kI * omega / 24.0L) * sum;
}

inline long double log_abs_eta(std::complex<double> omega) { return std::log(std::abs(eta(omega))); }

/// sum over |n| <= radius of exp(pi i (n+1/2)^2 omega + 2 pi i (n+1/2)(z+1/2)).
inline LComplex theta_odd(std::complex<double> z_d, std::complex<double> omega_d, int radius = 50) {
  const LComplex z = widen(z_d);
  const LComplex omega = widen(omega_d);
  LComplex sum = 0.0L;
  for (int n = -radius; n <= radius; ++n) {
    const long double k = n + 0.5L;
    sum += std::exp(kPi * kI * (k * k * omega + 2.0L * k * (z + 0.5L)));
  }
  return sum;
}

/// Box sum over max(|n1|, |n2|) <= radius for a genus-2 characteristic
/// given in half units.
inline LComplex theta2(const deginv::ThetaChar2& c, std::array<std::complex<double>, 2> z_d,
                       const deginv::SiegelPoint2& om, int radius = 40) {
  const LComplex o11 = widen(om.o11()), o12 = widen(om.o12()), o22 = widen(om.o22());
  const LComplex z1 = widen(z_d[0]), z2 = widen(z_d[1]);
  LComplex sum = 0.0L;
  for (int n1 = -radius; n1 <= radius; ++n1) {
    for (int n2 = -radius; n2 <= radius; ++n2) {
      const long double k1 = n1 + 0.5L * c.a[0];
      const long double k2 = n2 + 0.5L * c.a[1];
      const LComplex quad = k1 * k1 * o11 + 2.0L * k1 * k2 * o12 + k2 * k2 * o22;
      const LComplex lin = k1 * (z1 + 0.5L * c.b[0]) + k2 * (z2 + 0.5L * c.b[1]);
      sum += std::exp(kPi * kI * quad + 2.0L * kPi * kI * lin);
    }
  }
  return sum;
}

inline LComplex chi10(const deginv::SiegelPoint2& om, int radius = 30) {
  LComplex prod = 1.0L;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
          if ((a1 * b1 + a2 * b2) % 2 != 0) continue;
          const auto t = theta2(deginv::ThetaChar2{{a1, a2}, {b1, b2}}, {0.0, 0.0}, om, radius);
          prod *= t * t;
        }
  return prod;
}

/// Random Siegel point with im part min eigenvalue >= lambda_min.
inline deginv::SiegelPoint2 random_siegel(std::mt19937_64& rng, double lambda_min,
                                          double diag_lo = 0.6, double diag_hi = 2.0) {
  std::uniform_real_distribution<double> re(-0.5, 0.5);
  std::uniform_real_distribution<double> diag(diag_lo, diag_hi);
  std::uniform_real_distribution<double> off(-0.4, 0.4);
  for (;;) {
    const deginv::RealSym2 y{diag(rng), off(rng), diag(rng)};
    if (y.min_eigenvalue() < lambda_min) continue;
    return {{re(rng), y.a11}, {re(rng), y.a12}, {re(rng), y.a22}};
  }
}

inline deginv::UpperHalfPoint random_upper(std::mt19937_64& rng, double im_lo = 0.6, double im_hi = 2.0) {
  std::uniform_real_distribution<double> re(-0.5, 0.5);
  std::uniform_real_distribution<double> im(im_lo, im_hi);
  return {re(rng), im(rng)};
}

}  // namespace oracle
