#pragma once

// Dedekind eta, the genus-1 theta function with odd characteristic, and
// genus-2 theta functions with half-integer characteristics. Every value is
// returned under an absolute-error contract set by an AccuracyTarget.

#include <array>
#include <complex>
#include <vector>

namespace deginv {

using Complex = std::complex<double>;

/// A point of the complex upper half plane.
class UpperHalfPoint {
public:
  /// Throws DomainError unless im > 0 and both parts are finite.
  UpperHalfPoint(double re, double im);

  static UpperHalfPoint from_complex(Complex w) { return {w.real(), w.imag()}; }

  double re() const { return re_; }
  double im() const { return im_; }
  Complex value() const { return {re_, im_}; }

private:
  double re_;
  double im_;
};

/// Real symmetric 2x2 matrix.
struct RealSym2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a12; }
  double min_eigenvalue() const;
};

/// Genus-2 period matrix: complex symmetric with positive definite
/// imaginary part. The off-diagonal entry is stored once.
class SiegelPoint2 {
public:
  /// Throws DomainError if Im is not positive definite or an entry is not finite.
  SiegelPoint2(Complex o11, Complex o12, Complex o22);

  Complex operator()(int i, int j) const;
  Complex o11() const { return o11_; }
  Complex o12() const { return o12_; }
  Complex o22() const { return o22_; }

  RealSym2 imag_part() const { return {o11_.imag(), o12_.imag(), o22_.imag()}; }

private:
  Complex o11_;
  Complex o12_;
  Complex o22_;
};

/// Half-integer characteristic (a, b) with a, b in {0, 1/2}^2. Components
/// are stored in units of 1/2, so each stored entry is 0 or 1.
struct ThetaChar2 {
  std::array<int, 2> a{};
  std::array<int, 2> b{};

  /// Throws DomainError unless every entry is 0 or 1.
  static ThetaChar2 from_halves(int a1, int a2, int b1, int b2);

  /// (-1)^{4 a.b}
  int parity() const { return ((a[0] * b[0] + a[1] * b[1]) % 2 == 0) ? 1 : -1; }
  bool is_even() const { return parity() == 1; }

  friend bool operator==(const ThetaChar2&, const ThetaChar2&) = default;
};

/// Absolute error target and hard cap on the summation radius.
class AccuracyTarget {
public:
  static constexpr double kDefaultEps = 1e-12;
  static constexpr int kDefaultMaxRadius = 64;
  static constexpr int kRadiusCeiling = 256;

  AccuracyTarget() = default;
  /// Throws DomainError unless 0 < eps_abs <= 1e-3 and 4 <= max_radius <= 256.
  AccuracyTarget(double eps_abs, int max_radius);

  double eps_abs() const { return eps_abs_; }
  int max_radius() const { return max_radius_; }

  /// Same cap, different tolerance.
  AccuracyTarget with_eps(double eps_abs) const { return {eps_abs, max_radius_}; }

private:
  double eps_abs_ = kDefaultEps;
  int max_radius_ = kDefaultMaxRadius;
};

/// Smallest im(omega) accepted by the q-product evaluators.
inline constexpr double kEtaMinImag = 0.05;

/// log|eta(omega)| from the truncated q-product.
/// Throws DomainError if im(omega) < 0.05 and AccuracyError if the product
/// needs more than max_radius factors.
double log_abs_eta(const UpperHalfPoint& omega, const AccuracyTarget& acc = {});

/// eta(omega) as a complex number, same truncation policy as log_abs_eta.
Complex eta(const UpperHalfPoint& omega, const AccuracyTarget& acc = {});

/// theta(z, omega) with characteristic (1/2, 1/2):
/// sum_n exp(pi i (n+1/2)^2 omega + 2 pi i (n+1/2)(z+1/2)).
Complex theta_odd_genus1(Complex z, const UpperHalfPoint& omega, const AccuracyTarget& acc = {});

/// theta[alpha](z, Omega) summed over the box max(|n1|,|n2|) <= N in shells of
/// increasing sup-norm. The shell order is fixed, so results are
/// bit-reproducible on a given platform.
Complex theta_char_genus2(const ThetaChar2& alpha, std::array<Complex, 2> z,
                          const SiegelPoint2& omega, const AccuracyTarget& acc = {});

/// The ten even characteristics, lexicographic in (a1, a2, b1, b2) with 0 < 1/2.
std::vector<ThetaChar2> even_characteristics();

/// All sixteen characteristics in the same lexicographic order.
std::vector<ThetaChar2> all_characteristics();

/// Smallest N >= 1 with 8 (N+2) exp(-pi lambda_min (N - offset)^2) < eps.
/// offset bounds the sup-norm shift of the Gaussian centre (1 is the
/// conservative choice for z = 0). Throws AccuracyError if no N <= cap works.
int truncation_radius(double lambda_min, double offset, double eps,
                      int cap = AccuracyTarget::kRadiusCeiling);

}  // namespace deginv
