#include "deginv/theta.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "deginv/errors.hpp"

namespace deginv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// i^m, exact.
Complex i_pow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// log|1 - x| without cancellation for small x.
double log_abs_one_minus(Complex x) {
  return 0.5 * std::log1p(std::norm(x) - 2.0 * x.real());
}

// Number of q-product factors needed so that the neglected factors change
// log|prod| by less than eps/2.
int eta_product_length(double abs_q, double eps, int cap) {
  constexpr int kSearchLimit = 1 << 22;
  double power = abs_q;  // |q|^{N+1} for N = 0
  for (int n = 0; n <= kSearchLimit; ++n) {
    const double head = power / (1.0 - abs_q);
    const double tail = head / (1.0 - power);
    if (n >= 1 && head < 0.5 * eps && tail < 0.5 * eps) {
      if (n > cap) {
        throw AccuracyError("eta product needs " + std::to_string(n) +
                                " factors, max_radius is " + std::to_string(cap),
                            n);
      }
      return n;
    }
    power *= abs_q;
  }
  throw AccuracyError("eta product does not converge in double precision");
}

void check_eta_domain(const UpperHalfPoint& omega) {
  if (omega.im() < kEtaMinImag) {
    throw DomainError("eta: im(omega) = " + std::to_string(omega.im()) +
                      " is below 0.05; reduce to the fundamental domain first");
  }
}

Complex q_power(const UpperHalfPoint& omega, int n) {
  return std::exp(2.0 * kPi * kI * static_cast<double>(n) * omega.value());
}

// Radius for the genus-1 odd theta sum: terms with |n + 1/2| <= N + 1/2 are kept.
int odd_theta_radius(double imag_omega, double abs_imag_z, double eps, int cap) {
  constexpr int kSearchLimit = 1 << 20;
  for (int n = 0; n <= kSearchLimit; ++n) {
    const double k0 = n + 1.5;
    const double ratio = std::exp(-kPi * imag_omega * (2.0 * k0 + 1.0) + 2.0 * kPi * abs_imag_z);
    if (ratio >= 1.0) continue;
    const double first = std::exp(-kPi * imag_omega * k0 * k0 + 2.0 * kPi * k0 * abs_imag_z);
    const double tail = 2.0 * first / (1.0 - ratio);
    if (tail < eps) {
      if (n > cap) {
        throw AccuracyError("theta: radius " + std::to_string(n) + " exceeds max_radius " +
                                std::to_string(cap),
                            n);
      }
      return n;
    }
  }
  throw AccuracyError("theta: no admissible truncation radius");
}

}  // namespace

UpperHalfPoint::UpperHalfPoint(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im) || !(im > 0.0)) {
    throw DomainError("UpperHalfPoint requires finite re and im > 0, got im = " +
                      std::to_string(im));
  }
}

double RealSym2::min_eigenvalue() const {
  const double half_gap = std::hypot(0.5 * (a11 - a22), a12);
  return 0.5 * (a11 + a22) - half_gap;
}

SiegelPoint2::SiegelPoint2(Complex o11, Complex o12, Complex o22)
    : o11_(o11), o12_(o12), o22_(o22) {
  for (Complex c : {o11, o12, o22}) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("SiegelPoint2: non-finite entry");
    }
  }
  const RealSym2 y = imag_part();
  if (!(y.trace() > 0.0) || !(y.det() > 0.0)) {
    throw DomainError("SiegelPoint2: imaginary part is not positive definite");
  }
}

Complex SiegelPoint2::operator()(int i, int j) const {
  if (i == 0 && j == 0) return o11_;
  if (i == 1 && j == 1) return o22_;
  return o12_;
}

ThetaChar2 ThetaChar2::from_halves(int a1, int a2, int b1, int b2) {
  for (int v : {a1, a2, b1, b2}) {
    if (v != 0 && v != 1) throw DomainError("ThetaChar2 entries must be 0 or 1 (units of 1/2)");
  }
  return ThetaChar2{{a1, a2}, {b1, b2}};
}

AccuracyTarget::AccuracyTarget(double eps_abs, int max_radius)
    : eps_abs_(eps_abs), max_radius_(max_radius) {
  if (!(eps_abs > 0.0) || !(eps_abs <= 1e-3)) {
    throw DomainError("AccuracyTarget: eps_abs must lie in (0, 1e-3]");
  }
  if (max_radius < 4 || max_radius > kRadiusCeiling) {
    throw DomainError("AccuracyTarget: max_radius must lie in [4, 256]");
  }
}

double log_abs_eta(const UpperHalfPoint& omega, const AccuracyTarget& acc) {
  check_eta_domain(omega);
  const double abs_q = std::exp(-2.0 * kPi * omega.im());
  const int n_factors = eta_product_length(abs_q, acc.eps_abs(), acc.max_radius());
  double sum = -kPi * omega.im() / 12.0;
  for (int n = 1; n <= n_factors; ++n) {
    sum += log_abs_one_minus(q_power(omega, n));
  }
  return sum;
}

Complex eta(const UpperHalfPoint& omega, const AccuracyTarget& acc) {
  check_eta_domain(omega);
  const double abs_q = std::exp(-2.0 * kPi * omega.im());
  // Relative accuracy of the product is what matters; |eta| <= 1 on the domain.
  const int n_factors = eta_product_length(abs_q, acc.eps_abs(), acc.max_radius());
  Complex prod = std::exp(kPi * kI * omega.value() / 12.0);
  for (int n = 1; n <= n_factors; ++n) {
    prod *= 1.0 - q_power(omega, n);
  }
  return prod;
}

Complex theta_odd_genus1(Complex z, const UpperHalfPoint& omega, const AccuracyTarget& acc) {
  const int radius =
      odd_theta_radius(omega.im(), std::abs(z.imag()), acc.eps_abs(), acc.max_radius());
  const Complex w = omega.value();
  Complex sum{0.0, 0.0};
  // k = n + 1/2 = m / 2 with m odd; exp(2 pi i k (z + 1/2)) = exp(2 pi i k z) i^m.
  auto term = [&](int m) {
    const double k = 0.5 * m;
    return std::exp(kPi * kI * (k * k * w + 2.0 * k * z)) * i_pow(m);
  };
  for (int j = 0; j <= radius; ++j) {
    sum += term(2 * j + 1);
    sum += term(-2 * j - 1);
  }
  return sum;
}

Complex theta_char_genus2(const ThetaChar2& alpha, std::array<Complex, 2> z,
                          const SiegelPoint2& omega, const AccuracyTarget& acc) {
  const RealSym2 y = omega.imag_part();
  const double lambda_min = y.min_eigenvalue();

  // |term| = exp(pi c.Y.c) exp(-pi (v + c) Y (v + c)) with c = Y^{-1} Im z.
  const double w1 = z[0].imag();
  const double w2 = z[1].imag();
  const double det = y.det();
  const double c1 = (y.a22 * w1 - y.a12 * w2) / det;
  const double c2 = (-y.a12 * w1 + y.a11 * w2) / det;
  const double growth = kPi * (c1 * w1 + c2 * w2);
  const double offset = std::max(1.0, 0.5 + std::max(std::abs(c1), std::abs(c2)));
  const double eps = acc.eps_abs() * std::exp(-growth);

  int radius = 0;
  try {
    radius = truncation_radius(lambda_min, offset, eps);
  } catch (const AccuracyError& e) {
    throw AccuracyError(std::string("theta_char_genus2: ") + e.what(), e.needed_radius());
  }
  if (radius > acc.max_radius()) {
    throw AccuracyError("theta_char_genus2: needs radius " + std::to_string(radius) +
                            ", max_radius is " + std::to_string(acc.max_radius()),
                        radius);
  }

  const Complex o11 = omega.o11();
  const Complex o12 = omega.o12();
  const Complex o22 = omega.o22();
  auto term = [&](int n1, int n2) {
    const int m1 = 2 * n1 + alpha.a[0];
    const int m2 = 2 * n2 + alpha.a[1];
    const double v1 = 0.5 * m1;
    const double v2 = 0.5 * m2;
    const Complex quad = v1 * v1 * o11 + 2.0 * v1 * v2 * o12 + v2 * v2 * o22;
    const Complex lin = v1 * z[0] + v2 * z[1];
    // exp(2 pi i v.b) = i^{m.b} since v = m/2 and b is in units of 1/2.
    return std::exp(kPi * kI * (quad + 2.0 * lin)) * i_pow(m1 * alpha.b[0] + m2 * alpha.b[1]);
  };

  Complex sum = term(0, 0);
  for (int m = 1; m <= radius; ++m) {
    for (int n1 = -m; n1 <= m; ++n1) {
      sum += term(n1, m);
      sum += term(n1, -m);
    }
    for (int n2 = -m + 1; n2 <= m - 1; ++n2) {
      sum += term(m, n2);
      sum += term(-m, n2);
    }
  }
  return sum;
}

std::vector<ThetaChar2> all_characteristics() {
  std::vector<ThetaChar2> out;
  out.reserve(16);
  for (int a1 = 0; a1 <= 1; ++a1)
    for (int a2 = 0; a2 <= 1; ++a2)
      for (int b1 = 0; b1 <= 1; ++b1)
        for (int b2 = 0; b2 <= 1; ++b2) out.push_back(ThetaChar2{{a1, a2}, {b1, b2}});
  return out;
}

std::vector<ThetaChar2> even_characteristics() {
  std::vector<ThetaChar2> out;
  for (const auto& c : all_characteristics()) {
    if (c.is_even()) out.push_back(c);
  }
  return out;
}

int truncation_radius(double lambda_min, double offset, double eps, int cap) {
  if (!(lambda_min > 0.0) || !std::isfinite(lambda_min)) {
    throw DomainError("truncation_radius: lambda_min must be positive");
  }
  if (!(eps > 0.0)) throw DomainError("truncation_radius: eps must be positive");
  if (!(offset >= 0.0) || !std::isfinite(offset)) {
    throw DomainError("truncation_radius: offset must be finite and non-negative");
  }
  auto bound = [&](int n) {
    const double d = n - offset;
    return 8.0 * (n + 2) * std::exp(-kPi * lambda_min * d * d);
  };
  constexpr int kSearchLimit = 1 << 24;
  for (int n = 1; n <= kSearchLimit; ++n) {
    if (n <= offset) continue;
    if (bound(n) < eps) {
      if (n > cap) {
        throw AccuracyError("truncation radius " + std::to_string(n) + " exceeds cap " +
                                std::to_string(cap),
                            n);
      }
      return n;
    }
  }
  throw AccuracyError("truncation radius beyond search limit");
}

}  // namespace deginv
