#include "deginv/modular.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "deginv/errors.hpp"

namespace deginv {

Complex chi10(const SiegelPoint2& omega, const AccuracyTarget& acc) {
  const std::array<Complex, 2> origin{};
  const auto chars = even_characteristics();

  double bound = 1.0;
  for (const auto& alpha : chars) {
    bound = std::max(bound, std::abs(theta_char_genus2(alpha, origin, omega, acc)));
  }
  // Slack for the first-pass error in the bound itself.
  bound += acc.eps_abs();

  const double factor_eps = acc.eps_abs() / (20.0 * std::pow(bound, 19));
  const AccuracyTarget factor_acc = acc.with_eps(factor_eps);
  Complex product{1.0, 0.0};
  for (const auto& alpha : chars) {
    const Complex th = theta_char_genus2(alpha, origin, omega, factor_acc);
    product *= th * th;
  }
  return product;
}

PeterssonValue log_petersson_eta(const UpperHalfPoint& omega, const AccuracyTarget& acc) {
  const UpperHalfPoint reduced = reduce_fundamental_domain(omega);
  return {0.25 * std::log(reduced.im()) + log_abs_eta(reduced, acc), false};
}

PeterssonValue log_petersson_chi10(const SiegelPoint2& omega, const AccuracyTarget& acc) {
  const double value = std::abs(chi10(omega, acc));
  if (value < acc.eps_abs()) {
    throw VanishingError("chi10 vanishes to within eps_abs (|chi10| = " + std::to_string(value) +
                         ")");
  }
  return {5.0 * std::log(omega.imag_part().det()) + std::log(value), false};
}

UpperHalfPoint reduce_fundamental_domain(const UpperHalfPoint& omega) {
  constexpr int kMaxSteps = 10000;
  Complex w = omega.value();
  for (int step = 0; step < kMaxSteps; ++step) {
    if (std::abs(w.real()) > 0.5) {
      w -= std::floor(w.real() + 0.5);
    }
    if (std::norm(w) < 1.0) {
      w = -1.0 / w;
      continue;
    }
    if (std::abs(w.real()) <= 0.5) return UpperHalfPoint::from_complex(w);
  }
  throw NonTerminationError("fundamental-domain reduction exceeded 10000 steps");
}

bool in_fundamental_domain(const UpperHalfPoint& omega, double tol) {
  return std::abs(omega.re()) <= 0.5 + tol && std::abs(omega.value()) >= 1.0 - tol;
}

}  // namespace deginv
