#include "deginv/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "deginv/invariants.hpp"
#include "deginv/modular.hpp"

namespace deginv {

namespace {

constexpr double kPi = std::numbers::pi;

SiegelPoint2 random_siegel(std::mt19937_64& rng, double lambda_min) {
  std::uniform_real_distribution<double> re(-0.5, 0.5);
  std::uniform_real_distribution<double> diag(0.8, 2.0);
  std::uniform_real_distribution<double> off(-0.4, 0.4);
  for (;;) {
    const RealSym2 y{diag(rng), off(rng), diag(rng)};
    if (y.min_eigenvalue() < lambda_min) continue;
    return {{re(rng), y.a11}, {re(rng), y.a12}, {re(rng), y.a22}};
  }
}

UpperHalfPoint random_upper(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-0.5, 0.5);
  std::uniform_real_distribution<double> im(0.7, 2.0);
  return {re(rng), im(rng)};
}

// Genus-1 theta constant with characteristic (a/2, b/2), summed directly.
Complex theta_const_1d(int a, int b, Complex omega) {
  const Complex i(0.0, 1.0);
  Complex sum = 0.0;
  for (int n = -30; n <= 30; ++n) {
    const double k = n + 0.5 * a;
    sum += std::exp(kPi * i * (k * k * omega + k * static_cast<double>(b)));
  }
  return sum;
}

SelftestGroup even_group(const SelftestOptions& options) {
  int count = 0;
  bool has_all_halves = false;
  const auto top = ThetaChar2::from_halves(1, 1, 1, 1);
  for (const auto& c : all_characteristics()) {
    if (options.parity(c) != 1) continue;
    ++count;
    if (c == top) has_all_halves = true;
  }
  const auto listed = even_characteristics();
  bool listed_ok = listed.size() == 10;
  for (const auto& c : listed) listed_ok = listed_ok && options.parity(c) == 1;
  const double residual = std::abs(count - 10) + (has_all_halves ? 0.0 : 1.0);
  return {"even_characteristics", residual == 0.0 && listed_ok, residual};
}

SelftestGroup odd_group() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto omega = random_siegel(rng, 0.3);
    for (const auto& c : all_characteristics()) {
      if (c.is_even()) continue;
      worst = std::max(worst, std::abs(theta_char_genus2(c, {0.0, 0.0}, omega)));
    }
  }
  return {"odd_vanishing", worst < 1e-12, worst};
}

SelftestGroup splitting_group() {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const auto w1 = random_upper(rng);
    const auto w2 = random_upper(rng);
    const SiegelPoint2 omega(w1.value(), 0.0, w2.value());
    for (const auto& c : all_characteristics()) {
      const Complex lhs = theta_char_genus2(c, {0.0, 0.0}, omega);
      const Complex rhs =
          theta_const_1d(c.a[0], c.b[0], w1.value()) * theta_const_1d(c.a[1], c.b[1], w2.value());
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return {"splitting", worst < 1e-11, worst};
}

SelftestGroup sl2_group() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<int> shift(-2, 2);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto base = reduce_fundamental_domain(random_upper(rng));
    const double expected = 0.25 * std::log(base.im()) + log_abs_eta(base);
    Complex w = base.value();
    const int steps = len(rng);
    for (int s = 0; s < steps; ++s) {
      w += static_cast<double>(shift(rng));
      w = -1.0 / w;
    }
    const double got = log_petersson_eta(UpperHalfPoint::from_complex(w)).log_norm;
    worst = std::max(worst, std::abs(got - expected));
  }
  return {"sl2_invariance", worst < 1e-10, worst};
}

SelftestGroup consistency_group() {
  int failures = 0;
  for (int h1 = 1; h1 <= 10; ++h1) {
    for (int h2 = 1; h2 <= 10; ++h2) {
      const auto split = SeparatingSplit::of(h1, h2);
      const auto via = beta_asymptotics_via_lambda(split.genus(), phi_asymptotics(split),
                                                   delta_asymptotics(split));
      if (!(via == beta_asymptotics(split))) ++failures;
    }
  }
  for (int h = 1; h <= 10; ++h) {
    const auto split = NonSeparatingSplit::of(h);
    const auto via = beta_asymptotics_via_lambda(split.genus(), phi_asymptotics(split),
                                                 delta_asymptotics(split));
    if (!(via == beta_asymptotics(split))) ++failures;
  }
  return {"consistency_chain", failures == 0, static_cast<double>(failures)};
}

SelftestGroup identities_group() {
  int failures = 0;
  for (int h1 = 1; h1 <= 20; ++h1) {
    for (int h2 = 1; h2 <= 20; ++h2) {
      if (!separating_fiber_identity(h1, h2).holds()) ++failures;
    }
  }
  for (int h = 1; h <= 20; ++h) {
    if (!nonseparating_fiber_identity(h).holds()) ++failures;
    if (!nonseparating_log_tau_identity(h).holds()) ++failures;
    if (!nonseparating_green_identity(h).holds()) ++failures;
  }
  return {"proof_identities", failures == 0, static_cast<double>(failures)};
}

template <typename F>
SelftestGroup guarded(const std::string& name, F&& run) {
  try {
    return run();
  } catch (const std::exception&) {
    return {name, false, std::numeric_limits<double>::infinity()};
  }
}

}  // namespace

const std::vector<std::string>& selftest_group_names() {
  static const std::vector<std::string> names{"even_characteristics", "odd_vanishing",
                                              "splitting",            "sl2_invariance",
                                              "consistency_chain",    "proof_identities"};
  return names;
}

std::vector<SelftestGroup> run_selftest(const SelftestOptions& options) {
  const auto& n = selftest_group_names();
  return {guarded(n[0], [&] { return even_group(options); }),
          guarded(n[1], odd_group),
          guarded(n[2], splitting_group),
          guarded(n[3], sl2_group),
          guarded(n[4], consistency_group),
          guarded(n[5], identities_group)};
}

}  // namespace deginv
