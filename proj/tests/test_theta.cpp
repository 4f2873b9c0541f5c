#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "deginv/errors.hpp"
#include "deginv/theta.hpp"
#include "oracles.hpp"

using namespace deginv;

TEST_SUITE("theta") {

TEST_CASE("upper half point validation") {
  CHECK_NOTHROW(UpperHalfPoint(0.3, 1e-9));
  CHECK_THROWS_AS(UpperHalfPoint(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(UpperHalfPoint(0.0, -1.0), DomainError);
  CHECK_THROWS_AS(UpperHalfPoint(std::nan(""), 1.0), DomainError);
}

TEST_CASE("siegel point validation and symmetry") {
  const SiegelPoint2 om({0.0, 1.0}, {0.1, 0.2}, {0.0, 1.5});
  CHECK(om(0, 1) == om(1, 0));
  CHECK_THROWS_AS(SiegelPoint2({0.0, 1.0}, {0.0, 2.0}, {0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(SiegelPoint2({0.0, -1.0}, {0.0, 0.0}, {0.0, -1.0}), DomainError);
}

TEST_CASE("accuracy target bounds") {
  CHECK_NOTHROW(AccuracyTarget(1e-3, 4));
  CHECK_NOTHROW(AccuracyTarget(1e-15, 256));
  CHECK_THROWS_AS(AccuracyTarget(0.0, 64), DomainError);
  CHECK_THROWS_AS(AccuracyTarget(2e-3, 64), DomainError);
  CHECK_THROWS_AS(AccuracyTarget(1e-12, 3), DomainError);
  CHECK_THROWS_AS(AccuracyTarget(1e-12, 257), DomainError);
}

TEST_CASE("characteristics") {
  CHECK_THROWS_AS(ThetaChar2::from_halves(2, 0, 0, 0), DomainError);
  const auto all = all_characteristics();
  const auto even = even_characteristics();
  REQUIRE(all.size() == 16);
  REQUIRE(even.size() == 10);
  int brute = 0;
  for (const auto& c : all) brute += ((c.a[0] * c.b[0] + c.a[1] * c.b[1]) % 2 == 0);
  CHECK(brute == 10);
  for (const auto& c : even) CHECK(c.parity() == 1);
  CHECK(std::find(even.begin(), even.end(), ThetaChar2::from_halves(1, 1, 1, 1)) != even.end());
  for (std::size_t k = 1; k < all.size(); ++k) {
    const auto key = [](const ThetaChar2& c) { return c.a[0] * 8 + c.a[1] * 4 + c.b[0] * 2 + c.b[1]; };
    CHECK(key(all[k - 1]) < key(all[k]));
  }
}

TEST_CASE("log_abs_eta examples") {
  CHECK(std::abs(log_abs_eta({0.37, 1.2}) - log_abs_eta({1.37, 1.2})) < 1e-13);
  CHECK(std::abs(log_abs_eta({0.0, 10.0}) - (-20.0 * std::numbers::pi / 24.0)) < 1e-12);
  CHECK(std::abs(log_abs_eta({0.0, 2.0}) - static_cast<double>(oracle::log_abs_eta({0.0, 2.0}))) < 1e-12);
  CHECK_THROWS_AS(log_abs_eta({0.0, 0.04}), DomainError);
  CHECK_THROWS_AS(log_abs_eta({0.0, 0.06}, AccuracyTarget(1e-12, 4)), AccuracyError);
}

TEST_CASE("eta phase agrees with oracle") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const auto w = oracle::random_upper(rng, 0.3, 2.0);
    const auto ref = oracle::eta(w.value());
    const Complex got = eta(w);
    CHECK(std::abs(got - Complex(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) < 2e-12);
  }
}

TEST_CASE("theta_odd_genus1 examples") {
  CHECK(std::abs(theta_odd_genus1(0.0, {0.0, 1.0})) < 1e-14);
  const Complex z(0.3, 0.1);
  CHECK(std::abs(theta_odd_genus1(-z, {0.0, 1.0}) + theta_odd_genus1(z, {0.0, 1.0})) < 1e-13);
  const auto ref = oracle::theta_odd({0.3, 0.0}, {0.0, 1.0});
  CHECK(std::abs(theta_odd_genus1(0.3, {0.0, 1.0}) -
                 Complex(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) < 2e-12);
}

TEST_CASE("theta_odd_genus1 properties") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> coord(-0.5, 0.5);
  for (int k = 0; k < 100; ++k) {
    const auto w = oracle::random_upper(rng, 0.5, 2.0);
    const Complex z(coord(rng), coord(rng) * w.im());
    CHECK(std::abs(theta_odd_genus1(-z, w) + theta_odd_genus1(z, w)) < 1e-12);
    CHECK(std::abs(std::abs(theta_odd_genus1(z + 1.0, w)) - std::abs(theta_odd_genus1(z, w))) < 1e-12);
  }
}

TEST_CASE("theta_char_genus2 examples") {
  const SiegelPoint2 om({0.0, 1.0}, {0.1, 0.0}, {0.0, 2.0});
  CHECK(std::abs(theta_char_genus2(ThetaChar2::from_halves(1, 0, 1, 0), {0.0, 0.0}, om)) < 1e-13);

  const SiegelPoint2 diag({0.0, 1.0}, 0.0, {0.0, 1.5});
  for (const auto& c : all_characteristics()) {
    // One-dimensional factors, summed directly.
    auto one_d = [](int a, int b, double im) {
      long double re = 0.0L, imag = 0.0L;
      for (int n = -40; n <= 40; ++n) {
        const long double k = n + 0.5L * a;
        const long double mod = std::exp(-oracle::kPi * k * k * im);
        const long double ph = oracle::kPi * k * b;
        re += mod * std::cos(ph);
        imag += mod * std::sin(ph);
      }
      return Complex(static_cast<double>(re), static_cast<double>(imag));
    };
    const Complex expected = one_d(c.a[0], c.b[0], 1.0) * one_d(c.a[1], c.b[1], 1.5);
    CHECK(std::abs(theta_char_genus2(c, {0.0, 0.0}, diag) - expected) < 1e-12);
  }

  const SiegelPoint2 om3({0.0, 1.1}, {0.2, 0.1}, {0.0, 1.3});
  const auto ref = oracle::theta2(ThetaChar2::from_halves(0, 0, 0, 0), {0.0, 0.0}, om3, 40);
  CHECK(std::abs(theta_char_genus2(ThetaChar2::from_halves(0, 0, 0, 0), {0.0, 0.0}, om3) -
                 Complex(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) < 2e-12);
}

TEST_CASE("theta_char_genus2 odd vanishing on random points") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 20; ++k) {
    const auto om = oracle::random_siegel(rng, 0.3);
    for (const auto& c : all_characteristics()) {
      if (c.is_even()) continue;
      CHECK(std::abs(theta_char_genus2(c, {0.0, 0.0}, om)) < 1e-12);
    }
  }
}

TEST_CASE("theta_char_genus2 with nonzero z agrees with oracle") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> coord(-0.4, 0.4);
  for (int k = 0; k < 10; ++k) {
    const auto om = oracle::random_siegel(rng, 0.4);
    const std::array<Complex, 2> z{Complex(coord(rng), coord(rng)), Complex(coord(rng), coord(rng))};
    for (const auto& c : all_characteristics()) {
      const auto ref = oracle::theta2(c, z, om, 30);
      const Complex got = theta_char_genus2(c, z, om);
      CHECK(std::abs(got - Complex(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) < 2e-12);
    }
  }
}

TEST_CASE("theta_char_genus2 reports the needed radius") {
  const SiegelPoint2 om({0.0, 0.02}, 0.0, {0.0, 0.02});
  try {
    (void)theta_char_genus2(ThetaChar2::from_halves(0, 0, 0, 0), {0.0, 0.0}, om, AccuracyTarget(1e-12, 8));
    FAIL("expected AccuracyError");
  } catch (const AccuracyError& e) {
    REQUIRE(e.needed_radius().has_value());
    CHECK(*e.needed_radius() > 8);
  }
}

TEST_CASE("truncation_radius") {
  const int n1 = truncation_radius(1.0, 1.0, 1e-14);
  CHECK(n1 <= 5);
  CHECK(8.0 * (n1 + 2) * std::exp(-std::numbers::pi * (n1 - 1.0) * (n1 - 1.0)) < 1e-14);
  CHECK(truncation_radius(10.0, 1.0, 1e-14) <= n1);
  CHECK_THROWS_AS(truncation_radius(1e-6, 1.0, 1e-14), AccuracyError);
}

TEST_CASE("theta sums are bit-reproducible") {
  const SiegelPoint2 om({0.1, 1.1}, {0.2, 0.1}, {-0.3, 1.3});
  const auto c = ThetaChar2::from_halves(1, 0, 0, 1);
  const Complex first = theta_char_genus2(c, {0.0, 0.0}, om);
  for (int k = 0; k < 3; ++k) CHECK(theta_char_genus2(c, {0.0, 0.0}, om) == first);
}

}
