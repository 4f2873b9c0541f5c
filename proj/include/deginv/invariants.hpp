#pragma once

// Invariants of elliptic and genus-2 surfaces (delta, phi, the torus Green's
// function, log d, beta) and the closed-form limit evaluators for
// degenerating families, with coefficients held as exact rationals.

#include <array>
#include <boost/rational.hpp>

#include "deginv/theta.hpp"

namespace deginv {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// log(2 pi)
double log_two_pi();

struct EllipticCurveData {
  UpperHalfPoint omega;
};

/// Difference u = b - a of two points on C / (Z + Z omega).
class TorusDisplacement {
public:
  /// Throws DomainError if u lies within 1e-9 of the lattice Z + Z omega.
  TorusDisplacement(Complex u, const UpperHalfPoint& omega);

  Complex u() const { return u_; }
  const UpperHalfPoint& omega() const { return omega_; }
  /// Representative of u with lattice coordinates in [-1/2, 1/2].
  Complex reduced() const { return reduced_; }

private:
  Complex u_;
  UpperHalfPoint omega_;
  Complex reduced_;
};

/// Distance from u to the nearest point of Z + Z omega.
double lattice_distance(Complex u, const UpperHalfPoint& omega);

/// Genus h = h1 + h2 degenerating to two components of genera h1, h2.
struct SeparatingSplit {
  int h1 = 1;
  int h2 = 1;
  /// Throws DomainError unless h1, h2 >= 1.
  static SeparatingSplit of(int h1, int h2);
  int genus() const { return h1 + h2; }
};

/// Genus h + 1 degenerating to a genus-h surface with two points identified.
struct NonSeparatingSplit {
  int h = 1;
  /// Throws DomainError unless h >= 1.
  static NonSeparatingSplit of(int h);
  int genus() const { return h + 1; }
};

struct SeparatingInputs {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
};

struct NonSeparatingInputs {
  double phi = 0.0;
  double delta = 0.0;
  double g_ab = 0.0;
};

/// Symbols appearing in the constant term of a limit formula.
enum class Term { phi1, phi2, delta1, delta2, phi, delta, g_ab, log_2pi };
inline constexpr std::size_t kTermCount = 8;

/// Rational linear combination of Terms.
struct LinearForm {
  std::array<Rational, kTermCount> coeff{};

  Rational& operator[](Term t) { return coeff[static_cast<std::size_t>(t)]; }
  const Rational& operator[](Term t) const { return coeff[static_cast<std::size_t>(t)]; }

  double evaluate(const SeparatingInputs& in) const;
  double evaluate(const NonSeparatingInputs& in) const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// lim [X(M_t) + slope log|tau| + log_log_coeff log(-log|tau|)] = limit.
struct Asymptotics {
  Rational slope{0};
  Rational log_log_coeff{0};
  LinearForm limit;

  friend bool operator==(const Asymptotics&, const Asymptotics&) = default;
};

struct LimitPair {
  double slope = 0.0;
  double limit = 0.0;
};

struct LimitTriple {
  double slope = 0.0;
  double log_log_coeff = 0.0;
  double limit = 0.0;
};

/// Coefficients of lambda = c_phi phi + c_delta delta + c_log2pi log(2 pi) in genus h.
struct LambdaCoefficients {
  Rational phi;
  Rational delta;
  Rational log_2pi;
};
LambdaCoefficients lambda_coefficients(int h);

// Asymptotics in rational form. The phi and delta formulas are the inputs;
// beta_asymptotics states the beta formula directly, and
// beta_asymptotics_via_lambda derives it as (8h+4) lambda.
Asymptotics phi_asymptotics(const SeparatingSplit& split);
Asymptotics phi_asymptotics(const NonSeparatingSplit& split);
Asymptotics delta_asymptotics(const SeparatingSplit& split);
Asymptotics delta_asymptotics(const NonSeparatingSplit& split);
Asymptotics beta_asymptotics(const SeparatingSplit& split);
Asymptotics beta_asymptotics(const NonSeparatingSplit& split);
Asymptotics beta_asymptotics_via_lambda(int total_genus, const Asymptotics& phi,
                                        const Asymptotics& delta);

/// phi of a genus-1 surface; always 0.
double phi_genus1();

/// delta(M) = -24 log||eta||(omega) - 8 log(2 pi).
double delta_elliptic(const EllipticCurveData& curve, const AccuracyTarget& acc = {});

/// log|eta(omega)| for any omega, through the Petersson norm and reduction.
double log_abs_eta_any(const UpperHalfPoint& omega, const AccuracyTarget& acc = {});

/// g(a, b) = -pi (im u)^2 / im omega + log|theta(u, omega)| - log|eta(omega)|,
/// evaluated at u as given (not reduced). The Gaussian factor carries the
/// sign that makes g doubly periodic for this theta normalization.
double green_torus(const TorusDisplacement& d, const AccuracyTarget& acc = {});

/// Mean of g(u) over the fundamental parallelogram by the periodic
/// trapezoid rule on the cell centres of an n x n grid, omitting the four
/// cells that touch u = 0. Rows are evaluated in parallel with OpenMP and
/// summed in row order, so the result equals green_torus_mean_serial.
/// threads <= 0 uses the OpenMP default.
double green_torus_mean(const UpperHalfPoint& omega, int grid = 400, const AccuracyTarget& acc = {},
                        int threads = 0);
double green_torus_mean_serial(const UpperHalfPoint& omega, int grid = 400,
                               const AccuracyTarget& acc = {});

/// log d = 2 log|eta(omega)| + log(2 pi).
double arakelov_d_torus(const EllipticCurveData& curve, const AccuracyTarget& acc = {});

/// beta = -2 log||chi_10||(Omega) - 40 log(2 pi) + 24 log 2.
/// Throws VanishingError on the zero locus of chi_10.
double beta_genus2(const SiegelPoint2& omega, const AccuracyTarget& acc = {});

/// lambda = (h-1)/(6(2h+1)) phi + delta/12 - (h/3) log(2 pi).
double lambda_invariant(int h, double phi, double delta);

/// (8h + 4) lambda.
double beta_from_lambda(int h, double lambda);

LimitPair thmA_limit(const SeparatingSplit& split, const SeparatingInputs& in);
LimitPair thmA_limit(const NonSeparatingSplit& split, const NonSeparatingInputs& in);
LimitTriple wentworth_delta_limit(const SeparatingSplit& split, const SeparatingInputs& in);
LimitTriple wentworth_delta_limit(const NonSeparatingSplit& split, const NonSeparatingInputs& in);
LimitTriple thmB_limit(const SeparatingSplit& split, const SeparatingInputs& in);
LimitTriple thmB_limit(const NonSeparatingSplit& split, const NonSeparatingInputs& in);

/// Evaluates an Asymptotics at the boundary.
LimitTriple evaluate(const Asymptotics& a, const SeparatingInputs& in);
LimitTriple evaluate(const Asymptotics& a, const NonSeparatingInputs& in);

// Coefficient identities used inside the degeneration proofs. Each returns
// (lhs, rhs) in exact arithmetic.
struct RationalIdentity {
  Rational lhs;
  Rational rhs;
  bool holds() const { return lhs == rhs; }
};
/// Fiber integral of nu-bar in the separating case equals 2 - 2h.
RationalIdentity separating_fiber_identity(int h1, int h2);
/// Fiber integral of nu-bar in the non-separating case equals 2 - 2(h+1).
RationalIdentity nonseparating_fiber_identity(int h);
/// log|tau| coefficient of phi in the non-separating case, -h/(6(h+1)).
RationalIdentity nonseparating_log_tau_identity(int h);
/// g(a,b) coefficient of phi in the non-separating case, -5h/(3(h+1)).
RationalIdentity nonseparating_green_identity(int h);

}  // namespace deginv
