#include "deginv/invariants.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <vector>

#include <omp.h>

#include "deginv/errors.hpp"
#include "deginv/modular.hpp"

namespace deginv {

namespace {

constexpr double kPi = std::numbers::pi;

// Per-term theta tolerance so that log|theta| is good to 1e-10 whenever |theta| >= 1e-6.
constexpr double kGreenThetaEps = 5e-17;

Rational q(long long num, long long den = 1) { return Rational(num, den); }

double term_value(Term t, const SeparatingInputs& in) {
  switch (t) {
    case Term::phi1: return in.phi1;
    case Term::phi2: return in.phi2;
    case Term::delta1: return in.delta1;
    case Term::delta2: return in.delta2;
    case Term::log_2pi: return log_two_pi();
    default: return 0.0;
  }
}

double term_value(Term t, const NonSeparatingInputs& in) {
  switch (t) {
    case Term::phi: return in.phi;
    case Term::delta: return in.delta;
    case Term::g_ab: return in.g_ab;
    case Term::log_2pi: return log_two_pi();
    default: return 0.0;
  }
}

template <class Inputs>
double evaluate_form(const LinearForm& form, const Inputs& in) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kTermCount; ++i) {
    const Rational& c = form.coeff[i];
    if (c.numerator() != 0) sum += to_double(c) * term_value(static_cast<Term>(i), in);
  }
  return sum;
}

struct GreenKernel {
  UpperHalfPoint omega;
  double log_eta;
  AccuracyTarget theta_acc;
  int grid;

  double at(Complex u) const {
    const double im_u = u.imag();
    return -kPi * im_u * im_u / omega.im() +
           std::log(std::abs(theta_odd_genus1(u, omega, theta_acc))) - log_eta;
  }

  bool omitted(int i, int j) const {
    const bool edge_i = (i == 0 || i == grid - 1);
    const bool edge_j = (j == 0 || j == grid - 1);
    return edge_i && edge_j;
  }

  double row_sum(int j) const {
    const double y = (j + 0.5) / grid;
    double sum = 0.0;
    for (int i = 0; i < grid; ++i) {
      if (omitted(i, j)) continue;
      const double x = (i + 0.5) / grid;
      sum += at(x + y * omega.value());
    }
    return sum;
  }
};

GreenKernel make_green_kernel(const UpperHalfPoint& omega, int grid, const AccuracyTarget& acc) {
  if (grid < 4) throw DomainError("green_torus_mean: grid must be at least 4");
  return GreenKernel{omega, log_abs_eta_any(omega, acc),
                     acc.with_eps(std::min(acc.eps_abs(), kGreenThetaEps)), grid};
}

}  // namespace

double log_two_pi() { return std::log(2.0 * kPi); }

double lattice_distance(Complex u, const UpperHalfPoint& omega) {
  const double y = u.imag() / omega.im();
  const double x = u.real() - y * omega.re();
  const double dx = x - std::round(x);
  const double dy = y - std::round(y);
  double best = std::abs(Complex(dx, 0.0) + dy * omega.value());
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      best = std::min(best, std::abs(Complex(dx + i, 0.0) + (dy + j) * omega.value()));
    }
  }
  return best;
}

TorusDisplacement::TorusDisplacement(Complex u, const UpperHalfPoint& omega)
    : u_(u), omega_(omega) {
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag())) {
    throw DomainError("TorusDisplacement: u is not finite");
  }
  if (lattice_distance(u, omega) < 1e-9) {
    throw DomainError("TorusDisplacement: u lies on the period lattice");
  }
  const double y = u.imag() / omega.im();
  const double x = u.real() - y * omega.re();
  reduced_ = Complex(x - std::round(x), 0.0) + (y - std::round(y)) * omega.value();
}

SeparatingSplit SeparatingSplit::of(int h1, int h2) {
  if (h1 < 1 || h2 < 1) throw DomainError("separating split needs h1, h2 >= 1");
  return {h1, h2};
}

NonSeparatingSplit NonSeparatingSplit::of(int h) {
  if (h < 1) throw DomainError("non-separating split needs h >= 1");
  return {h};
}

double LinearForm::evaluate(const SeparatingInputs& in) const { return evaluate_form(*this, in); }
double LinearForm::evaluate(const NonSeparatingInputs& in) const {
  return evaluate_form(*this, in);
}

LambdaCoefficients lambda_coefficients(int h) {
  if (h < 1) throw DomainError("lambda: genus must be >= 1");
  return {q(h - 1, 6LL * (2 * h + 1)), q(1, 12), q(-h, 3)};
}

Asymptotics phi_asymptotics(const SeparatingSplit& s) {
  const long long h = s.genus();
  Asymptotics a;
  a.slope = q(2LL * s.h1 * s.h2, h);
  a.limit[Term::phi1] = 1;
  a.limit[Term::phi2] = 1;
  return a;
}

Asymptotics phi_asymptotics(const NonSeparatingSplit& s) {
  const long long h = s.h;
  Asymptotics a;
  a.slope = q(h, 6 * (h + 1));
  a.limit[Term::phi] = 1;
  a.limit[Term::g_ab] = q(-5 * h, 3 * (h + 1));
  return a;
}

Asymptotics delta_asymptotics(const SeparatingSplit& s) {
  const long long h = s.genus();
  Asymptotics a;
  a.slope = q(4LL * s.h1 * s.h2, h);
  a.limit[Term::delta1] = 1;
  a.limit[Term::delta2] = 1;
  return a;
}

Asymptotics delta_asymptotics(const NonSeparatingSplit& s) {
  const long long h = s.h;
  Asymptotics a;
  a.slope = q(4 * h + 3, 3 * (h + 1));
  a.log_log_coeff = 6;
  a.limit[Term::delta] = 1;
  a.limit[Term::g_ab] = q(-2 * (2 * h - 3), 3 * (h + 1));
  a.limit[Term::log_2pi] = -2;
  return a;
}

Asymptotics beta_asymptotics(const SeparatingSplit& s) {
  const long long h = s.genus();
  Asymptotics a;
  a.slope = 4LL * s.h1 * s.h2;
  a.limit[Term::phi1] = q(2 * (h - 1), 3);
  a.limit[Term::phi2] = q(2 * (h - 1), 3);
  a.limit[Term::delta1] = q(2 * h + 1, 3);
  a.limit[Term::delta2] = q(2 * h + 1, 3);
  a.limit[Term::log_2pi] = -q((8 * h + 4) * h, 3);
  return a;
}

Asymptotics beta_asymptotics(const NonSeparatingSplit& s) {
  const long long h = s.h;
  Asymptotics a;
  a.slope = h + 1;
  a.log_log_coeff = 2 * (2 * h + 3);
  a.limit[Term::phi] = q(2 * h, 3);
  a.limit[Term::delta] = q(2 * h + 3, 3);
  a.limit[Term::g_ab] = -2 * (h - 1);
  a.limit[Term::log_2pi] = -(q(8 * h * (h + 3), 3) + 6);
  return a;
}

Asymptotics beta_asymptotics_via_lambda(int total_genus, const Asymptotics& phi,
                                        const Asymptotics& delta) {
  const LambdaCoefficients lam = lambda_coefficients(total_genus);
  const Rational k = 8LL * total_genus + 4;
  Asymptotics a;
  a.slope = k * (lam.phi * phi.slope + lam.delta * delta.slope);
  a.log_log_coeff = k * (lam.phi * phi.log_log_coeff + lam.delta * delta.log_log_coeff);
  for (std::size_t i = 0; i < kTermCount; ++i) {
    a.limit.coeff[i] = k * (lam.phi * phi.limit.coeff[i] + lam.delta * delta.limit.coeff[i]);
  }
  a.limit[Term::log_2pi] += k * lam.log_2pi;
  return a;
}

LimitTriple evaluate(const Asymptotics& a, const SeparatingInputs& in) {
  return {to_double(a.slope), to_double(a.log_log_coeff), a.limit.evaluate(in)};
}

LimitTriple evaluate(const Asymptotics& a, const NonSeparatingInputs& in) {
  return {to_double(a.slope), to_double(a.log_log_coeff), a.limit.evaluate(in)};
}

double phi_genus1() { return 0.0; }

double log_abs_eta_any(const UpperHalfPoint& omega, const AccuracyTarget& acc) {
  return log_petersson_eta(omega, acc).log_norm - 0.25 * std::log(omega.im());
}

double delta_elliptic(const EllipticCurveData& curve, const AccuracyTarget& acc) {
  return -24.0 * log_petersson_eta(curve.omega, acc).log_norm - 8.0 * log_two_pi();
}

double green_torus(const TorusDisplacement& d, const AccuracyTarget& acc) {
  const AccuracyTarget theta_acc = acc.with_eps(std::min(acc.eps_abs(), kGreenThetaEps));
  const double im_u = d.u().imag();
  return -kPi * im_u * im_u / d.omega().im() +
         std::log(std::abs(theta_odd_genus1(d.u(), d.omega(), theta_acc))) -
         log_abs_eta_any(d.omega(), acc);
}

double green_torus_mean(const UpperHalfPoint& omega, int grid, const AccuracyTarget& acc,
                        int threads) {
  const GreenKernel kernel = make_green_kernel(omega, grid, acc);
  std::vector<double> rows(static_cast<std::size_t>(grid), 0.0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(grid));
  const int team = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(static) num_threads(team)
  for (int j = 0; j < grid; ++j) {
    try {
      rows[static_cast<std::size_t>(j)] = kernel.row_sum(j);
    } catch (...) {
      errors[static_cast<std::size_t>(j)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  double total = 0.0;
  for (double r : rows) total += r;
  return total / (static_cast<double>(grid) * grid);
}

double green_torus_mean_serial(const UpperHalfPoint& omega, int grid, const AccuracyTarget& acc) {
  const GreenKernel kernel = make_green_kernel(omega, grid, acc);
  double total = 0.0;
  for (int j = 0; j < grid; ++j) total += kernel.row_sum(j);
  return total / (static_cast<double>(grid) * grid);
}

double arakelov_d_torus(const EllipticCurveData& curve, const AccuracyTarget& acc) {
  return 2.0 * log_abs_eta_any(curve.omega, acc) + log_two_pi();
}

double beta_genus2(const SiegelPoint2& omega, const AccuracyTarget& acc) {
  const double log_norm = log_petersson_chi10(omega, acc).log_norm;
  return -2.0 * log_norm - 40.0 * log_two_pi() + 24.0 * std::log(2.0);
}

double lambda_invariant(int h, double phi, double delta) {
  const LambdaCoefficients c = lambda_coefficients(h);
  return to_double(c.phi) * phi + to_double(c.delta) * delta + to_double(c.log_2pi) * log_two_pi();
}

double beta_from_lambda(int h, double lambda) {
  if (h < 1) throw DomainError("beta_from_lambda: genus must be >= 1");
  return (8.0 * h + 4.0) * lambda;
}

LimitPair thmA_limit(const SeparatingSplit& split, const SeparatingInputs& in) {
  const LimitTriple t = evaluate(phi_asymptotics(split), in);
  return {t.slope, t.limit};
}

LimitPair thmA_limit(const NonSeparatingSplit& split, const NonSeparatingInputs& in) {
  const LimitTriple t = evaluate(phi_asymptotics(split), in);
  return {t.slope, t.limit};
}

LimitTriple wentworth_delta_limit(const SeparatingSplit& split, const SeparatingInputs& in) {
  return evaluate(delta_asymptotics(split), in);
}

LimitTriple wentworth_delta_limit(const NonSeparatingSplit& split, const NonSeparatingInputs& in) {
  return evaluate(delta_asymptotics(split), in);
}

LimitTriple thmB_limit(const SeparatingSplit& split, const SeparatingInputs& in) {
  return evaluate(beta_asymptotics(split), in);
}

LimitTriple thmB_limit(const NonSeparatingSplit& split, const NonSeparatingInputs& in) {
  return evaluate(beta_asymptotics(split), in);
}

RationalIdentity separating_fiber_identity(int h1, int h2) {
  const SeparatingSplit s = SeparatingSplit::of(h1, h2);
  const long long h = s.genus();
  const long long hh = h * h;
  const Rational lhs = -q(2LL * h2 * (2 * h - h2), hh) + (2 - 2LL * h1) -
                       q(2LL * h1 * (2 * h - h1), hh) + (2 - 2LL * h2) + q(4LL * h1 * h2, hh);
  return {lhs, Rational(2 - 2 * h)};
}

RationalIdentity nonseparating_fiber_identity(int h_in) {
  const long long h = NonSeparatingSplit::of(h_in).h;
  const long long s = (h + 1) * (h + 1);
  const Rational lhs = -q(4 * h + 2, s) + (2 - 2 * h) + q(4 * h, s) - q(2 * h * (h + 2), s);
  return {lhs, Rational(2 - 2 * (h + 1))};
}

RationalIdentity nonseparating_log_tau_identity(int h_in) {
  const long long h = NonSeparatingSplit::of(h_in).h;
  const long long s = (h + 1) * (h + 1);
  const Rational nn = -q(4 * h + 2, s) + (2 - 2 * h);
  const Rational lhs = q(1, 12 * s) * nn - 2 * q(h, 12 * s) * q(2 * h, s) -
                       q(h * h, 12 * s) * q(2 * h * (h + 2), s);
  return {lhs, -q(h, 6 * (h + 1))};
}

RationalIdentity nonseparating_green_identity(int h_in) {
  const long long h = NonSeparatingSplit::of(h_in).h;
  const long long s = (h + 1) * (h + 1);
  const Rational nn = -q(4 * h + 2, s) + (2 - 2 * h);
  const Rational lhs = q(5, 6 * s) * nn - 2 * q(5 * h, 6 * s) * q(2 * h, s) -
                       q(5 * h * h, 6 * s) * q(2 * h * (h + 2), s);
  return {lhs, -q(5 * h, 3 * (h + 1))};
}

}  // namespace deginv
