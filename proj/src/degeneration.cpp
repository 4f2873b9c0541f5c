#include "deginv/degeneration.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>

#include <omp.h>

#include "deginv/errors.hpp"
#include "deginv/modular.hpp"

namespace deginv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kThetaEps = 5e-17;
constexpr std::size_t kFitWindow = 4;

Complex ipow(Complex base, int n) {
  Complex out{1.0, 0.0};
  for (int k = 0; k < n; ++k) out *= base;
  return out;
}

// chi_10 is tiny near the boundary; its tolerance is scaled by the size of
// the leading term so log|chi_10| keeps eps_abs accuracy.
AccuracyTarget relative_target(const AccuracyTarget& acc, Complex leading) {
  const double scale = std::min(1.0, std::abs(leading));
  const double eps = std::max(acc.eps_abs() * scale, std::numeric_limits<double>::min());
  return acc.with_eps(eps);
}

double log_abs_theta(const NonSeparatingFamily& fam, const AccuracyTarget& acc) {
  const AccuracyTarget theta_acc = acc.with_eps(std::min(acc.eps_abs(), kThetaEps));
  return std::log(std::abs(theta_odd_genus1(fam.u(), fam.omega(), theta_acc)));
}

void require_mode(const SweepGrid& grid, DegenerationMode mode) {
  if (grid.mode() != mode) throw DomainError("sweep grid mode does not match the family");
}

SweepReport assemble(DegenerationMode mode, const std::vector<double>& params,
                     const std::vector<double>& values, double rhs) {
  SweepReport report;
  report.mode = mode;
  for (std::size_t k = 0; k < params.size(); ++k) report.samples.push_back({params[k], values[k]});

  const std::size_t n = params.size();
  if (n < 2) throw FitError("sweep needs at least two grid points to fit a limit");
  const std::size_t first = n > kFitWindow ? n - kFitWindow : 0;
  std::vector<double> basis;
  std::vector<double> window;
  for (std::size_t k = first; k < n; ++k) {
    basis.push_back(mode == DegenerationMode::separating ? params[k]
                                                         : std::exp(-2.0 * kPi * params[k]));
    window.push_back(values[k]);
  }
  const LinearFit fit = fit_limit(basis, window);

  report.extrapolated_limit = fit.limit;
  report.closed_form_rhs = rhs;
  report.discrepancy = std::abs(fit.limit - rhs);
  report.estimated_order = mode == DegenerationMode::separating
                               ? fit_log_log_order(report.samples, fit.limit)
                               : fit.rms_residual;
  return report;
}

template <class Family, class Eval>
std::vector<double> evaluate_parallel(const std::vector<double>& params, const Family& fam,
                                      const AccuracyTarget& acc, int threads, Eval eval) {
  const int n = static_cast<int>(params.size());
  std::vector<double> values(params.size(), 0.0);
  std::vector<std::exception_ptr> errors(params.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (int k = 0; k < n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      values[idx] = eval(fam, params[idx], acc);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return values;
}

template <class Family, class Eval>
std::vector<double> evaluate_serial(const std::vector<double>& params, const Family& fam,
                                    const AccuracyTarget& acc, Eval eval) {
  std::vector<double> values;
  values.reserve(params.size());
  for (double p : params) values.push_back(eval(fam, p, acc));
  return values;
}

}  // namespace

NonSeparatingFamily::NonSeparatingFamily(const UpperHalfPoint& omega, Complex u, double x_offset)
    : omega_(omega), u_(u), x_offset_(x_offset) {
  (void)TorusDisplacement(u, omega);
  if (!std::isfinite(x_offset)) throw DomainError("x_offset must be finite");
}

SweepGrid SweepGrid::separating(std::vector<double> t_values) {
  if (t_values.empty()) throw DomainError("sweep grid is empty");
  for (std::size_t k = 0; k < t_values.size(); ++k) {
    const double t = t_values[k];
    if (!(t > 0.0) || !(t <= 0.05)) throw DomainError("separating grid points must lie in (0, 0.05]");
    if (k > 0 && !(t < t_values[k - 1])) {
      throw DomainError("separating grid must decrease strictly toward t = 0");
    }
  }
  return {DegenerationMode::separating, std::move(t_values)};
}

SweepGrid SweepGrid::nonseparating(std::vector<double> y_values) {
  if (y_values.empty()) throw DomainError("sweep grid is empty");
  for (std::size_t k = 0; k < y_values.size(); ++k) {
    const double y = y_values[k];
    if (!(y >= 2.0) || !(y <= 40.0)) throw DomainError("non-separating grid points must lie in [2, 40]");
    if (k > 0 && !(y > y_values[k - 1])) {
      throw DomainError("non-separating grid must increase strictly toward y = infinity");
    }
  }
  return {DegenerationMode::nonseparating, std::move(y_values)};
}

std::vector<double> SweepGrid::log_spaced(double start, double end, int n) {
  if (n < 1) throw DomainError("grid needs at least one point");
  if (!(start > 0.0) || !(end > 0.0)) throw DomainError("log-spaced grid endpoints must be positive");
  if (n == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log(start);
  const double b = std::log(end);
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * k / (n - 1));
  out.front() = start;
  out.back() = end;
  return out;
}

SiegelPoint2 sep_period_matrix(const SeparatingFamily& fam, Complex t) {
  const double abs_t = std::abs(t);
  if (!(abs_t > 0.0) || !(abs_t <= 0.05)) {
    throw DomainError("separating parameter must satisfy 0 < |t| <= 0.05");
  }
  const Complex s = 2.0 * kPi * kI * t;
  return {fam.omega1.value() + s, s, fam.omega2.value() + s};
}

SiegelPoint2 nonsep_period_matrix(const NonSeparatingFamily& fam, double y) {
  if (!(y >= 2.0)) throw DomainError("non-separating parameter must satisfy y >= 2");
  return {fam.omega().value(), fam.u(), Complex(fam.x_offset(), y)};
}

double regularized_beta_separating(const SeparatingFamily& fam, double t, const AccuracyTarget& acc) {
  if (!(t > 0.0)) throw DomainError("separating sweep parameter must be real and positive");
  const SiegelPoint2 omega = sep_period_matrix(fam, t);
  const AccuracyTarget chi_acc = relative_target(acc, chi10_leading_term(fam, t, acc));
  return beta_genus2(omega, chi_acc) + 4.0 * std::log(t);
}

double rhs_separating(const SeparatingFamily& fam, const AccuracyTarget& acc) {
  return -48.0 * log_petersson_eta(fam.omega1, acc).log_norm -
         48.0 * log_petersson_eta(fam.omega2, acc).log_norm +
         2.0 * std::log(fam.omega1.im() * fam.omega2.im()) - 48.0 * log_two_pi();
}

double regularized_beta_nonseparating_q(const NonSeparatingFamily& fam, double y,
                                        const AccuracyTarget& acc) {
  const SiegelPoint2 omega = nonsep_period_matrix(fam, y);
  const AccuracyTarget chi_acc = relative_target(acc, chi10_leading_term(fam, y, acc));
  const double log_q = -2.0 * kPi * y;
  return beta_genus2(omega, chi_acc) + 2.0 * log_q + 10.0 * std::log(-log_q);
}

double rhs_nonseparating_q(const NonSeparatingFamily& fam, const AccuracyTarget& acc) {
  return -36.0 * log_abs_eta_any(fam.omega(), acc) - 4.0 * log_abs_theta(fam, acc) -
         10.0 * std::log(fam.omega().im()) - 30.0 * log_two_pi();
}

double rhs_nonseparating_tau(const NonSeparatingFamily& fam, const AccuracyTarget& acc) {
  return -40.0 * log_petersson_eta(fam.omega(), acc).log_norm - 30.0 * log_two_pi();
}

double log_q_from_log_tau(double log_tau, const NonSeparatingFamily& fam,
                          const AccuracyTarget& acc) {
  return log_tau - 2.0 * log_abs_theta(fam, acc) + 2.0 * log_abs_eta_any(fam.omega(), acc);
}

double log_q_from_log_tau_via_green(double log_tau, const NonSeparatingFamily& fam,
                                    const AccuracyTarget& acc) {
  const double im_u = fam.u().imag();
  return log_tau - 2.0 * green_torus(fam.displacement(), acc) -
         2.0 * kPi * im_u * im_u / fam.omega().im();
}

Complex chi10_leading_term(const SeparatingFamily& fam, Complex t, const AccuracyTarget& acc) {
  const double two_pi = 2.0 * kPi;
  const Complex e1 = eta(fam.omega1, acc);
  const Complex e2 = eta(fam.omega2, acc);
  return t * t * std::pow(two_pi, 4) * 4096.0 * ipow(e1, 24) * ipow(e2, 24);
}

Complex chi10_leading_term(const NonSeparatingFamily& fam, double y, const AccuracyTarget& acc) {
  const Complex q = std::exp(2.0 * kPi * kI * Complex(fam.x_offset(), y));
  const AccuracyTarget theta_acc = acc.with_eps(std::min(acc.eps_abs(), kThetaEps));
  const Complex th = theta_odd_genus1(fam.u(), fam.omega(), theta_acc);
  return -q * 4096.0 * ipow(eta(fam.omega(), acc), 18) * th * th;
}

Complex chi10_leading_ratio(const SeparatingFamily& fam, Complex t, const AccuracyTarget& acc) {
  const Complex lead = chi10_leading_term(fam, t, acc);
  if (std::abs(lead) == 0.0) throw DomainError("chi10 leading term vanishes");
  return chi10(sep_period_matrix(fam, t), relative_target(acc, lead)) / lead;
}

Complex chi10_leading_ratio(const NonSeparatingFamily& fam, double y, const AccuracyTarget& acc) {
  const Complex lead = chi10_leading_term(fam, y, acc);
  if (std::abs(lead) == 0.0) throw DomainError("chi10 leading term vanishes");
  return chi10(nonsep_period_matrix(fam, y), relative_target(acc, lead)) / lead;
}

LinearFit fit_limit(const std::vector<double>& basis, const std::vector<double>& values) {
  const std::size_t n = basis.size();
  if (n != values.size()) throw FitError("fit: basis and values differ in length");
  if (n < 2) throw FitError("fit: at least two points are required");
  double mean_b = 0.0;
  double mean_v = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mean_b += basis[k];
    mean_v += values[k];
  }
  mean_b /= static_cast<double>(n);
  mean_v /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double db = basis[k] - mean_b;
    sxx += db * db;
    sxy += db * (values[k] - mean_v);
    scale = std::max(scale, std::abs(basis[k]));
  }
  if (!(sxx > 0.0) || sxx <= 1e-24 * scale * scale) {
    throw FitError("fit: basis values are degenerate");
  }
  LinearFit fit;
  fit.coefficient = sxy / sxx;
  fit.limit = mean_v - fit.coefficient * mean_b;
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = values[k] - fit.limit - fit.coefficient * basis[k];
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

double fit_log_log_order(const std::vector<SweepSample>& samples, double limit) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : samples) {
    const double d = std::abs(s.value - limit);
    if (d > 0.0 && s.param > 0.0) {
      xs.push_back(std::log(s.param));
      ys.push_back(std::log(d));
    }
  }
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  try {
    return fit_limit(xs, ys).coefficient;
  } catch (const FitError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

SweepReport run_sweep(const SweepGrid& grid, const SeparatingFamily& fam,
                      const AccuracyTarget& acc, int threads) {
  require_mode(grid, DegenerationMode::separating);
  const auto values = evaluate_parallel(grid.points(), fam, acc, threads,
                                        [](const SeparatingFamily& f, double t,
                                           const AccuracyTarget& a) {
                                          return regularized_beta_separating(f, t, a);
                                        });
  return assemble(grid.mode(), grid.points(), values, rhs_separating(fam, acc));
}

SweepReport run_sweep(const SweepGrid& grid, const NonSeparatingFamily& fam,
                      const AccuracyTarget& acc, int threads) {
  require_mode(grid, DegenerationMode::nonseparating);
  const auto values = evaluate_parallel(grid.points(), fam, acc, threads,
                                        [](const NonSeparatingFamily& f, double y,
                                           const AccuracyTarget& a) {
                                          return regularized_beta_nonseparating_q(f, y, a);
                                        });
  return assemble(grid.mode(), grid.points(), values, rhs_nonseparating_q(fam, acc));
}

SweepReport run_sweep_serial(const SweepGrid& grid, const SeparatingFamily& fam,
                             const AccuracyTarget& acc) {
  require_mode(grid, DegenerationMode::separating);
  const auto values = evaluate_serial(grid.points(), fam, acc,
                                      [](const SeparatingFamily& f, double t,
                                         const AccuracyTarget& a) {
                                        return regularized_beta_separating(f, t, a);
                                      });
  return assemble(grid.mode(), grid.points(), values, rhs_separating(fam, acc));
}

SweepReport run_sweep_serial(const SweepGrid& grid, const NonSeparatingFamily& fam,
                             const AccuracyTarget& acc) {
  require_mode(grid, DegenerationMode::nonseparating);
  const auto values = evaluate_serial(grid.points(), fam, acc,
                                      [](const NonSeparatingFamily& f, double y,
                                         const AccuracyTarget& a) {
                                        return regularized_beta_nonseparating_q(f, y, a);
                                      });
  return assemble(grid.mode(), grid.points(), values, rhs_nonseparating_q(fam, acc));
}

}  // namespace deginv
