#pragma once

// Degenerating genus-2 period-matrix families, regularized beta along them,
// the closed-form limits, and sweep extrapolation.

#include <vector>

#include "deginv/invariants.hpp"
#include "deginv/theta.hpp"

namespace deginv {

/// Two elliptic curves C/(Z + Z omega_i) joined at their origins.
struct SeparatingFamily {
  UpperHalfPoint omega1;
  UpperHalfPoint omega2;
};

/// Elliptic curve C/(Z + Z omega) with points a, b = a + u identified.
/// The (2,2) entry of the period matrix is x_offset + i y.
class NonSeparatingFamily {
public:
  /// Throws DomainError if u lies on the period lattice.
  NonSeparatingFamily(const UpperHalfPoint& omega, Complex u, double x_offset = 0.0);

  const UpperHalfPoint& omega() const { return omega_; }
  Complex u() const { return u_; }
  double x_offset() const { return x_offset_; }
  TorusDisplacement displacement() const { return {u_, omega_}; }

private:
  UpperHalfPoint omega_;
  Complex u_;
  double x_offset_;
};

enum class DegenerationMode { separating, nonseparating };

/// Sweep parameters: t in (0, 0.05] strictly decreasing (separating) or
/// y = im omega_22 in [2, 40] strictly increasing (non-separating).
class SweepGrid {
public:
  /// Both throw DomainError on empty, out-of-range or non-monotone points.
  static SweepGrid separating(std::vector<double> t_values);
  static SweepGrid nonseparating(std::vector<double> y_values);
  /// n points log-spaced from start to end, both included.
  static std::vector<double> log_spaced(double start, double end, int n);

  DegenerationMode mode() const { return mode_; }
  const std::vector<double>& points() const { return points_; }

private:
  SweepGrid(DegenerationMode mode, std::vector<double> points)
      : mode_(mode), points_(std::move(points)) {}

  DegenerationMode mode_;
  std::vector<double> points_;
};

struct SweepSample {
  double param = 0.0;
  double value = 0.0;
};

struct SweepReport {
  DegenerationMode mode = DegenerationMode::separating;
  std::vector<SweepSample> samples;
  double extrapolated_limit = 0.0;
  double closed_form_rhs = 0.0;
  double discrepancy = 0.0;
  /// Separating: fitted power of t. Non-separating: RMS residual of the
  /// exponential fit.
  double estimated_order = 0.0;
};

/// [[omega1 + 2 pi i t, 2 pi i t], [2 pi i t, omega2 + 2 pi i t]].
/// Throws DomainError unless 0 < |t| <= 0.05 and the result is positive definite.
SiegelPoint2 sep_period_matrix(const SeparatingFamily& fam, Complex t);

/// [[omega, u], [u, x_offset + i y]]. Throws DomainError if y < 2 or the
/// imaginary part is not positive definite.
SiegelPoint2 nonsep_period_matrix(const NonSeparatingFamily& fam, double y);

/// beta(Omega_t) + 4 log|t| for real t in (0, 0.05].
double regularized_beta_separating(const SeparatingFamily& fam, double t,
                                   const AccuracyTarget& acc = {});

/// -48 log||eta||(omega1) - 48 log||eta||(omega2) + 2 log(im omega1 im omega2) - 48 log(2 pi).
double rhs_separating(const SeparatingFamily& fam, const AccuracyTarget& acc = {});

/// beta(Omega) + 2 log|q| + 10 log(-log|q|) with log|q| = -2 pi y.
double regularized_beta_nonseparating_q(const NonSeparatingFamily& fam, double y,
                                        const AccuracyTarget& acc = {});

/// -36 log|eta(omega)| - 4 log|theta(u, omega)| - 10 log im omega - 30 log(2 pi).
double rhs_nonseparating_q(const NonSeparatingFamily& fam, const AccuracyTarget& acc = {});

/// -40 log||eta||(omega) - 30 log(2 pi).
double rhs_nonseparating_tau(const NonSeparatingFamily& fam, const AccuracyTarget& acc = {});

/// log|q| = log|tau| - 2 log|theta(u, omega)| + 2 log|eta(omega)|.
double log_q_from_log_tau(double log_tau, const NonSeparatingFamily& fam,
                          const AccuracyTarget& acc = {});

/// log|q| = log|tau| - 2 g(a, b) - 2 pi (im u)^2 / im omega, through the
/// torus Green's function (sign matched to the periodic g above).
double log_q_from_log_tau_via_green(double log_tau, const NonSeparatingFamily& fam,
                                    const AccuracyTarget& acc = {});

/// Leading terms of chi_10 along each family:
/// t^2 (2 pi)^4 2^12 eta(omega1)^24 eta(omega2)^24 and -q 2^12 eta(omega)^18 theta(u, omega)^2.
Complex chi10_leading_term(const SeparatingFamily& fam, Complex t, const AccuracyTarget& acc = {});
Complex chi10_leading_term(const NonSeparatingFamily& fam, double y,
                           const AccuracyTarget& acc = {});

/// chi_10(Omega) divided by its leading term. chi_10 is evaluated to a
/// tolerance relative to the leading term.
Complex chi10_leading_ratio(const SeparatingFamily& fam, Complex t, const AccuracyTarget& acc = {});
Complex chi10_leading_ratio(const NonSeparatingFamily& fam, double y,
                            const AccuracyTarget& acc = {});

/// Evaluates the regularized beta at each grid point, fits
/// value = L + C t (separating) or L + C exp(-2 pi y) (non-separating) on
/// the last four points and compares L with the closed form.
/// Grid points run in parallel with OpenMP; threads <= 0 uses the default.
/// Throws FitError with fewer than two points or a singular fit, and
/// DomainError if the grid mode does not match the family.
SweepReport run_sweep(const SweepGrid& grid, const SeparatingFamily& fam,
                      const AccuracyTarget& acc = {}, int threads = 0);
SweepReport run_sweep(const SweepGrid& grid, const NonSeparatingFamily& fam,
                      const AccuracyTarget& acc = {}, int threads = 0);

/// Single-threaded reference for run_sweep; results are bit-identical.
SweepReport run_sweep_serial(const SweepGrid& grid, const SeparatingFamily& fam,
                             const AccuracyTarget& acc = {});
SweepReport run_sweep_serial(const SweepGrid& grid, const NonSeparatingFamily& fam,
                             const AccuracyTarget& acc = {});

struct LinearFit {
  double limit = 0.0;
  double coefficient = 0.0;
  double rms_residual = 0.0;
};

/// Least-squares fit of value = limit + coefficient * basis. Throws FitError
/// with fewer than two points or a degenerate basis.
LinearFit fit_limit(const std::vector<double>& basis, const std::vector<double>& values);

/// Slope of log|value - limit| against log(param); NaN with fewer than two
/// usable points.
double fit_log_log_order(const std::vector<SweepSample>& samples, double limit);

}  // namespace deginv
