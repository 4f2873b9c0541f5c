#pragma once

// chi_10, Petersson norms of eta and chi_10, and Gauss reduction of genus-1
// moduli to the standard fundamental domain.

#include "deginv/theta.hpp"

namespace deginv {

/// Natural log of a Petersson norm. The vanishing flag marks the zero locus
/// of the underlying form, where log_norm carries no meaning.
struct PeterssonValue {
  double log_norm = 0.0;
  bool vanishing = false;
};

/// chi_10(Omega) = prod over the ten even characteristics of theta[alpha](0, Omega)^2.
///
/// A first pass bounds B = max(|theta[alpha](0, Omega)|, 1). The second pass
/// computes every factor to eps_abs / (20 B^19), which bounds the error of
/// the product of ten squares by eps_abs.
Complex chi10(const SiegelPoint2& omega, const AccuracyTarget& acc = {});

/// 1/4 log im(omega) + log|eta(omega)|, evaluated after fundamental-domain
/// reduction. Accepts any point of the upper half plane.
PeterssonValue log_petersson_eta(const UpperHalfPoint& omega, const AccuracyTarget& acc = {});

/// 5 log det im(Omega) + log|chi_10(Omega)|.
/// Throws VanishingError when |chi_10(Omega)| < eps_abs.
PeterssonValue log_petersson_chi10(const SiegelPoint2& omega, const AccuracyTarget& acc = {});

/// Returns omega' in SL2(Z).omega with |re omega'| <= 1/2 and |omega'| >= 1.
/// Throws NonTerminationError after 10000 steps.
UpperHalfPoint reduce_fundamental_domain(const UpperHalfPoint& omega);

/// True if omega lies in the closed standard fundamental region, up to tol.
bool in_fundamental_domain(const UpperHalfPoint& omega, double tol = 1e-12);

}  // namespace deginv
