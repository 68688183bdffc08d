#pragma once

#include <span>

namespace odelp {

/// Two-term power mean a ⊞_p b = (a^p + b^p)^(1/p), the elementary join of
/// the norm accumulation recursions. Switches to log-domain evaluation
/// (exp((1/p)·logsumexp(p·log a, p·log b))) once p > 64 or either p·|log|
/// exceeds 300, so extreme exponents and magnitudes stay finite.
///
/// Requires a, b >= 0 and p in [1, inf); throws std::domain_error otherwise.
/// boxplus(a, 0, p) == a exactly (convention 0^p = 0).
double boxplus(double a, double b, double p);

/// Left fold (...((x0 ⊞_{p0} x1) ⊞_{p1} x2)...); ps.size() == xs.size() - 1.
double boxplus_chain(std::span<const double> xs, std::span<const double> ps);

/// Conjugate exponent p/(p-1). Returns +infinity for p = 1 and 1 for
/// p = +infinity; involutive on (1, inf). Throws std::domain_error for p < 1.
double dual_exponent(double p);

}  // namespace odelp
