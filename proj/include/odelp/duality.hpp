#pragma once

#include "odelp/ode.hpp"
#include "odelp/step_function.hpp"

namespace odelp {

/// Pointwise duality map sign(f)·|f|^{p/p*} = sign(f)·|f|^{p-1}. Identity for
/// p = 2. Throws std::domain_error where p = 1 and f != 0 (the conjugate
/// exponent is infinite there).
StepFunction duality_map(const StepFunction& f, const ExponentField& p);

struct HolderReport {
  double pairing = 0.0;  // ∫ |f g| dt, exact cell sums
  double bound = 0.0;    // ||f||_{p} · ||g||_{p*}
  bool holds = false;    // pairing <= bound + 4·tol
};

/// Checks the pairing against the product of the two norms. Requires p > 1 on
/// every cell where g is nonzero.
HolderReport holder_pair(const StepFunction& f, const StepFunction& g,
                         const ExponentField& p, double tol);

struct PairingEquality {
  double lhs = 0.0;  // ∫ f·J(f) dt
  double rhs = 0.0;  // ||f|| · ||J(f)||_{p*}
  double gap = 0.0;
};

/// Extremal-pairing equality <J(f), f> = ||f||·||J(f)||*. Certified only when
/// p is a single constant > 1 across the support of f; refuses (throws
/// std::invalid_argument) otherwise, since equality presumes a regularity of
/// the exponent that has no computable test. Contract: gap <= 8·tol in the
/// constant-exponent regime.
PairingEquality pairing_equality_check(const StepFunction& f, const ExponentField& p,
                                       double tol);

/// Per-cell estimate of iota = d log phi_{J f} / d log phi_f from centered
/// difference quotients on a common grid of about `grid` steps, with the
/// coupled initial values phi_{J f}(0) = phi_f(0)^{p/p*}. Equals p - 1 in the
/// constant-exponent regime. Cells where f vanishes are excluded and carry
/// NaN.
StepFunction iota_invariant(const StepFunction& f, const ExponentField& p, int grid);

}  // namespace odelp
