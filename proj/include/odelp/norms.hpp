#pragma once

#include <span>
#include <vector>

#include "odelp/ode.hpp"
#include "odelp/step_function.hpp"

namespace odelp {

/// Nested direct-sum seminorm (...(L^{p1} ⊕_{r2} L^{p2}) ⊕_{r3} ...) over an
/// interval partition of [0,1]. join_exponents[i] joins cell i+1 into the
/// running value and must be >= inner_exponents[i+1].
struct CompositePartition {
  std::vector<double> breakpoints;       // 0 = b[0] < ... < b[m] = 1
  std::vector<double> inner_exponents;   // size m, each >= 1
  std::vector<double> join_exponents;    // size m-1

  void validate() const;  // throws std::invalid_argument
  bool standard_form() const;

  /// Standard-form partition aligned with the cells of p.
  static CompositePartition standard(const ExponentField& p);
};

/// ODE-driven norm of a step function (the 0+ initial-value limit).
NormReport lp_norm(const StepFunction& f, const ExponentField& p,
                   const NormOptions& opts = {});
NormReport lp_norm(const GridFunction& f, const ExponentField& p,
                   const NormOptions& opts = {});

/// Left-to-right boxplus chain of per-cell classical L^p norms. In standard
/// form with cells aligned to the exponent field this equals the ODE norm on
/// step data, which makes it the integrator's independent oracle.
double composite_seminorm(const StepFunction& f, const CompositePartition& part);

/// Luxemburg-type norm inf{lambda > 0 : modular(f, p, lambda) <= 1}, found by
/// bisection; the modular is strictly decreasing in lambda for f != 0.
double nakano_norm(const StepFunction& f, const ExponentField& p, double tol);

/// Exact cell-by-cell evaluation of sum_i (len_i/p_i)·(|f_i|/lambda)^{p_i},
/// +infinity on overflow.
double modular(const StepFunction& f, const ExponentField& p, double lambda);

/// Left-nested boxplus chain of |x_i|; requires ps.size() >= xs.size() - 1.
double sequence_norm(std::span<const double> xs, std::span<const double> ps);

/// t -> w(t)^(-1/p(t))·f(t) on the merged grid; its w-weighted norm equals
/// the unweighted norm of f. Throws std::domain_error on nonpositive weights.
StepFunction weight_isometry(const StepFunction& f, const StepFunction& w,
                             const ExponentField& p);

}  // namespace odelp
