#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "odelp/step_function.hpp"

namespace odelp {

enum class SolveStatus { converged, not_in_class, max_refinement };

std::string to_string(SolveStatus status);

/// Accumulated-norm path phi over a grid of [0,1]. phis is nondecreasing and
/// phis[0] equals the initial value used.
struct SolutionProfile {
  std::vector<double> ts;
  std::vector<double> phis;
  double x0 = 0.0;
  SolveStatus status = SolveStatus::converged;
  double error_bound = 0.0;

  double final_value() const { return phis.back(); }
  double max_step_increment() const;
  bool finite() const;
};

/// Exact solution of phi' = |f|^p/p · phi^(1-p) across a span dt on which f
/// and p are frozen: phi -> (phi^p + dt·|f|^p)^(1/p).
double segment_update(double phi, double absf, double p, double dt);

/// Right-hand side Upsilon(s, x, t) generating a lattice norm: nonincreasing
/// in the accumulated value s, nondecreasing in x, positively homogeneous in
/// (s, x), and bounded away from 0 as s -> 0+ for x > 0. Those three
/// conditions are validated on random probes before integration; the
/// remaining analytic hypotheses (subadditivity of solutions, completeness)
/// are the caller's obligation.
class StructureFunction {
 public:
  using Eval = std::function<double(double s, double x, double t)>;
  /// Exact update of phi across [t, t+dt) where x is frozen.
  using SegmentHook = std::function<double(double phi, double x, double t, double dt)>;

  StructureFunction(std::string name, Eval eval,
                    std::optional<SegmentHook> hook = std::nullopt);

  const std::string& name() const { return name_; }
  double operator()(double s, double x, double t) const { return eval_(s, x, t); }
  bool has_exact_update() const { return hook_.has_value(); }
  double exact_update(double phi, double x, double t, double dt) const;

  /// Probe-based validation of the structural conditions; throws
  /// std::invalid_argument with the violated condition on failure.
  void validate(unsigned seed = 1u, int probes = 64) const;

  /// phi' = |f|^p/p · phi^(1-p); the exact segment hook is attached unless
  /// with_exact_hook is false (useful for cross-checking the generic path).
  static StructureFunction power_law(ExponentField p, bool with_exact_hook = true);
  /// phi' = t·x^2/s.
  static StructureFunction time_weighted_square();
  /// phi' = max over p in [p_lo, p_hi] of x^p/p · s^(1-p).
  static StructureFunction exponent_band(double p_lo, double p_hi);
  /// phi' = max(x - s, 0).
  static StructureFunction excess();

 private:
  std::string name_;
  Eval eval_;
  std::optional<SegmentHook> hook_;
};

/// Integrates phi' = w·|f|^p/p · phi^(1-p), phi(0) = x0 > 0, with exact
/// per-segment updates on the merged breakpoint grid of f, p and the weight.
/// refine > 1 splits every segment into that many equal parts; for step
/// inputs this changes nothing except the grid resolution of the profile.
SolutionProfile integrate_lp(const StepFunction& f, const ExponentField& p,
                             double x0,
                             const std::optional<StepFunction>& weight = std::nullopt,
                             int refine = 1);

struct NormOptions {
  double tol = 1e-8;
  std::optional<StepFunction> weight;
  bool backward = false;          // integrate against f(1-t), p(1-t)
  std::optional<double> x0_override;  // fixed initial value, bypasses the 0+ limit
};

/// Norm value with its certificate and classification.
struct NormReport {
  double value = 0.0;
  double error_bound = 0.0;
  SolveStatus status = SolveStatus::converged;
  std::map<std::string, double> diagnostics;
};

/// The 0+-initial-value limit of integrate_lp. Runs x0 = tol/2 and tol/4;
/// the contraction bound |phi_x0(1) - phi_y0(1)| <= |x0 - y0| certifies the
/// reported value to tol/4. A profile sequence at decreasing x0 and doubling
/// grids feeds the non-existence diagnostic; a persistent jump reports
/// not_in_class instead of an unflagged diverging value.
NormReport norm_limit(const StepFunction& f, const ExponentField& p,
                      const NormOptions& opts = {});

/// Classifies a profile sequence (decreasing x0 and/or doubling grids,
/// at least 3 entries). Reports not_in_class when the largest single-step
/// increment taken from an already-accumulated state stays above
/// 0.05·phi(1) and fails to shrink under refinement; that persistent jump is
/// the operational signature of a missing absolutely continuous solution.
SolveStatus nonexistence_diagnostic(std::span<const SolutionProfile> profiles);

/// Implicit-Euler integration of phi' = Upsilon(phi, |f(t)|, t), phi(0) = x0,
/// on a uniform n-point grid, doubling the grid until two successive final
/// values differ by less than tol (max_refinement status after max_doublings).
/// Each step solves phi_next = phi + h·Upsilon(phi_next, x, t), which is
/// unique and bracketed because Upsilon is nonincreasing in s. Uses the exact
/// segment hook when the structure function provides one.
SolutionProfile integrate_upsilon(const StructureFunction& u, const StepFunction& f,
                                  double x0, int n, double tol = 1e-8,
                                  int max_doublings = 24);

}  // namespace odelp
