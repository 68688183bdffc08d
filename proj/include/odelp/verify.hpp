#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "odelp/step_function.hpp"

namespace odelp {

struct SuiteConfig {
  std::uint64_t seed = 42;
  int trials = 200;
  double tol = 1e-8;
  /// Instance families to draw from. "standard": step functions with at most
  /// 16 pieces, |values| <= 10, exponents in [1,8]. "extreme": magnitudes to
  /// 1e10 and exponents to 1e4, exercising the log-domain arithmetic.
  std::vector<std::string> families = {"standard", "extreme"};
  /// Empty = run every registered property.
  std::vector<std::string> properties;
};

struct PropertyResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst_violation = 0.0;
  std::uint64_t first_failure_seed = 0;  // reproduces the first failing trial
};

struct PropertyReport {
  SuiteConfig config;
  std::vector<PropertyResult> properties;
  bool pass = false;

  std::string to_json(int indent = 2) const;
};

/// Runs every registered property (or the requested subset) with
/// deterministic per-trial seeding; identical configs produce identical
/// reports. Throws std::invalid_argument on unknown family or property names.
PropertyReport run_suite(const SuiteConfig& config);

/// Names of all registered properties, one per library invariant.
std::vector<std::string> property_names();

/// The forced-jump fixture: tabulated blow-up exponent on a 2^16 grid must be
/// flagged not_in_class for initial values <= 1e-3 and converged for 0.6.
PropertyResult run_blowup_case();

/// Norm evaluation hook so tests can aim the triangle property at a
/// deliberately broken implementation and watch it fail.
using NormFn =
    std::function<double(const StepFunction&, const ExponentField&, double tol)>;
PropertyResult check_triangle_with(const NormFn& norm, std::uint64_t seed, int trials,
                                   double tol);

}  // namespace odelp
