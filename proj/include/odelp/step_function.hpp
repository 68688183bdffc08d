#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace odelp {

/// Exact piecewise-constant function on [0,1]. Piece i takes values()[i] on
/// [breakpoints()[i], breakpoints()[i+1]); the last piece is closed at t = 1.
///
/// Breakpoints must be finite, strictly increasing, and span exactly [0,1].
/// Values may be any double (conjugate exponent fields carry +inf cells).
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction constant(double value);

  /// Evaluate at t in [0,1]; throws std::domain_error outside.
  double operator()(double t) const;

  std::span<const double> breakpoints() const { return breaks_; }
  std::span<const double> values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }

  bool is_zero() const;
  double sup_abs() const;

  StepFunction abs() const;
  StepFunction scaled(double factor) const;
  StepFunction reflected() const;  // t -> value at 1 - t
  StepFunction refined(int parts_per_piece) const;

  /// Rewrites onto a breakpoint set that contains every breakpoint of *this*;
  /// evaluation is unchanged.
  StepFunction on_breakpoints(std::span<const double> breakpoints) const;

  /// Pointwise combination computed exactly on the merged breakpoint grid.
  static StepFunction zip(const StepFunction& f, const StepFunction& g,
                          const std::function<double(double, double)>& op);

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

/// Rewrites f and g over the sorted union of their breakpoints. Both outputs
/// evaluate identically to their inputs.
std::pair<StepFunction, StepFunction> refine_common(const StepFunction& f,
                                                    const StepFunction& g);

/// Measurable exponent p: [0,1] -> [1, inf). All cell values must be >= 1
/// (+inf is tolerated so conjugate fields are representable; integrators
/// reject infinite cells where they would matter).
class ExponentField {
 public:
  explicit ExponentField(StepFunction base);
  static ExponentField constant(double p);

  double operator()(double t) const { return base_(t); }
  const StepFunction& base() const { return base_; }

  double ess_inf() const;
  double ess_sup() const;

  /// Pointwise conjugate, +inf on cells where p = 1.
  ExponentField conjugate() const;

 private:
  StepFunction base_;
};

/// Uniform-grid samples; sample i represents the value on [i/n, (i+1)/n).
/// Conversion to StepFunction is exact.
class GridFunction {
 public:
  GridFunction(int n, std::vector<double> samples);

  int size() const { return n_; }
  std::span<const double> samples() const { return samples_; }
  StepFunction to_step() const;

 private:
  int n_;
  std::vector<double> samples_;
};

}  // namespace odelp
