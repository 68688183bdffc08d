#include "odelp/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "odelp/boxplus.hpp"

namespace odelp {

namespace {

void check_breakpoints(const std::vector<double>& breaks, std::size_t n_values) {
  if (breaks.size() < 2) {
    throw std::invalid_argument("StepFunction: need at least two breakpoints");
  }
  if (breaks.front() != 0.0 || breaks.back() != 1.0) {
    throw std::invalid_argument("StepFunction: breakpoints must span [0,1]");
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!std::isfinite(breaks[i]) || !(breaks[i] < breaks[i + 1])) {
      throw std::invalid_argument("StepFunction: breakpoints must be strictly increasing");
    }
  }
  if (n_values + 1 != breaks.size()) {
    throw std::invalid_argument("StepFunction: values.size() must be breakpoints.size() - 1");
  }
}

}  // namespace

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
  check_breakpoints(breaks_, values_.size());
}

StepFunction StepFunction::constant(double value) {
  return StepFunction({0.0, 1.0}, {value});
}

double StepFunction::operator()(double t) const {
  if (!(t >= 0.0) || !(t <= 1.0)) {
    throw std::domain_error("StepFunction: evaluation outside [0,1]");
  }
  if (t == 1.0) return values_.back();
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const auto idx = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return values_[idx];
}

bool StepFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double StepFunction::sup_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

StepFunction StepFunction::abs() const {
  std::vector<double> vals(values_.size());
  std::transform(values_.begin(), values_.end(), vals.begin(),
                 [](double v) { return std::abs(v); });
  return StepFunction(breaks_, std::move(vals));
}

StepFunction StepFunction::scaled(double factor) const {
  std::vector<double> vals(values_.size());
  std::transform(values_.begin(), values_.end(), vals.begin(),
                 [factor](double v) { return factor * v; });
  return StepFunction(breaks_, std::move(vals));
}

StepFunction StepFunction::reflected() const {
  std::vector<double> breaks(breaks_.size());
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    breaks[i] = 1.0 - breaks_[breaks_.size() - 1 - i];
  }
  breaks.front() = 0.0;
  breaks.back() = 1.0;
  std::vector<double> vals(values_.rbegin(), values_.rend());
  return StepFunction(std::move(breaks), std::move(vals));
}

StepFunction StepFunction::refined(int parts_per_piece) const {
  if (parts_per_piece < 1) {
    throw std::invalid_argument("StepFunction: refinement factor must be >= 1");
  }
  if (parts_per_piece == 1) return *this;
  std::vector<double> breaks;
  std::vector<double> vals;
  breaks.reserve(values_.size() * parts_per_piece + 1);
  vals.reserve(values_.size() * parts_per_piece);
  breaks.push_back(0.0);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double a = breaks_[i], b = breaks_[i + 1];
    for (int j = 1; j <= parts_per_piece; ++j) {
      double t = a + (b - a) * static_cast<double>(j) / parts_per_piece;
      if (j == parts_per_piece) t = b;
      if (t > breaks.back()) {
        breaks.push_back(t);
        vals.push_back(values_[i]);
      }
    }
  }
  return StepFunction(std::move(breaks), std::move(vals));
}

StepFunction StepFunction::zip(const StepFunction& f, const StepFunction& g,
                               const std::function<double(double, double)>& op) {
  auto [fr, gr] = refine_common(f, g);
  std::vector<double> vals(fr.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = op(fr.values()[i], gr.values()[i]);
  }
  std::vector<double> breaks(fr.breakpoints().begin(), fr.breakpoints().end());
  return StepFunction(std::move(breaks), std::move(vals));
}

StepFunction StepFunction::on_breakpoints(std::span<const double> breakpoints) const {
  std::vector<double> vals(breakpoints.size() - 1);
  std::size_t j = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    while (j + 2 < breaks_.size() && breaks_[j + 1] <= breakpoints[i]) ++j;
    vals[i] = values_[j];
  }
  return StepFunction(std::vector<double>(breakpoints.begin(), breakpoints.end()),
                      std::move(vals));
}

std::pair<StepFunction, StepFunction> refine_common(const StepFunction& f,
                                                    const StepFunction& g) {
  const auto fb = f.breakpoints();
  const auto gb = g.breakpoints();
  std::vector<double> merged;
  merged.reserve(fb.size() + gb.size());
  std::set_union(fb.begin(), fb.end(), gb.begin(), gb.end(), std::back_inserter(merged));
  return {f.on_breakpoints(merged), g.on_breakpoints(merged)};
}

ExponentField::ExponentField(StepFunction base) : base_(std::move(base)) {
  for (double v : base_.values()) {
    if (std::isnan(v) || !(v >= 1.0)) {
      throw std::invalid_argument("ExponentField: every value must be >= 1");
    }
  }
}

ExponentField ExponentField::constant(double p) {
  return ExponentField(StepFunction::constant(p));
}

double ExponentField::ess_inf() const {
  return *std::min_element(base_.values().begin(), base_.values().end());
}

double ExponentField::ess_sup() const {
  return *std::max_element(base_.values().begin(), base_.values().end());
}

ExponentField ExponentField::conjugate() const {
  std::vector<double> vals(base_.values().size());
  std::transform(base_.values().begin(), base_.values().end(), vals.begin(),
                 [](double p) { return dual_exponent(p); });
  std::vector<double> breaks(base_.breakpoints().begin(), base_.breakpoints().end());
  return ExponentField(StepFunction(std::move(breaks), std::move(vals)));
}

GridFunction::GridFunction(int n, std::vector<double> samples)
    : n_(n), samples_(std::move(samples)) {
  if (n_ < 1 || samples_.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("GridFunction: need n >= 1 samples");
  }
}

StepFunction GridFunction::to_step() const {
  std::vector<double> breaks(static_cast<std::size_t>(n_) + 1);
  for (int i = 0; i <= n_; ++i) {
    breaks[static_cast<std::size_t>(i)] = static_cast<double>(i) / n_;
  }
  breaks.back() = 1.0;
  return StepFunction(std::move(breaks), samples_);
}

}  // namespace odelp
