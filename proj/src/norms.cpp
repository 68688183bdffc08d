#include "odelp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "odelp/boxplus.hpp"

namespace odelp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (∫_[a,b] |f|^p dt)^(1/p) for step data, accumulated as a boxplus chain of
// len^(1/p)·|value| contributions so extreme magnitudes stay in range.
double cell_lp_norm(std::span<const double> breaks, std::span<const double> absvals,
                    std::size_t first, std::size_t last, double p) {
  double acc = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const double len = breaks[i + 1] - breaks[i];
    const double v = absvals[i];
    if (v == 0.0) continue;
    acc = boxplus(acc, std::exp(std::log(len) / p) * v, p);
  }
  return acc;
}

}  // namespace

void CompositePartition::validate() const {
  if (breakpoints.size() < 2 || breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    throw std::invalid_argument("CompositePartition: breakpoints must span [0,1]");
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) {
      throw std::invalid_argument("CompositePartition: breakpoints must be strictly increasing");
    }
  }
  if (inner_exponents.size() != breakpoints.size() - 1) {
    throw std::invalid_argument("CompositePartition: one inner exponent per cell");
  }
  if (join_exponents.size() + 1 != inner_exponents.size()) {
    throw std::invalid_argument("CompositePartition: one join exponent between cells");
  }
  for (double p : inner_exponents) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw std::invalid_argument("CompositePartition: inner exponents must be finite and >= 1");
    }
  }
  for (std::size_t i = 0; i < join_exponents.size(); ++i) {
    const double r = join_exponents[i];
    if (!(r >= 1.0) || !std::isfinite(r)) {
      throw std::invalid_argument("CompositePartition: join exponents must be finite and >= 1");
    }
    if (r + 1e-12 < inner_exponents[i + 1]) {
      throw std::invalid_argument(
          "CompositePartition: join exponent must dominate the joined cell's exponent");
    }
  }
}

bool CompositePartition::standard_form() const {
  for (std::size_t i = 0; i < join_exponents.size(); ++i) {
    if (join_exponents[i] != inner_exponents[i + 1]) return false;
  }
  return true;
}

CompositePartition CompositePartition::standard(const ExponentField& p) {
  CompositePartition part;
  part.breakpoints.assign(p.base().breakpoints().begin(), p.base().breakpoints().end());
  part.inner_exponents.assign(p.base().values().begin(), p.base().values().end());
  part.join_exponents.assign(part.inner_exponents.begin() + 1, part.inner_exponents.end());
  part.validate();
  return part;
}

double composite_seminorm(const StepFunction& f, const CompositePartition& part) {
  part.validate();

  const StepFunction cells(std::vector<double>(part.breakpoints),
                           std::vector<double>(part.inner_exponents));
  auto [fa, pa] = refine_common(f.abs(), cells);
  const auto breaks = fa.breakpoints();
  const auto vals = fa.values();

  double acc = 0.0;
  std::size_t seg = 0;
  for (std::size_t c = 0; c + 1 < part.breakpoints.size(); ++c) {
    const double cell_end = part.breakpoints[c + 1];
    std::size_t seg_end = seg;
    while (seg_end < vals.size() && breaks[seg_end + 1] <= cell_end) ++seg_end;
    const double cell = cell_lp_norm(breaks, vals, seg, seg_end, part.inner_exponents[c]);
    acc = (c == 0) ? cell : boxplus(acc, cell, part.join_exponents[c - 1]);
    seg = seg_end;
  }
  return acc;
}

NormReport lp_norm(const StepFunction& f, const ExponentField& p, const NormOptions& opts) {
  return norm_limit(f, p, opts);
}

NormReport lp_norm(const GridFunction& f, const ExponentField& p, const NormOptions& opts) {
  return norm_limit(f.to_step(), p, opts);
}

double modular(const StepFunction& f, const ExponentField& p, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("modular: lambda must be positive and finite");
  }
  auto [fa, pa] = refine_common(f.abs(), p.base());
  const auto breaks = fa.breakpoints();
  const double log_lambda = std::log(lambda);
  double sum = 0.0;
  for (std::size_t i = 0; i < fa.values().size(); ++i) {
    const double v = fa.values()[i];
    if (v == 0.0) continue;
    const double pe = pa.values()[i];
    const double len = breaks[i + 1] - breaks[i];
    if (!std::isfinite(pe)) {
      // ratio^inf: 0 below lambda, blows up above
      if (v > lambda) return kInf;
      continue;
    }
    const double log_term = std::log(len) - std::log(pe) + pe * (std::log(v) - log_lambda);
    const double term = std::exp(log_term);
    if (!std::isfinite(term)) return kInf;
    sum += term;
  }
  return sum;
}

double nakano_norm(const StepFunction& f, const ExponentField& p, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("nakano_norm: tol must be positive");
  if (f.is_zero()) return 0.0;

  double hi = f.sup_abs();  // modular(f, p, sup|f|) <= sum len_i/p_i <= 1
  double lo = hi / (2.0 * std::exp(1.0));
  int guard = 0;
  while (modular(f, p, lo) < 1.0 && guard++ < 4096) {
    hi = lo;
    lo *= 0.5;
  }
  if (guard >= 4096 || !std::isfinite(modular(f, p, hi))) {
    throw std::runtime_error("nakano_norm: modular has no finite unit crossing");
  }
  guard = 0;
  while (hi - lo > tol && guard++ < 20000) {
    const double mid = 0.5 * (lo + hi);
    if (modular(f, p, mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double sequence_norm(std::span<const double> xs, std::span<const double> ps) {
  if (xs.empty()) return 0.0;
  if (ps.size() + 1 < xs.size()) {
    throw std::invalid_argument("sequence_norm: need at least xs.size() - 1 exponents");
  }
  double acc = std::abs(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    acc = boxplus(acc, std::abs(xs[i]), ps[i - 1]);
  }
  return acc;
}

StepFunction weight_isometry(const StepFunction& f, const StepFunction& w,
                             const ExponentField& p) {
  for (double v : w.values()) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::domain_error("weight_isometry: weight must be positive");
    }
  }
  auto [fa, wa] = refine_common(f, w);
  auto [fb, pb] = refine_common(fa, p.base());
  const StepFunction wb = wa.on_breakpoints(fb.breakpoints());
  std::vector<double> vals(fb.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double pe = pb.values()[i];
    const double scale = std::exp(-std::log(wb.values()[i]) / pe);
    vals[i] = scale * fb.values()[i];
  }
  std::vector<double> breaks(fb.breakpoints().begin(), fb.breakpoints().end());
  return StepFunction(std::move(breaks), std::move(vals));
}

}  // namespace odelp
