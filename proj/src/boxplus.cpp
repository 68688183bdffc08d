#include "odelp/boxplus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace odelp {

namespace {

bool needs_log_domain(double a, double b, double p) {
  if (p > 64.0) return true;
  // a, b > 0 here.
  const double la = std::log(a);
  const double lb = std::log(b);
  return std::abs(p * la) > 300.0 || std::abs(p * lb) > 300.0;
}

}  // namespace

double boxplus(double a, double b, double p) {
  if (!(a >= 0.0) || !(b >= 0.0)) {
    throw std::domain_error("boxplus: operands must be nonnegative");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::domain_error("boxplus: exponent must be finite and >= 1");
  }
  if (a == 0.0) return b;
  if (b == 0.0) return a;
  if (p == 1.0) return a + b;
  if (std::isinf(a) || std::isinf(b)) {
    return std::numeric_limits<double>::infinity();
  }
  if (!needs_log_domain(a, b, p)) {
    return std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
  }
  const double la = p * std::log(a);
  const double lb = p * std::log(b);
  const double hi = std::max(la, lb);
  const double lo = std::min(la, lb);
  const double logsum = hi + std::log1p(std::exp(lo - hi));
  return std::exp(logsum / p);
}

double boxplus_chain(std::span<const double> xs, std::span<const double> ps) {
  if (xs.empty() || ps.size() != xs.size() - 1) {
    throw std::invalid_argument("boxplus_chain: ps.size() must be xs.size() - 1");
  }
  if (!(xs[0] >= 0.0)) {
    throw std::domain_error("boxplus_chain: operands must be nonnegative");
  }
  double acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    acc = boxplus(acc, xs[i], ps[i - 1]);
  }
  return acc;
}

double dual_exponent(double p) {
  if (!(p >= 1.0)) {
    throw std::domain_error("dual_exponent: exponent must be >= 1");
  }
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

}  // namespace odelp
