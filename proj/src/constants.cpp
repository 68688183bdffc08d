#include "odelp/constants.hpp"

#include <cmath>

namespace odelp {

namespace {

double solve_a() {
  // Newton on g(a) = a·ln a - 1; g'(a) = ln a + 1. Quadratic convergence
  // from anywhere in (1, 2).
  double a = 1.75;
  for (int i = 0; i < 32; ++i) {
    const double g = a * std::log(a) - 1.0;
    const double dg = std::log(a) + 1.0;
    const double next = a - g / dg;
    if (next == a) break;
    a = next;
  }
  return a;
}

}  // namespace

double constant_a() {
  static const double a = solve_a();
  return a;
}

}  // namespace odelp
