// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "odelp/boxplus.hpp"
#include "odelp/constants.hpp"
#include "odelp/duality.hpp"
#include "odelp/norms.hpp"
#include "odelp/ode.hpp"
#include "odelp/problem_spec.hpp"
#include "odelp/verify.hpp"

using namespace odelp;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

std::mt19937_64 rng(20240615);

double uni(double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

StepFunction random_step(double lo, double hi, int pieces) {
  std::vector<double> breaks = {0.0};
  for (int i = 1; i < pieces; ++i) breaks.push_back(uni(0.02, 0.98));
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> vals(breaks.size() - 1);
  for (double& v : vals) v = uni(lo, hi);
  return StepFunction(std::move(breaks), std::move(vals));
}

double classical_norm(const StepFunction& f, double p) {
  long double sum = 0.0L;
  const auto breaks = f.breakpoints();
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    const long double len = breaks[i + 1] - breaks[i];
    sum += len * std::pow(std::abs(static_cast<long double>(f.values()[i])),
                          static_cast<long double>(p));
  }
  return static_cast<double>(std::pow(sum, 1.0L / p));
}

double ode_norm(const StepFunction& f, const ExponentField& p, double tol) {
  NormOptions opts;
  opts.tol = tol;
  return lp_norm(f, p, opts).value;
}

double bisect_a() {
  double lo = 1.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::log(mid) - 1.0 < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void criterion_1() {
  const StepFunction one = StepFunction::constant(1.0);
  const ExponentField p12(StepFunction({0.0, 0.5, 1.0}, {1.0, 2.0}));
  const ExponentField p21(StepFunction({0.0, 0.5, 1.0}, {2.0, 1.0}));
  NormOptions opts;
  opts.tol = 1e-10;

  (void)norm_limit(one, p12, opts);  // warm-up, excluded from timing

  const auto t0 = Clock::now();
  const double v12 = norm_limit(one, p12, opts).value;
  const double ms12 = ms_since(t0);
  const auto t1 = Clock::now();
  const double v21 = norm_limit(one, p21, opts).value;
  const double ms21 = ms_since(t1);

  const bool values_ok = std::abs(v12 - 0.8660254037844386) <= 1e-9 &&
                         std::abs(v21 - 1.2071067811865475) <= 1e-9;
  const bool time_ok = ms12 < 10.0 && ms21 < 10.0;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "%.10f / %.10f, %.2f ms / %.2f ms", v12, v21,
                ms12, ms21);
  report(1, "two-piece exponent values", values_ok && time_ok, detail);
}

void criterion_2() {
  const double ps[] = {1.0, 1.5, 2.0, 3.0, 8.0};
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const StepFunction f = random_step(0.1, 10.0, 16);
    const double p = ps[k % 5];
    const double expected = classical_norm(f, p);
    const double got = ode_norm(f, ExponentField::constant(p), 1e-12);
    worst = std::max(worst, std::abs(got - expected) / expected);
  }
  const double ms = ms_since(t0);
  char detail[96];
  std::snprintf(detail, sizeof(detail), "worst rel %.3g, %.0f ms", worst, ms);
  report(2, "constant-exponent equivalence (500 draws)", worst <= 1e-9 && ms < 1000.0,
         detail);
}

void criterion_3() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const StepFunction f = random_step(-10.0, 10.0, 16);
    const ExponentField p(random_step(1.0, 8.0, 16));
    const double oracle = composite_seminorm(f, CompositePartition::standard(p));
    const double got = ode_norm(f, p, 1e-12);
    worst = std::max(worst, std::abs(got - oracle));
  }
  const double ms = ms_since(t0);
  char detail[96];
  std::snprintf(detail, sizeof(detail), "worst abs %.3g, %.0f ms", worst, ms);
  report(3, "composite-seminorm oracle (500 draws)", worst <= 1e-9 && ms < 2000.0,
         detail);
}

void criterion_4() {
  double worst_slack = 0.0;
  for (int k = 0; k < 500; ++k) {
    const StepFunction f = random_step(-10.0, 10.0, 16);
    const ExponentField p(random_step(1.0, 8.0, 16));
    const double nk = nakano_norm(f, p, 1e-10);
    const double no = ode_norm(f, p, 1e-9);
    worst_slack = std::max(worst_slack, nk - no);
    worst_slack = std::max(worst_slack, no - 2.0 * nk);
  }
  double worst_closed = 0.0;
  for (double p : {1.0, 1.5, 2.0, 3.0, 8.0}) {
    for (int k = 0; k < 40; ++k) {
      const StepFunction f = random_step(0.1, 10.0, 12);
      const double expected = std::pow(p, -1.0 / p) * classical_norm(f, p);
      worst_closed = std::max(
          worst_closed, std::abs(nakano_norm(f, ExponentField::constant(p), 1e-10) -
                                 expected));
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "sandwich slack %.3g, closed-form err %.3g",
                worst_slack, worst_closed);
  report(4, "comparison-norm sandwich (500 draws)",
         worst_slack <= 1e-7 && worst_closed <= 1e-8, detail);
}

void criterion_5() {
  const double a = constant_a();
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const StepFunction f = random_step(-10.0, 10.0, 16);
    const ExponentField p1(random_step(1.0, 8.0, 16));
    const ExponentField p2(random_step(1.0, 8.0, 16));

    worst = std::max(worst, ode_norm(f, p1, 1e-8) -
                                (std::exp(1.0) * f.sup_abs() + 1e-7));

    const double q = uni(p1.ess_inf(), p1.ess_sup());
    const StepFunction f_ge = StepFunction::zip(
        f, p1.base(), [q](double v, double pe) { return pe >= q ? v : 0.0; });
    if (!f_ge.is_zero()) {
      worst = std::max(worst, classical_norm(f_ge, q) / (1.0 + a) -
                                  (ode_norm(f_ge, p1, 1e-8) + 1e-7));
    }
    const StepFunction ind = StepFunction::zip(
        p1.base(), p2.base(), [](double x, double y) { return x <= y ? 1.0 : 0.0; });
    const StepFunction f_le =
        StepFunction::zip(f, ind, [](double v, double i) { return v * i; });
    if (!f_le.is_zero()) {
      worst = std::max(worst, ode_norm(f_le, p1, 1e-8) / (1.0 + a * std::exp(1.0)) -
                                  (ode_norm(f_le, p2, 1e-8) + 1e-7));
    }
  }
  const double newton_err = std::abs(a - 1.763222834);
  const double bisect_err = std::abs(bisect_a() - 1.763222834);
  char detail[96];
  std::snprintf(detail, sizeof(detail), "worst slack %.3g, a errs %.2g/%.2g", worst,
                newton_err, bisect_err);
  report(5, "inequality suite (500 draws)",
         worst <= 0.0 && newton_err <= 1e-9 && bisect_err <= 1e-9, detail);
}

void criterion_6() {
  SuiteConfig config;
  config.seed = 42;
  config.trials = 1000;
  config.tol = 1e-8;
  config.families = {"standard"};
  config.properties = {"triangle-inequality", "homogeneity", "lattice-monotonicity",
                       "upper-lower-estimates"};
  const auto t0 = Clock::now();
  const PropertyReport rep = run_suite(config);
  const double ms = ms_since(t0);
  int failures = 0;
  for (const auto& prop : rep.properties) failures += prop.failures;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "%d failures / 4000 trials, %.0f ms", failures,
                ms);
  report(6, "norm axioms (1000 trials each)", failures == 0 && ms < 30000.0, detail);
}

void criterion_7() {
  double worst_mono = 0.0;
  double worst_contract = 0.0;
  for (int k = 0; k < 200; ++k) {
    const StepFunction f = random_step(0.0, 10.0, 12);
    const ExponentField p(random_step(1.0, 8.0, 12));
    const double x0 = uni(1e-6, 2.0);
    const double y0 = uni(1e-6, 2.0);
    const SolutionProfile hi = integrate_lp(f, p, std::max(x0, y0));
    const SolutionProfile lo = integrate_lp(f, p, std::min(x0, y0));
    for (std::size_t i = 0; i < hi.phis.size(); ++i) {
      worst_mono = std::max(worst_mono, lo.phis[i] - hi.phis[i]);
    }
    worst_contract = std::max(
        worst_contract, std::abs(hi.final_value() - lo.final_value()) -
                            (std::abs(x0 - y0) + 1e-12));
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "monotone slack %.3g, contraction slack %.3g",
                worst_mono, worst_contract);
  report(7, "initial-value facts (200 pairs)", worst_mono <= 0.0 && worst_contract <= 0.0,
         detail);
}

void criterion_8() {
  const StepFunction one = StepFunction::constant(1.0);
  const auto t0 = Clock::now();

  const SolutionProfile excess =
      integrate_upsilon(StructureFunction::excess(), one, 1e-8, 64, 2e-7);
  const double err_excess = std::abs(excess.final_value() - 0.6321205588285577);

  const double x0 = 0.1;
  const SolutionProfile circle =
      integrate_upsilon(StructureFunction::time_weighted_square(), one, x0, 64, 2e-7);
  double err_circle = 0.0;
  for (std::size_t i = 0; i < circle.ts.size(); i += 61) {
    const double t = circle.ts[i];
    err_circle = std::max(
        err_circle, std::abs(circle.phis[i] - std::sqrt(x0 * x0 + t * t)));
  }
  err_circle = std::max(err_circle,
                        std::abs(circle.final_value() - std::sqrt(x0 * x0 + 1.0)));
  const double ms = ms_since(t0);
  char detail[96];
  std::snprintf(detail, sizeof(detail), "errs %.3g / %.3g, %.0f ms", err_excess,
                err_circle, ms);
  report(8, "structure-function instances", err_excess <= 1e-6 && err_circle <= 1e-6 &&
                                                 ms < 1000.0 &&
                                                 excess.status == SolveStatus::converged &&
                                                 circle.status == SolveStatus::converged,
         detail);
}

void criterion_9() {
  const ExponentField p(example_notin_exponent(1 << 16, 1e6).to_step());
  const StepFunction one = builtin_one();
  auto status_at = [&](double x0) {
    NormOptions opts;
    opts.tol = 1e-8;
    opts.x0_override = x0;
    return norm_limit(one, p, opts).status;
  };
  const bool flagged = status_at(1e-3) == SolveStatus::not_in_class &&
                       status_at(1e-4) == SolveStatus::not_in_class;
  const bool fine = status_at(0.6) == SolveStatus::converged;
  report(9, "blow-up exponent classification", flagged && fine);
}

void criterion_10() {
  SuiteConfig config;
  config.seed = 42;
  config.trials = 1000;
  config.tol = 1e-8;
  config.families = {"standard"};
  config.properties = {"holder-inequality"};
  const PropertyReport holder = run_suite(config);
  const int holder_failures = holder.properties[0].failures;

  double worst_gap = 0.0;
  double worst_iota = 0.0;
  for (double pe : {1.5, 2.0, 3.0, 4.0}) {
    for (int k = 0; k < 50; ++k) {
      const StepFunction f = random_step(-2.0, 2.0, 12);
      worst_gap = std::max(
          worst_gap, pairing_equality_check(f, ExponentField::constant(pe), 1e-8).gap);
    }
    const StepFunction g = random_step(0.05, 10.0, 8);
    const StepFunction iota = iota_invariant(g, ExponentField::constant(pe), 256);
    for (double v : iota.values()) {
      if (!std::isnan(v)) worst_iota = std::max(worst_iota, std::abs(v - (pe - 1.0)));
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "holder failures %d, gap %.3g, iota err %.3g",
                holder_failures, worst_gap, worst_iota);
  report(10, "duality pairing and invariant",
         holder_failures == 0 && worst_gap < 8e-8 && worst_iota <= 1e-4, detail);
}

void criterion_11() {
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const StepFunction f = random_step(-8.0, 8.0, 12);
    const StepFunction w = random_step(0.2, 5.0, 12);
    const ExponentField p(random_step(1.0, 6.0, 12));
    const StepFunction g = weight_isometry(f, w, p);
    NormOptions opts;
    opts.tol = 1e-9;
    opts.weight = w;
    const double weighted = lp_norm(g, p, opts).value;
    const double plain = ode_norm(f, p, 1e-9);
    worst = std::max(worst, std::abs(weighted - plain));
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "worst gap %.3g", worst);
  report(11, "weighted isometry (200 draws)", worst <= 1e-8, detail);
}

void criterion_12() {
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const int rows = 1 + static_cast<int>(uni(0, 7.999));
    const int cols = 1 + static_cast<int>(uni(0, 7.999));
    const double p = uni(1.0, 8.0);
    const double r = uni(p, 8.0);
    std::vector<double> x(static_cast<std::size_t>(rows * cols));
    for (double& v : x) v = uni(0.0, 10.0);
    auto at = [&](int i, int j) { return x[static_cast<std::size_t>(i * cols + j)]; };
    double lhs = 0.0;
    for (int j = 0; j < cols; ++j) {
      double col = 0.0;
      for (int i = 0; i < rows; ++i) col = boxplus(col, at(i, j), p);
      lhs = boxplus(lhs, col, r);
    }
    double rhs = 0.0;
    for (int i = 0; i < rows; ++i) {
      double row = 0.0;
      for (int j = 0; j < cols; ++j) row = boxplus(row, at(i, j), r);
      rhs = boxplus(rhs, row, p);
    }
    worst = std::max(worst, lhs - rhs);
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "worst excess %.3g", worst);
  report(12, "transpose inequality (500 matrices)", worst <= 1e-12, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
