#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "odelp/boxplus.hpp"
#include "odelp/constants.hpp"
#include "odelp/norms.hpp"

using namespace odelp;

namespace {

std::mt19937_64 rng(2024);

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

// Independent quadrature oracle for constant exponents.
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

double ode_norm(const StepFunction& f, const ExponentField& p, double tol = 1e-10) {
  NormOptions opts;
  opts.tol = tol;
  return lp_norm(f, p, opts).value;
}

}  // namespace

TEST_CASE("composite seminorm basics") {
  const StepFunction one = StepFunction::constant(1.0);

  CompositePartition single;
  single.breakpoints = {0.0, 1.0};
  single.inner_exponents = {3.0};
  const StepFunction f = random_step(-5.0, 5.0, 6);
  CHECK(composite_seminorm(f, single) ==
        doctest::Approx(classical_norm(f, 3.0)).epsilon(1e-12));

  CompositePartition two;
  two.breakpoints = {0.0, 0.5, 1.0};
  two.inner_exponents = {1.0, 2.0};
  two.join_exponents = {2.0};
  CHECK(two.standard_form());
  CHECK(composite_seminorm(one, two) ==
        doctest::Approx(0.8660254037844386).epsilon(1e-13));

  // Raising the join exponent above the cell exponent lowers the value.
  CompositePartition loose = two;
  loose.join_exponents = {5.0};
  CHECK_FALSE(loose.standard_form());
  CHECK(composite_seminorm(one, loose) < composite_seminorm(one, two));

  CompositePartition bad = two;
  bad.join_exponents = {1.5};  // below the joined cell's exponent
  CHECK_THROWS_AS(composite_seminorm(one, bad), std::invalid_argument);
}

TEST_CASE("constant-exponent norms match closed-form quadrature") {
  for (double p : {1.0, 1.5, 2.0, 3.0, 8.0}) {
    for (int k = 0; k < 40; ++k) {
      const StepFunction f = random_step(0.1, 10.0, 16);
      const double expected = classical_norm(f, p);
      const double got = ode_norm(f, ExponentField::constant(p), 1e-12);
      CHECK(std::abs(got - expected) <= 1e-9 * std::max(1.0, expected));
    }
  }
}

TEST_CASE("standard-form composite equals the ode norm") {
  for (int k = 0; k < 60; ++k) {
    const StepFunction f = random_step(-10.0, 10.0, 16);
    const ExponentField p(random_step(1.0, 8.0, 16));
    const double oracle = composite_seminorm(f, CompositePartition::standard(p));
    const double got = ode_norm(f, p, 1e-12);
    CHECK(std::abs(got - oracle) <= 1e-9);
  }
}

TEST_CASE("nakano norm") {
  const StepFunction one = StepFunction::constant(1.0);
  CHECK(nakano_norm(one, ExponentField::constant(2.0), 1e-10) ==
        doctest::Approx(0.7071067811865476).epsilon(1e-9));
  CHECK(nakano_norm(StepFunction::constant(0.0), ExponentField::constant(2.0), 1e-10) ==
        0.0);
  CHECK_THROWS_AS(nakano_norm(one, ExponentField::constant(2.0), 0.0),
                  std::domain_error);

  // Constant p: the unit-modular crossing is p^(-1/p)·||f||_p.
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    for (int k = 0; k < 20; ++k) {
      const StepFunction f = random_step(0.1, 10.0, 8);
      const double expected = std::pow(p, -1.0 / p) * classical_norm(f, p);
      CHECK(nakano_norm(f, ExponentField::constant(p), 1e-10) ==
            doctest::Approx(expected).epsilon(1e-8));
    }
  }

  // The comparison norm is rearrangement invariant; both orderings give the
  // same value while the ode norm distinguishes them.
  const ExponentField p12(StepFunction({0.0, 0.5, 1.0}, {1.0, 2.0}));
  const ExponentField p21(StepFunction({0.0, 0.5, 1.0}, {2.0, 1.0}));
  const double n12 = nakano_norm(one, p12, 1e-11);
  const double n21 = nakano_norm(one, p21, 1e-11);
  CHECK(n12 == doctest::Approx(0.8090169943749475).epsilon(1e-9));
  CHECK(n21 == doctest::Approx(n12).epsilon(1e-9));

  // Sandwich against the ode norm.
  for (int k = 0; k < 50; ++k) {
    const StepFunction f = random_step(-10.0, 10.0, 16);
    const ExponentField p(random_step(1.0, 8.0, 16));
    const double nk = nakano_norm(f, p, 1e-9);
    const double no = ode_norm(f, p, 1e-8);
    CHECK(nk <= no + 1e-7);
    CHECK(no <= 2.0 * nk + 1e-7);
  }
}

TEST_CASE("modular evaluation") {
  const StepFunction one = StepFunction::constant(1.0);
  const ExponentField p2 = ExponentField::constant(2.0);
  CHECK(modular(one, p2, 1.0) == doctest::Approx(0.5).epsilon(1e-14));

  // f identically lambda: the ratio is 1 and the modular is the mean of 1/p.
  const ExponentField p(random_step(1.0, 8.0, 8));
  const double lambda = 3.2;
  const StepFunction f = StepFunction::constant(lambda);
  double expected = 0.0;
  for (std::size_t i = 0; i < p.base().values().size(); ++i) {
    expected += (p.base().breakpoints()[i + 1] - p.base().breakpoints()[i]) /
                p.base().values()[i];
  }
  CHECK(modular(f, p, lambda) == doctest::Approx(expected).epsilon(1e-13));

  CHECK_THROWS_AS(modular(one, p2, 0.0), std::domain_error);

  // Membership: finite modular at lambda = 1 goes with a converged norm for
  // bounded exponents.
  for (int k = 0; k < 20; ++k) {
    const StepFunction g = random_step(-5.0, 5.0, 8);
    const ExponentField q(random_step(1.0, 8.0, 8));
    CHECK(std::isfinite(modular(g, q, 1.0)));
    NormOptions opts;
    opts.tol = 1e-8;
    CHECK(lp_norm(g, q, opts).status == SolveStatus::converged);
  }
}

TEST_CASE("sequence norm") {
  const std::vector<double> two = {1.0, 1.0};
  const std::vector<double> p2 = {2.0};
  CHECK(sequence_norm(two, p2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  const std::vector<double> three = {1.0, 1.0, 1.0};
  const std::vector<double> p12 = {1.0, 2.0};
  CHECK(sequence_norm(three, p12) ==
        doctest::Approx(2.2360679774997897).epsilon(1e-14));

  const std::vector<double> zeros = {0.0, 0.0, 0.0};
  CHECK(sequence_norm(zeros, p12) == 0.0);

  const std::vector<double> signs = {-3.0, 4.0};
  CHECK(sequence_norm(signs, p2) == doctest::Approx(5.0).epsilon(1e-14));

  CHECK_THROWS_AS(sequence_norm(three, p2), std::invalid_argument);

  // Partial chains are nondecreasing.
  std::vector<double> xs(6), ps(5);
  for (double& v : xs) v = uni(0.0, 10.0);
  for (double& v : ps) v = uni(1.0, 8.0);
  double prev = 0.0;
  for (std::size_t n = 1; n <= xs.size(); ++n) {
    const double cur = sequence_norm(std::span(xs).first(n), std::span(ps).first(n - 1));
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
}

TEST_CASE("weight isometry") {
  const StepFunction one = StepFunction::constant(1.0);
  const ExponentField p2 = ExponentField::constant(2.0);

  const StepFunction unchanged = weight_isometry(one, StepFunction::constant(1.0), p2);
  CHECK(unchanged(0.3) == 1.0);

  const StepFunction w2 = StepFunction::constant(2.0);
  const StepFunction scaled = weight_isometry(one, w2, p2);
  CHECK(scaled(0.5) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));

  NormOptions weighted;
  weighted.tol = 1e-9;
  weighted.weight = w2;
  CHECK(lp_norm(scaled, p2, weighted).value == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(weight_isometry(one, StepFunction::constant(0.0), p2),
                  std::domain_error);

  for (int k = 0; k < 30; ++k) {
    const StepFunction f = random_step(-8.0, 8.0, 8);
    const StepFunction w = random_step(0.2, 5.0, 8);
    const ExponentField p(random_step(1.0, 6.0, 8));
    const StepFunction g = weight_isometry(f, w, p);
    NormOptions opts;
    opts.tol = 1e-9;
    opts.weight = w;
    const double weighted_norm = lp_norm(g, p, opts).value;
    const double plain_norm = ode_norm(f, p, 1e-9);
    CHECK(std::abs(weighted_norm - plain_norm) <= 1e-8);
  }
}

TEST_CASE("norm axioms on random instances") {
  const double tol = 1e-8;
  for (int k = 0; k < 40; ++k) {
    const StepFunction f = random_step(-10.0, 10.0, 12);
    const StepFunction g = random_step(-10.0, 10.0, 12);
    const ExponentField p(random_step(1.0, 8.0, 12));

    const double nf = ode_norm(f, p, tol);
    const double ng = ode_norm(g, p, tol);
    const StepFunction sum =
        StepFunction::zip(f, g, [](double a, double b) { return a + b; });
    CHECK(ode_norm(sum, p, tol) <= nf + ng + 4.0 * tol);

    // Lattice monotonicity: |f| <= |f| + |g|.
    const StepFunction dom = StepFunction::zip(
        f.abs(), g.abs(), [](double a, double b) { return a + b; });
    CHECK(nf <= ode_norm(dom, p, tol) + 2.0 * tol);

    // Sup bound.
    CHECK(nf <= std::exp(1.0) * f.sup_abs() + 1e-7);
  }
}

TEST_CASE("homogeneity at tight tolerance") {
  for (int k = 0; k < 25; ++k) {
    const StepFunction f = random_step(0.05, 10.0, 12);
    const ExponentField p(random_step(1.0, 8.0, 12));
    const double lam = uni(0.1, 10.0);
    const double scaled = ode_norm(f.scaled(lam), p, 1e-14);
    const double base = lam * ode_norm(f, p, 1e-14);
    CHECK(std::abs(scaled - base) <= 1e-10 * std::max(base, 1e-12));
  }
}

TEST_CASE("restricted lower bounds") {
  const double a = constant_a();
  for (int k = 0; k < 30; ++k) {
    const StepFunction f = random_step(-10.0, 10.0, 12);
    const ExponentField p(random_step(1.0, 8.0, 12));
    const double q = uni(p.ess_inf(), p.ess_sup());
    const StepFunction f_ge = StepFunction::zip(
        f, p.base(), [q](double v, double pe) { return pe >= q ? v : 0.0; });
    if (!f_ge.is_zero()) {
      CHECK(classical_norm(f_ge, q) / (1.0 + a) <= ode_norm(f_ge, p, 1e-8) + 1e-7);
    }

    const ExponentField p2(random_step(1.0, 8.0, 12));
    const StepFunction ind = StepFunction::zip(
        p.base(), p2.base(), [](double x, double y) { return x <= y ? 1.0 : 0.0; });
    const StepFunction f_le =
        StepFunction::zip(f, ind, [](double v, double i) { return v * i; });
    if (!f_le.is_zero()) {
      const double n1 = ode_norm(f_le, p, 1e-8);
      const double n2 = ode_norm(f_le, p2, 1e-8);
      CHECK(n1 / (1.0 + a * std::exp(1.0)) <= n2 + 1e-7);
    }
  }
}

TEST_CASE("upper and lower estimates on disjoint blocks") {
  const double tol = 1e-8;
  for (int k = 0; k < 25; ++k) {
    const StepFunction f = random_step(-10.0, 10.0, 12);
    const ExponentField p(random_step(1.0, 8.0, 12));
    const double cut = uni(0.2, 0.8);
    auto restrict_to = [&](double lo, double hi) {
      std::vector<double> bk = {0.0, 1.0};
      if (lo > 0.0) bk.insert(bk.end() - 1, lo);
      if (hi < 1.0) bk.insert(bk.end() - 1, hi);
      std::vector<double> iv(bk.size() - 1, 0.0);
      for (std::size_t i = 0; i + 1 < bk.size(); ++i) {
        if (bk[i] >= lo && bk[i + 1] <= hi) iv[i] = 1.0;
      }
      const StepFunction block(bk, iv);
      return StepFunction::zip(f, block, [](double v, double b) { return v * b; });
    };
    const double n1 = ode_norm(restrict_to(0.0, cut), p, tol);
    const double n2 = ode_norm(restrict_to(cut, 1.0), p, tol);
    const double whole = ode_norm(f, p, tol);
    const double upper = boxplus(n1, n2, p.ess_inf());
    const double lower = boxplus(n1, n2, p.ess_sup());
    CHECK(lower <= whole + 4.0 * tol);
    CHECK(whole <= upper + 4.0 * tol);
  }
}

TEST_CASE("report invariants") {
  NormOptions opts;
  opts.tol = 1e-9;
  const StepFunction f = random_step(0.1, 5.0, 8);
  const ExponentField p(random_step(1.0, 8.0, 8));
  const NormReport rep = lp_norm(f, p, opts);
  CHECK(rep.value >= 0.0);
  CHECK(rep.error_bound >= 0.0);
  CHECK(rep.status == SolveStatus::converged);
  CHECK(rep.error_bound <= opts.tol);
  CHECK(rep.diagnostics.count("x0") == 1);
  CHECK(rep.diagnostics.count("grid_size") == 1);
  CHECK(rep.diagnostics.count("max_step_increment") == 1);

  const GridFunction g(8, {1, 2, 3, 4, 4, 3, 2, 1});
  const NormReport grid_rep = lp_norm(g, ExponentField::constant(2.0), opts);
  const NormReport step_rep = lp_norm(g.to_step(), ExponentField::constant(2.0), opts);
  CHECK(grid_rep.value == step_rep.value);
}
