#include "odelp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "odelp/boxplus.hpp"
#include "odelp/constants.hpp"
#include "odelp/duality.hpp"
#include "odelp/norms.hpp"
#include "odelp/ode.hpp"
#include "odelp/problem_spec.hpp"

namespace odelp {

namespace {

using Rng = std::mt19937_64;

double canonical(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * canonical(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(canonical(rng) * (hi - lo + 1)) % (hi - lo + 1);
}

// splitmix64 finalizer; decorrelates per-trial seeds from the suite seed.
std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Family {
  double max_value;
  double min_exponent;
  double max_exponent;
};

Family family_of(const std::string& name) {
  if (name == "standard") return {10.0, 1.0, 8.0};
  if (name == "extreme") return {1e10, 1.0, 1e4};
  throw std::invalid_argument("run_suite: unknown family name: " + name);
}

std::vector<double> random_breakpoints(Rng& rng, int max_pieces) {
  const int pieces = uniform_int(rng, 1, max_pieces);
  std::set<double> interior;
  while (static_cast<int>(interior.size()) < pieces - 1) {
    interior.insert(uniform(rng, 0.01, 0.99));
  }
  std::vector<double> breaks;
  breaks.reserve(interior.size() + 2);
  breaks.push_back(0.0);
  breaks.insert(breaks.end(), interior.begin(), interior.end());
  breaks.push_back(1.0);
  return breaks;
}

StepFunction random_step(Rng& rng, double lo, double hi, int max_pieces = 16) {
  std::vector<double> breaks = random_breakpoints(rng, max_pieces);
  std::vector<double> vals(breaks.size() - 1);
  for (double& v : vals) v = uniform(rng, lo, hi);
  return StepFunction(std::move(breaks), std::move(vals));
}

ExponentField random_exponent(Rng& rng, const Family& fam, int max_pieces = 16) {
  return ExponentField(random_step(rng, fam.min_exponent, fam.max_exponent, max_pieces));
}

double default_norm(const StepFunction& f, const ExponentField& p, double tol) {
  NormOptions opts;
  opts.tol = tol;
  return lp_norm(f, p, opts).value;
}

// A trial body returns the violation magnitude; <= 0 means pass.
using TrialBody = std::function<double(Rng&, const Family&, double tol)>;

struct PropertyDef {
  std::string name;
  std::vector<std::string> families;  // empty = single fixed run
  TrialBody body;
};

double excess(double measured, double allowed) { return measured - allowed; }

// ---------------------------------------------------------------- core ----

double prop_boxplus_associativity(Rng& rng, const Family& fam, double) {
  const double a = uniform(rng, 0.0, fam.max_value);
  const double b = uniform(rng, 0.0, fam.max_value);
  const double c = uniform(rng, 0.0, fam.max_value);
  const double p = uniform(rng, fam.min_exponent, fam.max_exponent);
  const double left = boxplus(boxplus(a, b, p), c, p);
  const double right = boxplus(a, boxplus(b, c, p), p);
  const double rel = std::abs(left - right) / std::max(right, 1e-300);
  return excess(rel, 1e-12);
}

double prop_boxplus_monotonicity(Rng& rng, const Family& fam, double) {
  const double a = uniform(rng, 0.0, fam.max_value);
  const double b = uniform(rng, 0.0, fam.max_value);
  const double p = uniform(rng, fam.min_exponent, fam.max_exponent);
  if (boxplus(a, 0.0, p) != a) return 1.0;  // zero join must be exact
  const double bump = uniform(rng, 0.0, fam.max_value);
  const double lo = boxplus(a, b, p);
  const double hi = boxplus(a + bump, b, p);
  if (hi < std::max(a + bump, b)) return std::max(a + bump, b) - hi;
  return excess(lo - hi, 1e-12 * std::max(1.0, lo));
}

double prop_transpose_inequality(Rng& rng, const Family& fam, double) {
  const int rows = uniform_int(rng, 1, 8);
  const int cols = uniform_int(rng, 1, 8);
  const double p = uniform(rng, fam.min_exponent, fam.max_exponent);
  const double r = uniform(rng, p, fam.max_exponent);
  std::vector<double> x(static_cast<std::size_t>(rows * cols));
  for (double& v : x) v = uniform(rng, 0.0, 10.0);
  auto entry = [&](int i, int j) { return x[static_cast<std::size_t>(i * cols + j)]; };

  double lhs = 0.0;  // ⊞^r over columns of ⊞^p over rows
  for (int j = 0; j < cols; ++j) {
    double col = 0.0;
    for (int i = 0; i < rows; ++i) col = boxplus(col, entry(i, j), p);
    lhs = boxplus(lhs, col, r);
  }
  double rhs = 0.0;  // ⊞^p over rows of ⊞^r over columns
  for (int i = 0; i < rows; ++i) {
    double row = 0.0;
    for (int j = 0; j < cols; ++j) row = boxplus(row, entry(i, j), r);
    rhs = boxplus(rhs, row, p);
  }
  return excess(lhs - rhs, 1e-12);
}

double prop_mixed_inequality(Rng& rng, const Family& fam, double) {
  const double a = uniform(rng, 0.0, fam.max_value);
  const double b = uniform(rng, 0.0, fam.max_value);
  const double c = uniform(rng, 0.0, fam.max_value);
  const double p = uniform(rng, fam.min_exponent, fam.max_exponent);
  const double r = uniform(rng, p, fam.max_exponent);
  const double lhs = boxplus(a, boxplus(b, c, p), r);
  const double rhs = boxplus(boxplus(a, b, r), c, p);
  return excess(lhs - rhs, std::max(1e-12, 1e-12 * rhs));
}

double prop_refine_common_pointwise(Rng& rng, const Family&, double) {
  const StepFunction f = random_step(rng, -10.0, 10.0);
  const StepFunction g = random_step(rng, -10.0, 10.0);
  auto [fr, gr] = refine_common(f, g);
  int mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    const double t = uniform(rng, 0.0, 1.0);
    if (fr(t) != f(t) || gr(t) != g(t)) ++mismatches;
  }
  return static_cast<double>(mismatches);
}

// ----------------------------------------------------------------- ode ----

double prop_profile_monotone_in_x0(Rng& rng, const Family& fam, double) {
  const StepFunction f = random_step(rng, 0.0, fam.max_value);
  const ExponentField p = random_exponent(rng, fam);
  const double y0 = uniform(rng, 1e-6, 1.0);
  const double x0 = y0 + uniform(rng, 0.0, 1.0);
  const SolutionProfile big = integrate_lp(f, p, x0);
  const SolutionProfile small = integrate_lp(f, p, y0);
  double worst = 0.0;
  for (std::size_t i = 0; i < big.phis.size(); ++i) {
    worst = std::max(worst, small.phis[i] - big.phis[i]);
  }
  return excess(worst, 1e-12);
}

double prop_profile_contraction(Rng& rng, const Family& fam, double) {
  const StepFunction f = random_step(rng, 0.0, fam.max_value);
  const ExponentField p = random_exponent(rng, fam);
  const double x0 = uniform(rng, 1e-6, 2.0);
  const double y0 = uniform(rng, 1e-6, 2.0);
  const double a = integrate_lp(f, p, x0).final_value();
  const double b = integrate_lp(f, p, y0).final_value();
  return excess(std::abs(a - b), std::abs(x0 - y0) + 1e-12);
}

double prop_profile_merging(Rng& rng, const Family& fam, double) {
  // Two different prefixes meeting at t0 with the same accumulated value,
  // then the same tail: once equal, the profiles must stay equal.
  const StepFunction f0 = random_step(rng, 0.1, fam.max_value, 8);
  const ExponentField p0 = random_exponent(rng, fam, 8);
  const double x0 = uniform(rng, 0.2, 1.0);
  const double t0 = 0.5;

  const StepFunction marker({0.0, t0, 1.0}, {0.0, 0.0});
  const std::vector<double> grid = [&] {
    auto [a, b] = refine_common(f0, marker);
    auto [c, d] = refine_common(a, p0.base());
    (void)b;
    (void)d;
    return std::vector<double>(c.breakpoints().begin(), c.breakpoints().end());
  }();
  const StepFunction f = f0.on_breakpoints(grid);
  const ExponentField p(p0.base().on_breakpoints(grid));

  const SolutionProfile ref = integrate_lp(f, p, x0);
  double at_t0 = x0;
  for (std::size_t i = 0; i < ref.ts.size(); ++i) {
    if (ref.ts[i] <= t0) at_t0 = ref.phis[i];
  }

  const double y0 = uniform(rng, 0.05, 0.9) * std::min(at_t0, x0);
  const double pe = p(0.0);
  // Constant prefix picked so the y0 run reaches the same value at t0.
  const double c = std::exp(
      (std::log(std::pow(at_t0, pe) - std::pow(y0, pe)) - std::log(t0)) / pe);

  std::vector<double> vals(f.values().begin(), f.values().end());
  std::vector<double> pvals(p.base().values().begin(), p.base().values().end());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (grid[i + 1] <= t0) {
      vals[i] = c;
      pvals[i] = pe;
    }
  }
  const StepFunction g(grid, std::move(vals));
  const ExponentField pg(StepFunction(grid, std::move(pvals)));
  const SolutionProfile other = integrate_lp(g, pg, y0);
  if (other.ts.size() != ref.ts.size()) return 1.0;

  double start_gap = 0.0;
  double tail_gap = 0.0;
  for (std::size_t i = 0; i < ref.ts.size(); ++i) {
    if (ref.ts[i] == t0) start_gap = std::abs(ref.phis[i] - other.phis[i]);
    if (ref.ts[i] > t0) {
      tail_gap = std::max(tail_gap, std::abs(ref.phis[i] - other.phis[i]));
    }
  }
  return excess(tail_gap, start_gap + 1e-10 * (1.0 + ref.final_value()));
}

double prop_profile_nondecreasing(Rng& rng, const Family& fam, double) {
  const StepFunction f = random_step(rng, 0.0, fam.max_value);
  const ExponentField p = random_exponent(rng, fam);
  const double x0 = uniform(rng, 1e-8, 1.0);
  const SolutionProfile prof = integrate_lp(f, p, x0);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < prof.phis.size(); ++i) {
    worst = std::max(worst, prof.phis[i] - prof.phis[i + 1]);
  }
  const SolutionProfile flat = integrate_lp(StepFunction::constant(0.0), p, x0);
  for (double v : flat.phis) {
    if (v != x0) return 1.0;
  }
  return excess(worst, 0.0);
}

double prop_grid_refinement_consistency(Rng& rng, const Family& fam, double) {
  const StepFunction f = random_step(rng, 0.0, fam.max_value);
  const ExponentField p = random_exponent(rng, fam);
  const double x0 = uniform(rng, 1e-8, 1.0);
  const double coarse = integrate_lp(f, p, x0, std::nullopt, 1).final_value();
  const double fine = integrate_lp(f, p, x0, std::nullopt, 2).final_value();
  return excess(std::abs(coarse - fine), 1e-12 * std::max(1.0, coarse));
}

double prop_comparison_monotone_in_f(Rng& rng, const Family& fam, double) {
  // f <= g pointwise and the same recursion imply phi_f <= phi_g throughout.
  const int n = 64;
  std::vector<double> fv(n), gv(n);
  for (int i = 0; i < n; ++i) {
    fv[static_cast<std::size_t>(i)] = uniform(rng, 0.0, fam.max_value);
    gv[static_cast<std::size_t>(i)] =
        fv[static_cast<std::size_t>(i)] + uniform(rng, 0.0, 2.0);
  }
  const StepFunction f = GridFunction(n, fv).to_step();
  const StepFunction g = GridFunction(n, gv).to_step();
  const double x0 = uniform(rng, 0.01, 1.0);
  const StructureFunction u = StructureFunction::excess();
  const SolutionProfile pf = integrate_upsilon(u, f, x0, n, 1e-5);
  const SolutionProfile pg = integrate_upsilon(u, g, x0, n, 1e-5);
  double worst = 0.0;
  for (int j = 0; j <= 64; ++j) {
    const double t = static_cast<double>(j) / 64.0;
    auto value_at = [t](const SolutionProfile& pr) {
      const auto it = std::lower_bound(pr.ts.begin(), pr.ts.end(), t);
      return pr.phis[static_cast<std::size_t>(it - pr.ts.begin())];
    };
    worst = std::max(worst, value_at(pf) - value_at(pg));
  }
  return excess(worst, 1e-4);
}

// --------------------------------------------------------------- norms ----

double triangle_body(const NormFn& norm, Rng& rng, const Family& fam, double tol) {
  const StepFunction f = random_step(rng, -fam.max_value, fam.max_value);
  const StepFunction g = random_step(rng, -fam.max_value, fam.max_value);
  const ExponentField p = random_exponent(rng, fam);
  const StepFunction sum =
      StepFunction::zip(f, g, [](double a, double b) { return a + b; });
  const double lhs = norm(sum, p, tol);
  const double rhs = norm(f, p, tol) + norm(g, p, tol);
  return excess(lhs, rhs + 4.0 * tol);
}

double prop_triangle(Rng& rng, const Family& fam, double tol) {
  return triangle_body(default_norm, rng, fam, tol);
}

double prop_homogeneity(Rng& rng, const Family& fam, double) {
  // Checked at a tighter internal tolerance than the suite default; the
  // initial-value offset enters additively and must stay far below the
  // relative assertion.
  const double tol = 1e-14;
  const StepFunction f = random_step(rng, 0.05, fam.max_value);
  const ExponentField p = random_exponent(rng, fam);
  const double lam = uniform(rng, 0.1, 10.0);
  const double scaled = default_norm(f.scaled(lam), p, tol);
  const double base = lam * default_norm(f, p, tol);
  const double rel = std::abs(scaled - base) / std::max(base, 1e-12);
  return excess(rel, 1e-10);
}

double prop_lattice_monotonicity(Rng& rng, const Family& fam, double tol) {
  const StepFunction f = random_step(rng, -fam.max_value, fam.max_value);
  const StepFunction extra = random_step(rng, 0.0, 2.0);
  const StepFunction g = StepFunction::zip(
      f.abs(), extra, [](double a, double b) { return a + b; });
  const ExponentField p = random_exponent(rng, fam);
  const double nf = default_norm(f, p, tol);
  const double ng = default_norm(g, p, tol);
  return excess(nf, ng + 2.0 * tol);
}

double prop_nakano_sandwich(Rng& rng, const Family& fam, double tol) {
  const StepFunction f = random_step(rng, -fam.max_value, fam.max_value);
  const ExponentField p = random_exponent(rng, fam);
  const double nk = nakano_norm(f, p, 1e-9);
  const double no = default_norm(f, p, tol);
  return std::max(excess(nk, no + 1e-7), excess(no, 2.0 * nk + 1e-7));
}

double prop_sup_norm_bound(Rng& rng, const Family& fam, double) {
  const StepFunction f = random_step(rng, -fam.max_value, fam.max_value);
  const ExponentField p = random_exponent(rng, fam);
  const double no = default_norm(f, p, 1e-8);
  return excess(no, std::exp(1.0) * f.sup_abs() + 1e-7);
}

double prop_restricted_lower_bounds(Rng& rng, const Family& fam, double tol) {
  const double a = constant_a();
  const StepFunction f = random_step(rng, -fam.max_value, fam.max_value);
  const ExponentField p1 = random_exponent(rng, fam);
  const ExponentField p2 = random_exponent(rng, fam);

  // Restriction to {p1 >= q}: classical q-norm there is dominated by the
  // varying-exponent norm up to 1/(1+a).
  const double q = uniform(rng, p1.ess_inf(), p1.ess_sup());
  const StepFunction f_ge = StepFunction::zip(
      f, p1.base(), [q](double v, double pe) { return pe >= q ? v : 0.0; });
  double worst = 0.0;
  if (!f_ge.is_zero()) {
    CompositePartition cell;
    cell.breakpoints = {0.0, 1.0};
    cell.inner_exponents = {q};
    const double classical = composite_seminorm(f_ge, cell);
    const double ode_norm = default_norm(f_ge, p1, tol);
    worst = std::max(worst, excess(classical / (1.0 + a), ode_norm + 1e-7));
  }

  // Restriction to {p1 <= p2}: the p1 norm is dominated by the p2 norm up to
  // 1/(1+ae).
  const StepFunction indicator = StepFunction::zip(
      p1.base(), p2.base(), [](double x, double y) { return x <= y ? 1.0 : 0.0; });
  const StepFunction f_le =
      StepFunction::zip(f, indicator, [](double v, double ind) { return v * ind; });
  if (!f_le.is_zero()) {
    const double n1 = default_norm(f_le, p1, tol);
    const double n2 = default_norm(f_le, p2, tol);
    worst = std::max(worst, excess(n1 / (1.0 + a * std::exp(1.0)), n2 + 1e-7));
  }
  return worst;
}

double prop_composite_oracle_equivalence(Rng& rng, const Family& fam, double) {
  const StepFunction f = random_step(rng, -fam.max_value, fam.max_value);
  const ExponentField p = random_exponent(rng, fam);
  const double oracle = composite_seminorm(f, CompositePartition::standard(p));
  const double ode_norm = default_norm(f, p, 1e-12);
  return excess(std::abs(oracle - ode_norm), 1e-9);
}

double prop_upper_lower_estimates(Rng& rng, const Family& fam, double tol) {
  const StepFunction f = random_step(rng, -fam.max_value, fam.max_value);
  const ExponentField p = random_exponent(rng, fam);
  const int blocks = uniform_int(rng, 2, 6);
  std::vector<double> cuts = random_breakpoints(rng, blocks);

  const double whole = default_norm(f, p, tol);
  std::vector<double> parts;
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
    const double lo = cuts[b], hi = cuts[b + 1];
    // Restrict f to [lo, hi) on the merged grid.
    std::vector<double> bk = {0.0, 1.0};
    if (lo > 0.0) bk.insert(bk.end() - 1, lo);
    if (hi < 1.0) bk.insert(bk.end() - 1, hi);
    std::vector<double> iv(bk.size() - 1, 0.0);
    for (std::size_t i = 0; i + 1 < bk.size(); ++i) {
      if (bk[i] >= lo && bk[i + 1] <= hi) iv[i] = 1.0;
    }
    const StepFunction block_indicator(bk, iv);
    const StepFunction piece = StepFunction::zip(
        f, block_indicator, [](double v, double ind) { return v * ind; });
    parts.push_back(default_norm(piece, p, tol));
  }
  double upper = 0.0, lower = 0.0;
  for (double v : parts) {
    upper = boxplus(upper, v, p.ess_inf());
    lower = boxplus(lower, v, p.ess_sup());
  }
  return std::max(excess(lower, whole + 4.0 * tol), excess(whole, upper + 4.0 * tol));
}

double prop_rearrangement_sensitivity(Rng&, const Family&, double) {
  const StepFunction one = StepFunction::constant(1.0);
  const ExponentField p12(StepFunction({0.0, 0.5, 1.0}, {1.0, 2.0}));
  const ExponentField p21(StepFunction({0.0, 0.5, 1.0}, {2.0, 1.0}));
  const double v12 = default_norm(one, p12, 1e-10);
  const double v21 = default_norm(one, p21, 1e-10);
  const double e1 = std::abs(v12 - 0.8660254037844386);
  const double e2 = std::abs(v21 - 1.2071067811865475);
  return excess(std::max(e1, e2), 1e-9);
}

// ------------------------------------------------------------- duality ----

double prop_duality_map_scaling(Rng& rng, const Family&, double) {
  const double pe = uniform(rng, 1.25, 6.0);
  const ExponentField p = ExponentField::constant(pe);
  const StepFunction f = random_step(rng, -10.0, 10.0);
  const double lam = uniform(rng, 0.1, 5.0);
  const StepFunction lhs = duality_map(f.scaled(lam), p);
  const StepFunction rhs = duality_map(f, p).scaled(std::pow(lam, pe - 1.0));
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.values().size(); ++i) {
    const double denom = std::max(std::abs(rhs.values()[i]), 1e-12);
    worst = std::max(worst, std::abs(lhs.values()[i] - rhs.values()[i]) / denom);
  }
  return excess(worst, 1e-12);
}

double prop_duality_map_power_identity(Rng& rng, const Family&, double) {
  const StepFunction f = random_step(rng, -10.0, 10.0);
  const ExponentField p =
      ExponentField(random_step(rng, 1.25, 6.0, 16));
  const StepFunction jf = duality_map(f, p);
  auto [fa, pa] = refine_common(f, p.base());
  const StepFunction ja = jf.on_breakpoints(fa.breakpoints());
  double worst = 0.0;
  for (std::size_t i = 0; i < fa.values().size(); ++i) {
    const double v = std::abs(fa.values()[i]);
    if (v == 0.0) continue;
    const double pe = pa.values()[i];
    const double lhs = std::pow(std::abs(ja.values()[i]), dual_exponent(pe));
    const double rhs = std::pow(v, pe);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(rhs, 1e-12));
  }
  return excess(worst, 1e-12);
}

double prop_holder_inequality(Rng& rng, const Family&, double tol) {
  const StepFunction f = random_step(rng, -10.0, 10.0);
  const StepFunction g = random_step(rng, -10.0, 10.0);
  const ExponentField p = ExponentField(random_step(rng, 1.25, 4.0, 16));
  const HolderReport rep = holder_pair(f, g, p, tol);
  if (rep.holds) return 0.0;
  return rep.pairing - rep.bound;
}

double prop_pairing_equality(Rng& rng, const Family&, double tol) {
  static const double kExponents[] = {1.5, 2.0, 3.0, 4.0};
  const double pe = kExponents[uniform_int(rng, 0, 3)];
  const ExponentField p = ExponentField::constant(pe);
  const StepFunction f = random_step(rng, -2.0, 2.0);
  const PairingEquality eq = pairing_equality_check(f, p, tol);
  return excess(eq.gap, 8.0 * tol);
}

double prop_iota_constant_exponent(Rng& rng, const Family&, double) {
  const double pe = uniform(rng, 1.25, 4.0);
  const ExponentField p = ExponentField::constant(pe);
  const StepFunction f = random_step(rng, 0.05, 10.0, 8);
  const StepFunction iota = iota_invariant(f, p, 256);
  const double expected = pe - 1.0;
  double worst = 0.0;
  for (double v : iota.values()) {
    if (std::isnan(v)) continue;
    worst = std::max(worst, std::abs(v - expected) / expected);
  }
  return excess(worst, 1e-4);
}

// -------------------------------------------------------------- verify ----

double prop_blowup_classification(Rng&, const Family&, double) {
  const PropertyResult r = run_blowup_case();
  return static_cast<double>(r.failures);
}

const std::vector<PropertyDef>& registry() {
  static const std::vector<PropertyDef> defs = {
      {"boxplus-associativity", {"standard", "extreme"}, prop_boxplus_associativity},
      {"boxplus-monotonicity", {"standard", "extreme"}, prop_boxplus_monotonicity},
      {"transpose-inequality", {"standard"}, prop_transpose_inequality},
      {"mixed-inequality", {"standard", "extreme"}, prop_mixed_inequality},
      {"refine-common-pointwise", {"standard"}, prop_refine_common_pointwise},
      {"profile-monotone-in-x0", {"standard"}, prop_profile_monotone_in_x0},
      {"profile-contraction", {"standard"}, prop_profile_contraction},
      {"profile-merging", {"standard"}, prop_profile_merging},
      {"profile-nondecreasing", {"standard"}, prop_profile_nondecreasing},
      {"grid-refinement-consistency", {"standard"}, prop_grid_refinement_consistency},
      {"comparison-monotone-in-f", {"standard"}, prop_comparison_monotone_in_f},
      {"triangle-inequality", {"standard"}, prop_triangle},
      {"homogeneity", {"standard"}, prop_homogeneity},
      {"lattice-monotonicity", {"standard"}, prop_lattice_monotonicity},
      {"nakano-sandwich", {"standard"}, prop_nakano_sandwich},
      {"sup-norm-bound", {"standard"}, prop_sup_norm_bound},
      {"restricted-lower-bounds", {"standard"}, prop_restricted_lower_bounds},
      {"composite-oracle-equivalence", {"standard"}, prop_composite_oracle_equivalence},
      {"upper-lower-estimates", {"standard"}, prop_upper_lower_estimates},
      {"rearrangement-sensitivity", {}, prop_rearrangement_sensitivity},
      {"duality-map-scaling", {"standard"}, prop_duality_map_scaling},
      {"duality-map-power-identity", {"standard"}, prop_duality_map_power_identity},
      {"holder-inequality", {"standard"}, prop_holder_inequality},
      {"pairing-equality", {"standard"}, prop_pairing_equality},
      {"iota-constant-exponent", {"standard"}, prop_iota_constant_exponent},
      {"blowup-classification", {}, prop_blowup_classification},
  };
  return defs;
}

PropertyResult run_property(const PropertyDef& def, const SuiteConfig& config,
                            std::uint64_t salt) {
  PropertyResult result;
  result.name = def.name;

  std::vector<Family> fams;
  if (def.families.empty()) {
    fams.push_back(family_of("standard"));
  } else {
    for (const std::string& fam_name : def.families) {
      if (std::find(config.families.begin(), config.families.end(), fam_name) !=
          config.families.end()) {
        fams.push_back(family_of(fam_name));
      }
    }
    if (fams.empty()) return result;  // nothing enabled for this property
  }

  const int trials = def.families.empty() ? 1 : config.trials;
  for (std::size_t fi = 0; fi < fams.size(); ++fi) {
    for (int i = 0; i < trials; ++i) {
      const std::uint64_t tseed =
          mix(config.seed, (salt << 24) ^ (fi << 20) ^ static_cast<std::uint64_t>(i));
      Rng rng(tseed);
      const double violation = def.body(rng, fams[fi], config.tol);
      ++result.trials;
      if (violation > 0.0) {
        if (result.failures == 0) result.first_failure_seed = tseed;
        ++result.failures;
        result.worst_violation = std::max(result.worst_violation, violation);
      }
    }
  }
  return result;
}

}  // namespace

std::vector<std::string> property_names() {
  std::vector<std::string> names;
  names.reserve(registry().size());
  for (const auto& def : registry()) names.push_back(def.name);
  return names;
}

PropertyReport run_suite(const SuiteConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("run_suite: trials must be >= 1");
  if (!(config.tol > 0.0)) throw std::invalid_argument("run_suite: tol must be positive");
  for (const std::string& fam : config.families) family_of(fam);  // name check

  std::vector<const PropertyDef*> selected;
  if (config.properties.empty()) {
    for (const auto& def : registry()) selected.push_back(&def);
  } else {
    for (const std::string& want : config.properties) {
      const auto it = std::find_if(registry().begin(), registry().end(),
                                   [&](const PropertyDef& d) { return d.name == want; });
      if (it == registry().end()) {
        throw std::invalid_argument("run_suite: unknown property name: " + want);
      }
      selected.push_back(&*it);
    }
  }

  PropertyReport report;
  report.config = config;
  std::uint64_t salt = 0;
  for (const PropertyDef* def : selected) {
    report.properties.push_back(run_property(*def, config, salt++));
  }
  report.pass = std::all_of(report.properties.begin(), report.properties.end(),
                            [](const PropertyResult& r) { return r.failures == 0; });
  return report;
}

PropertyResult run_blowup_case() {
  PropertyResult result;
  result.name = "blowup-classification";

  const ExponentField p(example_notin_exponent(1 << 16, 1e6).to_step());
  const StepFunction f = builtin_one();

  auto classify = [&](double x0) {
    NormOptions opts;
    opts.tol = 1e-8;
    opts.x0_override = x0;
    return norm_limit(f, p, opts).status;
  };

  struct Case {
    double x0;
    SolveStatus expected;
  };
  const Case cases[] = {
      {1e-3, SolveStatus::not_in_class},
      {2.5e-4, SolveStatus::not_in_class},
      {0.6, SolveStatus::converged},
  };
  for (const Case& c : cases) {
    ++result.trials;
    if (classify(c.x0) != c.expected) {
      ++result.failures;
      result.worst_violation = 1.0;
    }
  }
  return result;
}

PropertyResult check_triangle_with(const NormFn& norm, std::uint64_t seed, int trials,
                                   double tol) {
  PropertyResult result;
  result.name = "triangle-inequality";
  const Family fam = family_of("standard");
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t tseed = mix(seed, static_cast<std::uint64_t>(i));
    Rng rng(tseed);
    const double violation = triangle_body(norm, rng, fam, tol);
    ++result.trials;
    if (violation > 0.0) {
      if (result.failures == 0) result.first_failure_seed = tseed;
      ++result.failures;
      result.worst_violation = std::max(result.worst_violation, violation);
    }
  }
  return result;
}

std::string PropertyReport::to_json(int indent) const {
  nlohmann::json j;
  j["config"] = {{"seed", config.seed},
                 {"trials", config.trials},
                 {"tol", config.tol},
                 {"families", config.families}};
  j["pass"] = pass;
  nlohmann::json props = nlohmann::json::array();
  for (const auto& r : properties) {
    props.push_back({{"name", r.name},
                     {"trials", r.trials},
                     {"failures", r.failures},
                     {"worst_violation", r.worst_violation},
                     {"first_failure_seed", r.first_failure_seed}});
  }
  j["properties"] = props;
  return j.dump(indent);
}

}  // namespace odelp
