#include "odelp/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "odelp/boxplus.hpp"
#include "odelp/norms.hpp"

namespace odelp {

namespace {

double signum(double v) { return (v > 0.0) - (v < 0.0); }

double integral_product(const StepFunction& a, const StepFunction& b, bool absolute) {
  auto [ar, br] = refine_common(a, b);
  const auto breaks = ar.breakpoints();
  double sum = 0.0;
  for (std::size_t i = 0; i < ar.values().size(); ++i) {
    const double len = breaks[i + 1] - breaks[i];
    const double prod = ar.values()[i] * br.values()[i];
    sum += len * (absolute ? std::abs(prod) : prod);
  }
  return sum;
}

}  // namespace

StepFunction duality_map(const StepFunction& f, const ExponentField& p) {
  auto [fa, pa] = refine_common(f, p.base());
  std::vector<double> vals(fa.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double v = fa.values()[i];
    if (v == 0.0) {
      vals[i] = 0.0;
      continue;
    }
    const double pe = pa.values()[i];
    if (pe == 1.0) {
      throw std::domain_error("duality_map: p = 1 on the support of f");
    }
    vals[i] = signum(v) * std::pow(std::abs(v), pe - 1.0);
  }
  std::vector<double> breaks(fa.breakpoints().begin(), fa.breakpoints().end());
  return StepFunction(std::move(breaks), std::move(vals));
}

HolderReport holder_pair(const StepFunction& f, const StepFunction& g,
                         const ExponentField& p, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("holder_pair: tol must be positive");

  auto [ga, pa] = refine_common(g, p.base());
  for (std::size_t i = 0; i < ga.values().size(); ++i) {
    if (ga.values()[i] != 0.0 && pa.values()[i] == 1.0) {
      throw std::domain_error("holder_pair: conjugate exponent undefined where g is nonzero");
    }
  }

  HolderReport rep;
  rep.pairing = integral_product(f, g, /*absolute=*/true);
  const NormOptions opts{tol, std::nullopt, false, std::nullopt};
  const NormReport nf = lp_norm(f, p, opts);
  const NormReport ng = lp_norm(g, p.conjugate(), opts);
  rep.bound = nf.value * ng.value;
  rep.holds = nf.status == SolveStatus::converged && ng.status == SolveStatus::converged &&
              rep.pairing <= rep.bound + 4.0 * tol;
  return rep;
}

PairingEquality pairing_equality_check(const StepFunction& f, const ExponentField& p,
                                       double tol) {
  if (!(tol > 0.0)) throw std::domain_error("pairing_equality_check: tol must be positive");
  PairingEquality out;
  if (f.is_zero()) return out;

  auto [fa, pa] = refine_common(f, p.base());
  double p_support = 0.0;
  for (std::size_t i = 0; i < fa.values().size(); ++i) {
    if (fa.values()[i] == 0.0) continue;
    if (p_support == 0.0) {
      p_support = pa.values()[i];
    } else if (pa.values()[i] != p_support) {
      throw std::invalid_argument(
          "pairing_equality_check: exponent must be constant on the support of f");
    }
  }
  if (p_support == 1.0) {
    throw std::domain_error("pairing_equality_check: p = 1 on the support of f");
  }

  const StepFunction jf = duality_map(f, p);
  out.lhs = integral_product(f, jf, /*absolute=*/false);

  // Split the requested tolerance so the product of the two norm errors stays
  // within the 8·tol contract even for large norms.
  const double scale = std::exp(1.0) * (f.sup_abs() + jf.sup_abs()) + 1.0;
  const NormOptions opts{tol / scale, std::nullopt, false, std::nullopt};
  const NormReport nf = lp_norm(f, p, opts);
  const NormReport nj = lp_norm(jf, p.conjugate(), opts);
  out.rhs = nf.value * nj.value;
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

StepFunction iota_invariant(const StepFunction& f, const ExponentField& p, int grid) {
  const StepFunction jf = duality_map(f, p);

  auto [fa, pa] = refine_common(f, p.base());
  const std::size_t cells = fa.values().size();
  const int per_cell =
      std::max(4, static_cast<int>((grid + static_cast<int>(cells) - 1) /
                                   std::max<std::size_t>(cells, 1)));

  const double x0 = 0.5;
  const double p0 = pa.values()[0];
  const double x0_star = std::pow(x0, p0 - 1.0);

  const SolutionProfile prof_f = integrate_lp(fa, p, x0, std::nullopt, per_cell);
  const SolutionProfile prof_j =
      integrate_lp(jf, p.conjugate(), x0_star, std::nullopt, per_cell);
  if (prof_f.ts.size() != prof_j.ts.size()) {
    throw std::logic_error("iota_invariant: integration grids diverged");
  }

  const auto breaks = fa.breakpoints();
  std::vector<double> iota(cells, std::numeric_limits<double>::quiet_NaN());
  std::size_t k = 0;  // grid index walking prof_f.ts
  for (std::size_t c = 0; c < cells; ++c) {
    const double cell_end = breaks[c + 1];
    std::size_t k_end = k;
    while (k_end + 1 < prof_f.ts.size() && prof_f.ts[k_end + 1] <= cell_end) ++k_end;
    double sum = 0.0;
    int count = 0;
    for (std::size_t j = k + 1; j < k_end; ++j) {
      const double dlog_f = std::log(prof_f.phis[j + 1]) - std::log(prof_f.phis[j - 1]);
      const double dlog_j = std::log(prof_j.phis[j + 1]) - std::log(prof_j.phis[j - 1]);
      if (dlog_f > 1e-300) {
        sum += dlog_j / dlog_f;
        ++count;
      }
    }
    if (count > 0) iota[c] = sum / count;
    k = k_end;
  }
  std::vector<double> out_breaks(breaks.begin(), breaks.end());
  return StepFunction(std::move(out_breaks), std::move(iota));
}

}  // namespace odelp
