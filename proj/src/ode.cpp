#include "odelp/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

#include "odelp/boxplus.hpp"

namespace odelp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Non-existence detector knobs. A profile step counts as a jump only when it
// launches from an already-accumulated state (kInteriorFrac of the final
// value); the universal steep start of the 0+ limit at t = 0 is not a jump.
constexpr double kJumpTol = 0.05;
constexpr double kInteriorFrac = 0.05;
constexpr double kShrinkFactor = 0.9;

double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> merged_grid(const StepFunction& f, const ExponentField& p,
                                const std::optional<StepFunction>& weight,
                                int refine) {
  const auto fb = f.breakpoints();
  const auto pb = p.base().breakpoints();
  std::vector<double> merged;
  merged.reserve(fb.size() + pb.size());
  std::set_union(fb.begin(), fb.end(), pb.begin(), pb.end(),
                 std::back_inserter(merged));
  if (weight) {
    const auto wb = weight->breakpoints();
    std::vector<double> out;
    out.reserve(merged.size() + wb.size());
    std::set_union(merged.begin(), merged.end(), wb.begin(), wb.end(),
                   std::back_inserter(out));
    merged = std::move(out);
  }
  if (refine > 1) {
    std::vector<double> fine;
    fine.reserve((merged.size() - 1) * refine + 1);
    fine.push_back(0.0);
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
      const double a = merged[i], b = merged[i + 1];
      for (int j = 1; j <= refine; ++j) {
        double t = (j == refine) ? b : a + (b - a) * static_cast<double>(j) / refine;
        if (t > fine.back()) fine.push_back(t);
      }
    }
    merged = std::move(fine);
  }
  return merged;
}

// Largest single-step increment among steps starting from at least
// kInteriorFrac of the profile's final value.
double interior_jump(const SolutionProfile& pr) {
  const double target = pr.final_value();
  if (!std::isfinite(target)) return kInf;
  const double floor = kInteriorFrac * target;
  double jump = 0.0;
  for (std::size_t i = 0; i + 1 < pr.phis.size(); ++i) {
    if (pr.phis[i] >= floor) {
      jump = std::max(jump, pr.phis[i + 1] - pr.phis[i]);
    }
  }
  return jump;
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::not_in_class: return "not-in-class";
    case SolveStatus::max_refinement: return "max-refinement";
  }
  return "unknown";
}

double SolutionProfile::max_step_increment() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < phis.size(); ++i) {
    m = std::max(m, phis[i + 1] - phis[i]);
  }
  return m;
}

bool SolutionProfile::finite() const {
  return std::all_of(phis.begin(), phis.end(),
                     [](double v) { return std::isfinite(v); });
}

double segment_update(double phi, double absf, double p, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::domain_error("segment_update: dt must be positive and finite");
  }
  if (!(absf >= 0.0)) {
    throw std::domain_error("segment_update: |f| must be nonnegative");
  }
  if (!(phi >= 0.0)) {
    throw std::domain_error("segment_update: phi must be nonnegative");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::domain_error("segment_update: exponent must be finite and >= 1");
  }
  if (absf == 0.0) return phi;  // no accumulation
  const double contrib = std::exp(std::log(dt) / p) * absf;
  return boxplus(phi, contrib, p);
}

StructureFunction::StructureFunction(std::string name, Eval eval,
                                     std::optional<SegmentHook> hook)
    : name_(std::move(name)), eval_(std::move(eval)), hook_(std::move(hook)) {
  if (!eval_) throw std::invalid_argument("StructureFunction: evaluator required");
}

double StructureFunction::exact_update(double phi, double x, double t, double dt) const {
  if (!hook_) throw std::logic_error("StructureFunction: no exact segment hook");
  return (*hook_)(phi, x, t, dt);
}

void StructureFunction::validate(unsigned seed, int probes) const {
  std::mt19937_64 rng(seed);
  auto uni = [&rng](double lo, double hi) { return lo + (hi - lo) * canonical(rng); };
  auto fail = [this](const char* what) {
    throw std::invalid_argument("StructureFunction '" + name_ + "': " + what);
  };
  for (int k = 0; k < probes; ++k) {
    const double t = uni(1e-6, 1.0);
    const double s = uni(1e-3, 10.0);
    const double x = uni(0.0, 10.0);
    const double base = eval_(s, x, t);
    if (std::isnan(base) || base < 0.0) fail("must be nonnegative");
    const double s_up = s * uni(1.0, 3.0);
    if (eval_(s_up, x, t) > base * (1.0 + 1e-9) + 1e-12) {
      fail("must be nonincreasing in s");
    }
    const double x_up = x + uni(0.1, 3.0);
    if (eval_(s, x_up, t) < base * (1.0 - 1e-9) - 1e-12) {
      fail("must be nondecreasing in x");
    }
    if (std::isfinite(base)) {
      const double lam = uni(0.1, 4.0);
      const double hom = eval_(lam * s, lam * x, t);
      if (std::abs(hom - lam * base) > 1e-9 * (1.0 + lam * base)) {
        fail("must be positively homogeneous");
      }
    }
    if (eval_(s, 0.0, t) != 0.0) fail("must vanish at x = 0");
    const double a = 1.0 + x;
    if (!(eval_(1e-9 * a, a, t) > 0.0)) fail("must stay positive as s -> 0+");
  }
}

StructureFunction StructureFunction::power_law(ExponentField p, bool with_exact_hook) {
  auto field = std::make_shared<ExponentField>(std::move(p));
  Eval eval = [field](double s, double x, double t) {
    if (x == 0.0) return 0.0;
    const double pe = (*field)(t);
    return std::exp(pe * std::log(x) + (1.0 - pe) * std::log(s) - std::log(pe));
  };
  std::optional<SegmentHook> hook;
  if (with_exact_hook) {
    hook = [field](double phi, double x, double t, double dt) {
      return segment_update(phi, x, (*field)(t), dt);
    };
  }
  return StructureFunction("power-law", std::move(eval), std::move(hook));
}

StructureFunction StructureFunction::time_weighted_square() {
  return StructureFunction("time-weighted-square", [](double s, double x, double t) {
    if (x == 0.0) return 0.0;
    return t * x * x / s;
  });
}

StructureFunction StructureFunction::exponent_band(double p_lo, double p_hi) {
  if (!(1.0 <= p_lo) || !(p_lo <= p_hi) || !std::isfinite(p_hi)) {
    throw std::invalid_argument("exponent_band: need 1 <= p_lo <= p_hi < inf");
  }
  auto at = [](double p, double s, double x) {
    return std::exp(p * std::log(x) + (1.0 - p) * std::log(s) - std::log(p));
  };
  // log of x^p/p · s^(1-p) is convex in p, so the band maximum sits at an
  // endpoint.
  return StructureFunction("exponent-band", [p_lo, p_hi, at](double s, double x, double t) {
    (void)t;
    if (x == 0.0) return 0.0;
    return std::max(at(p_lo, s, x), at(p_hi, s, x));
  });
}

StructureFunction StructureFunction::excess() {
  return StructureFunction("excess", [](double s, double x, double t) {
    (void)t;
    return std::max(x - s, 0.0);
  });
}

SolutionProfile integrate_lp(const StepFunction& f, const ExponentField& p,
                             double x0, const std::optional<StepFunction>& weight,
                             int refine) {
  if (!(x0 > 0.0) || !std::isfinite(x0)) {
    throw std::domain_error("integrate_lp: x0 must be positive and finite");
  }
  if (refine < 1) throw std::invalid_argument("integrate_lp: refine must be >= 1");
  if (weight) {
    for (double w : weight->values()) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw std::domain_error("integrate_lp: weight must be positive");
      }
    }
  }

  const std::vector<double> grid = merged_grid(f, p, weight, refine);
  const StepFunction fa = f.abs().on_breakpoints(grid);
  const StepFunction pa = p.base().on_breakpoints(grid);
  std::optional<StepFunction> wa;
  if (weight) wa = weight->on_breakpoints(grid);

  SolutionProfile out;
  out.ts = grid;
  out.phis.resize(grid.size());
  out.x0 = x0;
  out.phis[0] = x0;
  double phi = x0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double dt = grid[i + 1] - grid[i];
    const double absf = fa.values()[i];
    if (absf != 0.0) {
      const double pe = pa.values()[i];
      if (!std::isfinite(pe)) {
        throw std::domain_error("integrate_lp: infinite exponent on the support of f");
      }
      const double eff = wa ? (*wa).values()[i] * dt : dt;
      phi = segment_update(phi, absf, pe, eff);
    }
    out.phis[i + 1] = phi;
    if (!std::isfinite(phi)) {
      std::fill(out.phis.begin() + static_cast<std::ptrdiff_t>(i) + 2, out.phis.end(), phi);
      out.status = SolveStatus::max_refinement;
      return out;
    }
  }
  out.status = SolveStatus::converged;
  return out;
}

SolveStatus nonexistence_diagnostic(std::span<const SolutionProfile> profiles) {
  if (profiles.size() < 3) {
    throw std::invalid_argument("nonexistence_diagnostic: need at least 3 profiles");
  }
  for (const auto& pr : profiles) {
    if (!pr.finite()) return SolveStatus::max_refinement;
  }
  const double first = interior_jump(profiles.front());
  const double last = interior_jump(profiles.back());
  const double scale = profiles.back().final_value();
  if (last > kJumpTol * scale && last > kShrinkFactor * first) {
    return SolveStatus::not_in_class;
  }
  return SolveStatus::converged;
}

NormReport norm_limit(const StepFunction& f_in, const ExponentField& p_in,
                      const NormOptions& opts) {
  if (!(opts.tol > 0.0) || !std::isfinite(opts.tol)) {
    throw std::domain_error("norm_limit: tol must be positive and finite");
  }
  const StepFunction f = opts.backward ? f_in.reflected() : f_in;
  const ExponentField p =
      opts.backward ? ExponentField(p_in.base().reflected()) : p_in;
  std::optional<StepFunction> w = opts.weight;
  if (opts.backward && w) w = w->reflected();

  NormReport rep;
  if (f.is_zero()) {
    rep.value = 0.0;
    rep.error_bound = 0.0;
    rep.status = SolveStatus::converged;
    rep.diagnostics = {{"x0", 0.0},
                       {"grid_size", static_cast<double>(f.piece_count())},
                       {"max_step_increment", 0.0}};
    return rep;
  }

  const double tol = opts.tol;
  std::vector<SolutionProfile> seq;
  SolutionProfile value_profile;
  double certificate = 0.0;
  double residual = 0.0;

  if (opts.x0_override) {
    const double x0 = *opts.x0_override;
    seq.push_back(integrate_lp(f, p, x0, w, 1));
    seq.push_back(integrate_lp(f, p, x0, w, 2));
    seq.push_back(integrate_lp(f, p, x0, w, 4));
    seq.push_back(integrate_lp(f, p, x0, w, 8));
    value_profile = seq.front();
    residual = std::abs(seq.back().final_value() - seq.front().final_value());
    rep.error_bound = residual;
  } else {
    const SolutionProfile half = integrate_lp(f, p, tol / 2, w, 1);
    value_profile = integrate_lp(f, p, tol / 4, w, 1);
    seq.push_back(half);
    seq.push_back(integrate_lp(f, p, tol / 4, w, 2));
    seq.push_back(integrate_lp(f, p, tol / 8, w, 4));
    seq.push_back(integrate_lp(f, p, tol / 16, w, 8));
    certificate = std::abs(half.final_value() - value_profile.final_value());
    residual = std::abs(seq[1].final_value() - value_profile.final_value());
    rep.error_bound = tol / 4 + residual;
  }

  rep.value = value_profile.final_value();
  rep.diagnostics = {{"x0", value_profile.x0},
                     {"grid_size", static_cast<double>(value_profile.ts.size() - 1)},
                     {"max_step_increment", value_profile.max_step_increment()}};

  const bool all_finite = value_profile.finite() &&
      std::all_of(seq.begin(), seq.end(), [](const SolutionProfile& s) { return s.finite(); });
  if (!all_finite) {
    rep.status = SolveStatus::max_refinement;
    return rep;
  }
  const SolveStatus diag = nonexistence_diagnostic(seq);
  if (diag != SolveStatus::converged) {
    rep.status = SolveStatus::not_in_class;
    return rep;
  }
  if (!opts.x0_override && certificate >= tol / 2) {
    rep.status = SolveStatus::max_refinement;
    return rep;
  }
  if (opts.x0_override && residual > tol) {
    rep.status = SolveStatus::max_refinement;
    return rep;
  }
  rep.status = SolveStatus::converged;
  return rep;
}

namespace {

// Backward-Euler target: z = phi + h·U(z, x, t), unique because U is
// nonincreasing in its first argument.
double implicit_step(const StructureFunction& u, double phi, double x, double t,
                     double h) {
  const double slope0 = u(phi, x, t);
  if (slope0 == 0.0) return phi;
  double hi;
  if (std::isfinite(slope0)) {
    hi = phi + h * slope0;
    // Fixed-point sweep; contracts when h·|dU/ds| < 1, which covers all but
    // the stiff small-phi corner.
    double z = hi;
    for (int it = 0; it < 8; ++it) {
      const double nz = phi + h * u(z, x, t);
      if (std::abs(nz - z) <= 1e-15 * (1.0 + std::abs(z))) return nz;
      z = nz;
    }
  } else {
    hi = std::max(phi, h) * 2.0;
    for (int guard = 0; guard < 2048; ++guard) {
      const double g = phi + h * u(hi, x, t) - hi;
      if (!(g > 0.0)) break;
      hi *= 2.0;
    }
  }
  double lo = phi;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = phi + h * u(mid, x, t) - mid;
    if (g > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SolutionProfile upsilon_run(const StructureFunction& u, const StepFunction& f,
                            double x0, std::int64_t steps) {
  constexpr std::int64_t kMaxProfilePoints = 4096;
  const std::int64_t stride = std::max<std::int64_t>(1, steps / kMaxProfilePoints);

  SolutionProfile out;
  out.x0 = x0;
  out.ts.reserve(static_cast<std::size_t>(steps / stride) + 2);
  out.phis.reserve(static_cast<std::size_t>(steps / stride) + 2);
  out.ts.push_back(0.0);
  out.phis.push_back(x0);

  const double h = 1.0 / static_cast<double>(steps);
  double phi = x0;
  for (std::int64_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const double x = std::abs(f(std::min(t, 1.0)));
    if (u.has_exact_update()) {
      phi = u.exact_update(phi, x, t, h);
    } else {
      phi = implicit_step(u, phi, x, t, h);
    }
    if (!std::isfinite(phi)) {
      out.ts.push_back(std::min(static_cast<double>(k + 1) * h, 1.0));
      out.phis.push_back(phi);
      out.status = SolveStatus::max_refinement;
      if (out.ts.back() != 1.0) {
        out.ts.push_back(1.0);
        out.phis.push_back(phi);
      }
      return out;
    }
    if ((k + 1) % stride == 0 || k + 1 == steps) {
      out.ts.push_back(k + 1 == steps ? 1.0 : static_cast<double>(k + 1) * h);
      out.phis.push_back(phi);
    }
  }
  out.status = SolveStatus::converged;
  return out;
}

}  // namespace

SolutionProfile integrate_upsilon(const StructureFunction& u, const StepFunction& f,
                                  double x0, int n, double tol, int max_doublings) {
  if (!(x0 > 0.0) || !std::isfinite(x0)) {
    throw std::domain_error("integrate_upsilon: x0 must be positive and finite");
  }
  if (n < 1) throw std::invalid_argument("integrate_upsilon: n must be >= 1");
  if (!(tol > 0.0)) throw std::domain_error("integrate_upsilon: tol must be positive");
  u.validate();

  std::int64_t steps = n;
  SolutionProfile prev = upsilon_run(u, f, x0, steps);
  for (int d = 0; d < max_doublings; ++d) {
    if (!prev.finite()) break;
    steps *= 2;
    SolutionProfile cur = upsilon_run(u, f, x0, steps);
    const double diff = std::abs(cur.final_value() - prev.final_value());
    if (cur.finite() && diff < tol) {
      cur.error_bound = diff;
      cur.status = SolveStatus::converged;
      return cur;
    }
    prev = std::move(cur);
  }
  prev.status = SolveStatus::max_refinement;
  return prev;
}

}  // namespace odelp
