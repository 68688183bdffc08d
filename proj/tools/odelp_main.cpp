#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "odelp/duality.hpp"
#include "odelp/norms.hpp"
#include "odelp/problem_spec.hpp"
#include "odelp/verify.hpp"

namespace {

using namespace odelp;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitNotConverged = 2;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitParse;
  }
  out << text;
  return kExitOk;
}

struct SpecArgs {
  std::string spec_path;
  std::string f_text;
  std::string p_text;
  std::string weight_text;
  double tol = 1e-8;
  bool tol_set = false;
  std::string direction = "forward";
  bool direction_set = false;
  double x0 = 0.0;
  bool x0_set = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--spec", spec_path, "Problem spec JSON file ('-' for stdin)");
    cmd->add_option("--f", f_text, "Function: JSON shape or builtin name");
    cmd->add_option("--p", p_text, "Exponent: JSON shape or builtin name");
    cmd->add_option("--weight", weight_text, "Weight density: JSON shape or builtin name");
    cmd->add_option("--tol", tol, "Tolerance for the reported value")
        ->each([this](const std::string&) { tol_set = true; });
    cmd->add_option("--direction", direction, "forward | backward")
        ->each([this](const std::string&) { direction_set = true; });
    cmd->add_option("--x0", x0, "Fixed initial value (bypasses the 0+ limit)")
        ->each([this](const std::string&) { x0_set = true; });
  }

  ProblemSpec resolve() const {
    ProblemSpec spec;
    if (!spec_path.empty()) {
      spec = parse_problem_spec(read_input(spec_path));
    } else {
      if (f_text.empty() || p_text.empty()) {
        throw SpecParseError("need --spec or both --f and --p");
      }
      spec.f = parse_function_desc(f_text);
      spec.p = parse_function_desc(p_text);
    }
    if (!f_text.empty() && !spec_path.empty()) spec.f = parse_function_desc(f_text);
    if (!p_text.empty() && !spec_path.empty()) spec.p = parse_function_desc(p_text);
    if (!weight_text.empty()) spec.weight = parse_function_desc(weight_text);
    if (tol_set) {
      if (!(tol > 0.0)) throw SpecParseError("tol: must be positive");
      spec.tol = tol;
    }
    if (direction_set) {
      if (direction == "forward") {
        spec.backward = false;
      } else if (direction == "backward") {
        spec.backward = true;
      } else {
        throw SpecParseError("direction: expected forward or backward");
      }
    }
    if (x0_set) {
      if (!(x0 > 0.0)) throw SpecParseError("x0: must be positive");
      spec.x0 = x0;
    }
    return spec;
  }
};

int status_exit(SolveStatus status) {
  return status == SolveStatus::converged ? kExitOk : kExitNotConverged;
}

int cmd_norm(const SpecArgs& args, const std::string& format, const std::string& out) {
  const ProblemSpec spec = args.resolve();
  const StepFunction f = spec.f.realize();
  const ExponentField p(spec.p.realize());
  const NormReport rep = lp_norm(f, p, spec.norm_options());

  std::string text;
  if (format == "json") {
    nlohmann::json j{{"value", rep.value},
                     {"error_bound", rep.error_bound},
                     {"status", to_string(rep.status)},
                     {"diagnostics", rep.diagnostics}};
    text = j.dump(2) + "\n";
  } else {
    text = "value " + format_double(rep.value) + "\n" +
           "error_bound " + format_double(rep.error_bound) + "\n" +
           "status " + to_string(rep.status) + "\n";
  }
  const int w = write_output(text, out);
  return w != kExitOk ? w : status_exit(rep.status);
}

int cmd_profile(const SpecArgs& args, const std::string& format, const std::string& out) {
  const ProblemSpec spec = args.resolve();
  StepFunction f = spec.f.realize();
  ExponentField p(spec.p.realize());
  std::optional<StepFunction> w;
  if (spec.weight) w = spec.weight->realize();
  if (spec.backward) {
    f = f.reflected();
    p = ExponentField(p.base().reflected());
    if (w) w = w->reflected();
  }
  const double x0 = spec.x0.value_or(spec.tol / 4.0);
  const SolutionProfile prof = integrate_lp(f, p, x0, w);

  std::string text;
  if (format == "json") {
    nlohmann::json j{{"ts", prof.ts},
                     {"phis", prof.phis},
                     {"x0", prof.x0},
                     {"status", to_string(prof.status)}};
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "t,phi\n";
    for (std::size_t i = 0; i < prof.ts.size(); ++i) {
      csv << format_double(prof.ts[i]) << "," << format_double(prof.phis[i]) << "\n";
    }
    text = csv.str();
  }
  const int rc = write_output(text, out);
  return rc != kExitOk ? rc : status_exit(prof.status);
}

int cmd_nakano(const SpecArgs& args, const std::string& format, const std::string& out) {
  const ProblemSpec spec = args.resolve();
  const StepFunction f = spec.f.realize();
  const ExponentField p(spec.p.realize());
  const double value = nakano_norm(f, p, spec.tol);

  std::string text;
  if (format == "json") {
    nlohmann::json j{{"value", value}};
    text = j.dump(2) + "\n";
  } else {
    text = "value " + format_double(value) + "\n";
  }
  const int rc = write_output(text, out);
  return rc;
}

int cmd_pair(const SpecArgs& args, const std::string& g_text, const std::string& format,
             const std::string& out) {
  const ProblemSpec spec = args.resolve();
  if (g_text.empty()) throw SpecParseError("pair: need --g");
  const StepFunction f = spec.f.realize();
  const StepFunction g = parse_function_desc(g_text).realize();
  const ExponentField p(spec.p.realize());
  const HolderReport rep = holder_pair(f, g, p, spec.tol);

  std::string text;
  if (format == "json") {
    nlohmann::json j{{"pairing", rep.pairing}, {"bound", rep.bound}, {"holds", rep.holds}};
    text = j.dump(2) + "\n";
  } else {
    text = "pairing " + format_double(rep.pairing) + "\n" +
           "bound " + format_double(rep.bound) + "\n" +
           (rep.holds ? "HOLDS\n" : "VIOLATED\n");
  }
  const int rc = write_output(text, out);
  return rc != kExitOk ? rc : (rep.holds ? kExitOk : kExitNotConverged);
}

int cmd_check(std::uint64_t seed, int trials, double tol, const std::string& families,
              const std::string& out) {
  SuiteConfig config;
  config.seed = seed;
  config.trials = trials;
  config.tol = tol;
  if (!families.empty()) {
    config.families.clear();
    std::stringstream ss(families);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) config.families.push_back(item);
    }
  }
  const PropertyReport report = run_suite(config);
  const int rc = write_output(report.to_json() + "\n", out);
  return rc != kExitOk ? rc : (report.pass ? kExitOk : kExitNotConverged);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Varying-exponent Lebesgue norms driven by a first-order ODE"};
  app.require_subcommand(1);

  std::string format = "plain";
  std::string out_path;
  app.add_option("--format", format, "plain | json | csv")->capture_default_str();
  app.add_option("--out", out_path, "Write output to a file instead of stdout");

  SpecArgs norm_args, profile_args, nakano_args, pair_args;
  std::string pair_g;

  CLI::App* norm = app.add_subcommand("norm", "Compute the ODE-driven norm");
  norm_args.attach(norm);
  CLI::App* profile = app.add_subcommand("profile", "Emit the accumulation path as CSV");
  profile_args.attach(profile);
  CLI::App* nakano = app.add_subcommand("nakano", "Compute the Nakano comparison norm");
  nakano_args.attach(nakano);
  CLI::App* pair = app.add_subcommand("pair", "Check the pairing against the norm product");
  pair_args.attach(pair);
  pair->add_option("--g", pair_g, "Second function: JSON shape or builtin name");

  std::uint64_t seed = 42;
  int trials = 200;
  double check_tol = 1e-8;
  std::string families;
  CLI::App* check = app.add_subcommand("check", "Run the randomized property suite");
  check->add_option("--seed", seed, "Suite seed")->capture_default_str();
  check->add_option("--trials", trials, "Trials per property")->capture_default_str();
  check->add_option("--tol", check_tol, "Suite tolerance")->capture_default_str();
  check->add_option("--families", families, "Comma-separated instance families");

  CLI11_PARSE(app, argc, argv);

  try {
    if (norm->parsed()) return cmd_norm(norm_args, format, out_path);
    if (profile->parsed()) {
      if (format == "plain") format = "csv";
      return cmd_profile(profile_args, format, out_path);
    }
    if (nakano->parsed()) return cmd_nakano(nakano_args, format, out_path);
    if (pair->parsed()) return cmd_pair(pair_args, pair_g, format, out_path);
    if (check->parsed()) return cmd_check(seed, trials, check_tol, families, out_path);
  } catch (const SpecParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
