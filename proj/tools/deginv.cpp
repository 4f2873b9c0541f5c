// deginv: command-line front end for the theta, modular, invariant and
// degeneration computations.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "deginv/degeneration.hpp"
#include "deginv/errors.hpp"
#include "deginv/invariants.hpp"
#include "deginv/modular.hpp"
#include "deginv/report.hpp"
#include "deginv/selftest.hpp"

namespace {

using namespace deginv;

enum ExitCode { kOk = 0, kSelftestFailed = 1, kUsage = 2, kDomain = 3, kNumerical = 4, kFit = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kComputeNames{"eta",   "eta-norm", "theta1", "theta2", "chi10",
                                             "chi10-norm", "green", "delta1", "logd", "beta2",
                                             "lambda", "thmA",    "thmB",   "wentworth"};

const std::vector<std::string> kComputeFlags{
    "omega-re", "omega-im", "z-re",   "z-im",   "u-re",   "u-im",   "z1-re",  "z1-im",
    "z2-re",    "z2-im",    "o11-re", "o11-im", "o12-re", "o12-im", "o22-re", "o22-im",
    "a1",       "a2",       "b1",     "b2",     "h",      "h1",     "h2",     "phi",
    "phi1",     "phi2",     "delta",  "delta1", "delta2", "gab"};

const std::vector<std::string> kSweepFlags{"omega-re",  "omega-im",  "omega1-re", "omega1-im",
                                           "omega2-re", "omega2-im", "u-re",      "u-im",
                                           "x-offset",  "start",     "end",       "points"};

struct Common {
  std::string format = "table";
  std::string output;
  int precision = 12;
  double eps = AccuracyTarget::kDefaultEps;
  int max_radius = AccuracyTarget::kDefaultMaxRadius;

  void attach(CLI::App* app) {
    app->add_option("--format", format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    app->add_option("--output", output, "Write data to this file instead of standard output");
    app->add_option("--precision", precision, "Significant digits (4-17)");
    app->add_option("--eps", eps, "Absolute error target");
    app->add_option("--max-radius", max_radius, "Cap on the lattice summation radius");
  }

  OutputSpec spec() const {
    OutputSpec s{parse_output_format(format), output, precision};
    if (!s.precision_valid()) throw UsageError("--precision must lie in [4, 17]");
    return s;
  }

  AccuracyTarget accuracy() const {
    if (!(eps > 0.0) || !(eps <= 1e-3)) throw UsageError("--eps must lie in (0, 1e-3]");
    if (max_radius < 4 || max_radius > AccuracyTarget::kRadiusCeiling) {
      throw UsageError("--max-radius must lie in [4, 256]");
    }
    return {eps, max_radius};
  }
};

class Flags {
public:
  void attach(CLI::App* app, const std::vector<std::string>& names) {
    for (const auto& n : names) app->add_option("--" + n, values_[n]);
  }

  bool has(const std::string& n) const {
    auto it = values_.find(n);
    return it != values_.end() && it->second.has_value();
  }

  double need(const std::string& n) const {
    if (!has(n)) throw UsageError("missing required flag --" + n);
    const double v = *values_.at(n);
    if (!std::isfinite(v)) throw UsageError("flag --" + n + " must be finite");
    return v;
  }

  double get(const std::string& n, double fallback) const { return has(n) ? need(n) : fallback; }

  int need_int(const std::string& n) const {
    const double v = need(n);
    if (v != std::floor(v) || std::abs(v) > 1e6) throw UsageError("flag --" + n + " must be an integer");
    return static_cast<int>(v);
  }

  int need_bit(const std::string& n) const {
    const int v = need_int(n);
    if (v != 0 && v != 1) throw UsageError("flag --" + n + " must be 0 or 1");
    return v;
  }

  Complex complex(const std::string& prefix, bool required_re = false) const {
    const double re = required_re ? need(prefix + "-re") : get(prefix + "-re", 0.0);
    return {re, get(prefix + "-im", 0.0)};
  }

  UpperHalfPoint upper(const std::string& prefix) const {
    const double im = need(prefix + "-im");
    if (!(im > 0.0)) throw UsageError("flag --" + prefix + "-im must be positive");
    return {get(prefix + "-re", 0.0), im};
  }

  SiegelPoint2 siegel() const {
    return {{get("o11-re", 0.0), need("o11-im")},
            {get("o12-re", 0.0), get("o12-im", 0.0)},
            {get("o22-re", 0.0), need("o22-im")}};
  }

private:
  std::map<std::string, std::optional<double>> values_;
};

void emit(const std::string& text, const OutputSpec& spec) {
  if (spec.destination.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(spec.destination, std::ios::binary);
  if (!out) throw UsageError("cannot open --output file '" + spec.destination + "'");
  out << text;
}

ValueRecord complex_record(const std::string& name, Complex v) {
  return {name, {{"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}}};
}

ValueRecord scalar_record(const std::string& name, double v) { return {name, {{"value", v}}}; }

bool separating_mode(const std::string& mode) {
  if (mode == "separating") return true;
  if (mode == "nonseparating") return false;
  throw UsageError("flag --mode must be separating or nonseparating");
}

SeparatingInputs separating_inputs(const Flags& f) {
  return {f.need("phi1"), f.need("phi2"), f.need("delta1"), f.need("delta2")};
}

NonSeparatingInputs nonseparating_inputs(const Flags& f) {
  return {f.need("phi"), f.need("delta"), f.need("gab")};
}

ValueRecord triple_record(const std::string& name, const LimitTriple& r) {
  return {name, {{"slope", r.slope}, {"log_log_coeff", r.log_log_coeff}, {"limit", r.limit}}};
}

ValueRecord compute(const std::string& name, const Flags& f, const std::string& mode,
                    const AccuracyTarget& acc) {
  if (name == "eta") {
    const auto w = f.upper("omega");
    const Complex v = eta(w, acc);
    return {name, {{"re", v.real()}, {"im", v.imag()}, {"log_abs", log_abs_eta(w, acc)}}};
  }
  if (name == "eta-norm") {
    return {name, {{"log_norm", log_petersson_eta(f.upper("omega"), acc).log_norm}}};
  }
  if (name == "theta1") {
    return complex_record(name, theta_odd_genus1(f.complex("z"), f.upper("omega"), acc));
  }
  if (name == "theta2") {
    const auto c = ThetaChar2::from_halves(f.need_bit("a1"), f.need_bit("a2"), f.need_bit("b1"),
                                           f.need_bit("b2"));
    return complex_record(name, theta_char_genus2(c, {f.complex("z1"), f.complex("z2")}, f.siegel(), acc));
  }
  if (name == "chi10") return complex_record(name, chi10(f.siegel(), acc));
  if (name == "chi10-norm") {
    return {name, {{"log_norm", log_petersson_chi10(f.siegel(), acc).log_norm}}};
  }
  if (name == "green") {
    const auto w = f.upper("omega");
    return scalar_record(name, green_torus(TorusDisplacement(f.complex("u"), w), acc));
  }
  if (name == "delta1") return scalar_record(name, delta_elliptic({f.upper("omega")}, acc));
  if (name == "logd") return scalar_record(name, arakelov_d_torus({f.upper("omega")}, acc));
  if (name == "beta2") return scalar_record(name, beta_genus2(f.siegel(), acc));
  if (name == "lambda") {
    const int h = f.need_int("h");
    const double l = lambda_invariant(h, f.need("phi"), f.need("delta"));
    return {name, {{"lambda", l}, {"beta", beta_from_lambda(h, l)}}};
  }
  const bool sep = separating_mode(mode);
  if (name == "thmA") {
    const LimitPair r = sep ? thmA_limit(SeparatingSplit::of(f.need_int("h1"), f.need_int("h2")),
                                         separating_inputs(f))
                            : thmA_limit(NonSeparatingSplit::of(f.need_int("h")), nonseparating_inputs(f));
    return {name, {{"slope", r.slope}, {"limit", r.limit}}};
  }
  if (name == "thmB") {
    return triple_record(
        name, sep ? thmB_limit(SeparatingSplit::of(f.need_int("h1"), f.need_int("h2")), separating_inputs(f))
                  : thmB_limit(NonSeparatingSplit::of(f.need_int("h")), nonseparating_inputs(f)));
  }
  // wentworth
  return triple_record(
      name, sep ? wentworth_delta_limit(SeparatingSplit::of(f.need_int("h1"), f.need_int("h2")),
                                        separating_inputs(f))
                : wentworth_delta_limit(NonSeparatingSplit::of(f.need_int("h")), nonseparating_inputs(f)));
}

int thread_count() {
  const char* env = std::getenv("DEGINV_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) throw UsageError("DEGINV_THREADS must be a positive integer");
  return static_cast<int>(n);
}

std::vector<double> sweep_points(const Flags& f, const std::vector<double>& at) {
  if (!at.empty()) return at;
  const int n = f.need_int("points");
  if (n < 1) throw UsageError("flag --points must be at least 1");
  const double start = f.need("start");
  const double end = f.need("end");
  if (!(start > 0.0) || !(end > 0.0)) throw UsageError("flags --start and --end must be positive");
  return SweepGrid::log_spaced(start, end, n);
}

std::string sweep(const std::string& mode, const Flags& f, const std::vector<double>& at,
                  const AccuracyTarget& acc, const OutputSpec& spec) {
  const int threads = thread_count();
  const auto points = sweep_points(f, at);
  if (separating_mode(mode)) {
    const SeparatingFamily fam{f.upper("omega1"), f.upper("omega2")};
    const auto report = run_sweep(SweepGrid::separating(points), fam, acc, threads);
    return render_sweep(report, family_json(fam), spec);
  }
  const NonSeparatingFamily fam(f.upper("omega"), f.complex("u"), f.get("x-offset", 0.0));
  const auto report = run_sweep(SweepGrid::nonseparating(points), fam, acc, threads);
  return render_sweep(report, family_json(fam), spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta functions, modular forms and degeneration limits of genus-2 invariants"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  Common common;
  Flags flags;
  std::string compute_name;
  std::string mode = "separating";
  std::string sweep_mode;
  std::vector<double> at;

  auto* cmd_compute = app.add_subcommand("compute", "Evaluate a single quantity");
  cmd_compute->set_help_flag("--help", "Print this help message and exit");
  cmd_compute->add_option("name", compute_name, "Quantity to compute")
      ->required()
      ->check(CLI::IsMember(kComputeNames));
  cmd_compute->add_option("--mode", mode, "separating or nonseparating (thmA, thmB, wentworth)");
  common.attach(cmd_compute);
  flags.attach(cmd_compute, kComputeFlags);

  auto* cmd_sweep = app.add_subcommand("sweep", "Regularized beta along a degenerating family");
  cmd_sweep->add_option("mode", sweep_mode, "separating or nonseparating")
      ->required()
      ->check(CLI::IsMember({"separating", "nonseparating"}));
  cmd_sweep->add_option("--at", at, "Explicit grid point (repeatable)");
  common.attach(cmd_sweep);
  flags.attach(cmd_sweep, kSweepFlags);

  auto* cmd_selftest = app.add_subcommand("selftest", "Run the embedded property suite");
  common.attach(cmd_selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "deginv: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const OutputSpec spec = common.spec();
    if (cmd_selftest->parsed()) {
      const auto groups = run_selftest();
      emit(render_selftest(groups, spec), spec);
      int status = kOk;
      for (const auto& g : groups) {
        if (g.passed) continue;
        std::cerr << "deginv: selftest group " << g.name << " failed, worst residual "
                  << format_number(g.worst_residual, spec.precision) << "\n";
        status = kSelftestFailed;
      }
      return status;
    }
    const AccuracyTarget acc = common.accuracy();
    if (cmd_compute->parsed()) {
      emit(render_record(compute(compute_name, flags, mode, acc), spec), spec);
    } else {
      emit(sweep(sweep_mode, flags, at, acc, spec), spec);
    }
    return kOk;
  } catch (const UsageError& e) {
    std::cerr << "deginv: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "deginv: domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const AccuracyError& e) {
    std::cerr << "deginv: accuracy error: " << e.what();
    if (e.needed_radius()) std::cerr << " (needed radius " << *e.needed_radius() << ")";
    std::cerr << "\n";
    return kNumerical;
  } catch (const VanishingError& e) {
    std::cerr << "deginv: vanishing: " << e.what() << "\n";
    return kNumerical;
  } catch (const FitError& e) {
    std::cerr << "deginv: fit error: " << e.what() << "\n";
    return kFit;
  } catch (const std::exception& e) {
    std::cerr << "deginv: numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}
