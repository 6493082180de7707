// gibbs: equilibrium measures of iterated function systems from the shell.
//
//   gibbs pressure  CONFIG [--N n]
//   gibbs integrate CONFIG [--psi EXPR | --psi fourier:XI] [--conformal] [--sweep-N a:b:step]
//   gibbs fourier   CONFIG --method direct|mc|oracle|ulam --xi a:b:count [--reference m]
//   gibbs sample    CONFIG [--psi EXPR] [--T 1e6] [--T0 1e4] [--replicas 8] [--seed 0]
//   gibbs diagnose  CONFIG
//   gibbs ulam      CONFIG [--M 200] [--psi EXPR]
//
// Exit codes: 0 success, 2 config/parse error, 3 numerical failure.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cache.hpp"
#include "gibbs/config.hpp"
#include "gibbs/error.hpp"
#include "gibbs/expr.hpp"
#include "gibbs/fourier.hpp"
#include "gibbs/measure.hpp"
#include "gibbs/parallel.hpp"
#include "gibbs/sampler.hpp"
#include "gibbs/system.hpp"
#include "gibbs/ulam.hpp"
#include "output.hpp"

namespace {

using namespace gibbs;
using cli::JsonObject;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr std::size_t kMaxOrbitRows = 1'000'000;

struct Common {
  std::string config;
  std::size_t N = 0;
  unsigned threads = 0;
  bool no_cache = false;
  std::string cache_dir;
};

struct Sampling {
  std::string T, T0, seed;
  unsigned replicas = 0;
};

// Test function: an expression in x, or exp(-i xi x) for "fourier:<xi>".
struct Psi {
  std::optional<expr::Expr> e;
  double xi = 0.0;

  bool complex() const { return !e.has_value(); }
  double real(double x) const { return e->eval(x); }
  std::complex<double> operator()(double x) const { return unit_phasor(xi, x); }
};

Psi parse_psi(const std::string& text) {
  constexpr std::string_view kFourier = "fourier:";
  try {
    if (text.starts_with(kFourier)) {
      const auto e = expr::parse(std::string_view(text).substr(kFourier.size()));
      if (!e.is_constant()) throw ConfigError("fourier frequency must be a constant");
      return {std::nullopt, e.eval(0.0)};
    }
    return {expr::parse(text), 0.0};
  } catch (const ParseError& err) {
    throw ConfigError(fmt::format("bad psi '{}': {}", text, err.what()));
  }
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("config", c.config, "System config file (JSON)")->required();
  sub->add_option("--N", c.N, "Chebyshev grid size (default from config)");
  sub->add_option("--threads", c.threads, "Cap on worker threads");
  sub->add_flag("--no-cache", c.no_cache, "Do not read or write cached spectral data");
  sub->add_option("--cache-dir", c.cache_dir, "Spectral cache directory");
}

void add_sampling(CLI::App* sub, Sampling& s) {
  sub->add_option("--T", s.T, "Retained chain steps per replica, e.g. 1e6");
  sub->add_option("--T0", s.T0, "Burn-in steps");
  sub->add_option("--replicas", s.replicas, "Independent replicas");
  sub->add_option("--seed", s.seed, "Base seed");
}

struct Context {
  SystemConfig config;
  std::size_t N;
  cli::SpectralCache cache;

  SpectralData spectral() const { return cache.get(config, N); }
  SpectralData spectral(std::size_t n) const { return cache.get(config, n); }
};

Context open(const Common& c) {
  if (c.threads > 0) set_max_threads(c.threads);
  SystemConfig config = load_config(c.config);
  const std::size_t N = c.N > 0 ? c.N : config.defaults.N;
  std::optional<std::filesystem::path> dir;
  if (!c.no_cache) {
    dir = c.cache_dir.empty() ? cli::default_cache_dir()
                              : std::filesystem::path(c.cache_dir);
  }
  return {std::move(config), N, cli::SpectralCache(dir)};
}

SamplerConfig sampler_config(const Context& ctx, const Sampling& s) {
  const RunDefaults& d = ctx.config.defaults;
  SamplerConfig cfg;
  cfg.T = s.T.empty() ? d.T : cli::parse_count(s.T, "T");
  cfg.T0 = s.T0.empty() ? d.T0 : cli::parse_count(s.T0, "T0");
  cfg.seed = s.seed.empty() ? d.seed : cli::parse_count(s.seed, "seed");
  cfg.replicas = s.replicas > 0 ? s.replicas : d.replicas;
  cfg.N = ctx.N;
  return cfg;
}

JsonObject summary_json(const SampleRun& run) {
  return JsonObject()
      .number("estimate", run.summary.mean)
      .number("std_error", run.summary.std_error)
      .number("ci_low", run.summary.ci_low)
      .number("ci_high", run.summary.ci_high);
}

// pressure -----------------------------------------------------------------

int cmd_pressure(const Common& common) {
  const Context ctx = open(common);
  const SpectralData data = ctx.spectral();
  const ContractionReport diag = diagnose_contraction(ctx.config.system);
  const double residuals[] = {data.right_residual, data.left_residual};
  std::cout << JsonObject()
                   .number("pressure", data.pressure)
                   .integer("N", static_cast<std::int64_t>(data.size()))
                   .number("eigenvalue", data.eigenvalue)
                   .array("residuals", residuals)
                   .integer("iterations", data.iterations)
                   .boolean("certified_contracting", diag.certified)
                   .string("system", data.system_name)
                   .str()
            << '\n';
  return 0;
}

// integrate ----------------------------------------------------------------

struct IntegrateOptions {
  std::string psi = "x";
  bool conformal = false;
  std::string weights = "nu";
  std::string sweep;
};

double integrate_real(const SpectralData& data, const Psi& psi,
                      const IntegrateOptions& o, ConformalWeights w) {
  auto f = [&](double x) { return psi.real(x); };
  return o.conformal ? integrate_conformal(data, f, w).value : integrate(data, f).value;
}

int cmd_integrate(const Common& common, const IntegrateOptions& o) {
  const Context ctx = open(common);
  const Psi psi = parse_psi(o.psi);
  if (o.weights != "nu" && o.weights != "h") {
    throw ConfigError(fmt::format("--weights must be nu or h, got '{}'", o.weights));
  }
  const auto w = o.weights == "nu" ? ConformalWeights::kLeftEigenvector
                                   : ConformalWeights::kRightEigenvector;

  if (!o.sweep.empty()) {
    if (psi.complex()) throw ConfigError("--sweep-N needs a real psi");
    const auto t = cli::parse_triple(o.sweep, "--sweep-N");
    if (!(t.first >= 1 && t.third >= 1 && t.first <= t.second) ||
        t.first != std::floor(t.first) || t.second != std::floor(t.second) ||
        t.third != std::floor(t.third)) {
      throw ConfigError("--sweep-N needs integers 1 <= start <= end and step >= 1");
    }
    std::vector<std::size_t> Ns;
    for (double n = t.first; n <= t.second; n += t.third) {
      Ns.push_back(static_cast<std::size_t>(n));
    }
    std::vector<double> values;
    for (std::size_t n : Ns) values.push_back(integrate_real(ctx.spectral(n), psi, o, w));
    std::cout << "# schema=1\nN,value,delta_vs_final\n";
    for (std::size_t i = 0; i < Ns.size(); ++i) {
      std::cout << fmt::format("{},{},{}\n", Ns[i], cli::format_double(values[i]),
                               cli::format_double(std::abs(values[i] - values.back())));
    }
    return 0;
  }

  const SpectralData data = ctx.spectral();
  JsonObject out;
  if (psi.complex()) {
    out.complex("value", o.conformal ? integrate_conformal(data, psi, w).value
                                     : integrate(data, psi).value);
  } else {
    out.number("value", integrate_real(data, psi, o, w));
  }
  std::cout << out.integer("N", static_cast<std::int64_t>(data.size()))
                   .string("kind", o.conformal ? "conformal" : "equilibrium")
                   .string("system", data.system_name)
                   .str()
            << '\n';
  return 0;
}

// fourier ------------------------------------------------------------------

struct FourierOptions {
  std::string method = "direct";
  std::string xi = "0:100:101";
  std::string reference;
  std::size_t M = 0;
  std::size_t quad = 0;
  std::string output;
  Sampling sampling;
};

int cmd_fourier(const Common& common, const FourierOptions& o) {
  const Context ctx = open(common);
  const FourierMethod method = parse_method(o.method);
  std::optional<FourierMethod> reference;
  if (!o.reference.empty()) reference = parse_method(o.reference);

  const auto t = cli::parse_triple(o.xi, "--xi");
  if (!(t.third >= 1) || t.third != std::floor(t.third)) {
    throw ConfigError("--xi count must be a positive integer");
  }
  std::vector<double> xis;
  if (t.third == 1) {
    if (t.first != t.second) throw ConfigError("--xi with count 1 needs start == end");
    xis = {t.first};
  } else {
    xis = frequency_grid(t.first, t.second, static_cast<std::size_t>(t.third));
  }

  auto uses = [&](FourierMethod m) { return method == m || reference == m; };
  FourierInputs inputs;
  inputs.system = &ctx.config.system;
  inputs.cantor_ratio = ctx.config.cantor_ratio;
  std::optional<SpectralData> data;
  if (uses(FourierMethod::kDirect) || uses(FourierMethod::kMonteCarlo)) {
    data = ctx.spectral();
    inputs.spectral = &*data;
  }
  std::optional<UlamOperator> ulam;
  if (uses(FourierMethod::kUlam)) {
    const auto& d = ctx.config.defaults;
    ulam = ulam_assemble(ctx.config.system, o.M > 0 ? o.M : d.M,
                         o.quad > 0 ? o.quad : d.quad_points);
    inputs.ulam = &*ulam;
  }
  inputs.sampler = sampler_config(ctx, o.sampling);

  const FourierSweep result = evaluate(method, inputs, std::move(xis), reference);
  if (data && uses(FourierMethod::kDirect)) {
    const double c = diagnose_contraction(ctx.config.system).c_est;
    for (double xi : result.xis) {
      if (c > 0 && std::abs(xi) > static_cast<double>(data->size()) * c) {
        std::cerr << fmt::format(
            "warning: |xi| up to {} exceeds N c_est = {}; direct values are "
            "not resolved\n",
            xi, static_cast<double>(data->size()) * c);
        break;
      }
    }
  }
  if (o.output.empty()) {
    write_csv(result, std::cout);
  } else {
    std::ofstream out(o.output);
    if (!out) throw ConfigError(fmt::format("cannot write '{}'", o.output));
    write_csv(result, out);
  }
  return 0;
}

// sample -------------------------------------------------------------------

struct SampleOptions {
  std::string psi = "x";
  std::string orbit;
  std::size_t orbit_rows = 0;
  bool conformal = false;
  bool remainder = false;
  bool unnormalised = false;
  Sampling sampling;
};

int cmd_sample(const Common& common, const SampleOptions& o) {
  const Context ctx = open(common);
  const Psi psi = parse_psi(o.psi);
  SamplerConfig cfg = sampler_config(ctx, o.sampling);
  cfg.remainder_denominator = o.remainder;
  cfg.self_normalised_conformal = !o.unnormalised;
  const SpectralData data = ctx.spectral();
  const IFSSystem& system = ctx.config.system;

  auto run = [&](const std::function<double(double)>& f) {
    return o.conformal ? run_chain_conformal(system, data, cfg, f)
                       : run_chain(system, data, cfg, f);
  };
  JsonObject out;
  if (psi.complex()) {
    const SampleRun re = run([&](double x) { return psi(x).real(); });
    const SampleRun im = run([&](double x) { return psi(x).imag(); });
    out.object("re", summary_json(re)).object("im", summary_json(im));
  } else {
    const SampleRun r = run([&](double x) { return psi.real(x); });
    out = summary_json(r);
  }
  out.integer("replicas", cfg.replicas)
      .integer("T", static_cast<std::int64_t>(cfg.T))
      .integer("T0", static_cast<std::int64_t>(cfg.T0))
      .integer("seed", static_cast<std::int64_t>(cfg.seed))
      .integer("N", static_cast<std::int64_t>(data.size()))
      .string("kind", o.conformal ? "conformal" : "equilibrium")
      .string("system", data.system_name);

  if (!o.orbit.empty()) {
    std::size_t rows = o.orbit_rows > 0 ? o.orbit_rows : cfg.T;
    rows = std::min({rows, static_cast<std::size_t>(cfg.T), kMaxOrbitRows});
    const auto orbit = sample_orbit(system, data, cfg, rows);
    std::ofstream f(o.orbit);
    if (!f) throw ConfigError(fmt::format("cannot write '{}'", o.orbit));
    f << "# schema=1\nt,x_t\n";
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      f << i << ',' << cli::format_double(orbit[i]) << '\n';
    }
  }
  std::cout << out.str() << '\n';
  return 0;
}

// diagnose -----------------------------------------------------------------

int cmd_diagnose(const Common& common, int grid) {
  if (common.threads > 0) set_max_threads(common.threads);
  const SystemConfig config = load_config(common.config);
  const ContractionReport r = diagnose_contraction(config.system, grid);
  std::vector<JsonObject> branches;
  for (std::size_t i = 0; i < config.system.size(); ++i) {
    branches.push_back(JsonObject()
                           .string("label", config.system.branches()[i].label)
                           .number("sup", r.sup[i])
                           .boolean("evaluable", r.evaluable[i]));
  }
  std::cout << JsonObject()
                   .boolean("certified", r.certified)
                   .number("c_est", r.c_est)
                   .integer("grid", grid)
                   .objects("branches", branches)
                   .string("system", config.system.name())
                   .str()
            << '\n';
  return 0;
}

// ulam ---------------------------------------------------------------------

struct UlamOptions {
  std::string psi = "x";
  std::size_t M = 0;
  std::size_t quad = 0;
};

int cmd_ulam(const Common& common, const UlamOptions& o) {
  const Context ctx = open(common);
  const Psi psi = parse_psi(o.psi);
  const auto& d = ctx.config.defaults;
  const UlamOperator op = ulam_assemble(ctx.config.system, o.M > 0 ? o.M : d.M,
                                        o.quad > 0 ? o.quad : d.quad_points);
  JsonObject out;
  if (psi.complex()) {
    out.complex("value", ulam_fourier(op, psi.xi));
  } else {
    out.number("value", ulam_integrate(op, [&](double x) { return psi.real(x); }));
  }
  std::cout << out.integer("M", static_cast<std::int64_t>(op.M))
                   .number("eigenvalue", op.eigenvalue)
                   .string("system", ctx.config.system.name())
                   .str()
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium measures of iterated function systems"};
  app.require_subcommand(1);

  Common common;
  auto* pressure = app.add_subcommand("pressure", "Leading eigenvalue and pressure");
  add_common(pressure, common);

  IntegrateOptions integ;
  auto* integrate_cmd = app.add_subcommand("integrate", "Integral of psi against the measure");
  add_common(integrate_cmd, common);
  integrate_cmd->add_option("--psi", integ.psi, "Expression in x or fourier:<xi>");
  integrate_cmd->add_flag("--conformal", integ.conformal, "Integrate against the conformal measure");
  integrate_cmd->add_option("--weights", integ.weights, "Conformal node weights: nu (default) or h");
  integrate_cmd->add_option("--sweep-N", integ.sweep, "Convergence sweep start:end:step (CSV)");

  FourierOptions four;
  auto* fourier_cmd = app.add_subcommand("fourier", "Fourier transform sweep (CSV)");
  add_common(fourier_cmd, common);
  fourier_cmd->add_option("--method", four.method, "direct, mc, oracle or ulam");
  fourier_cmd->add_option("--xi", four.xi, "Frequencies start:end:count");
  fourier_cmd->add_option("--reference", four.reference, "Reference method for error columns");
  fourier_cmd->add_option("--M", four.M, "Ulam cells");
  fourier_cmd->add_option("--quad", four.quad, "Ulam quadrature points per cell");
  fourier_cmd->add_option("--output,-o", four.output, "Write CSV here instead of stdout");
  add_sampling(fourier_cmd, four.sampling);

  SampleOptions samp;
  auto* sample_cmd = app.add_subcommand("sample", "Markov chain estimate of the integral of psi");
  add_common(sample_cmd, common);
  add_sampling(sample_cmd, samp.sampling);
  sample_cmd->add_option("--psi", samp.psi, "Expression in x or fourier:<xi>");
  sample_cmd->add_option("--orbit", samp.orbit, "Write replica 0's orbit as CSV");
  sample_cmd->add_option("--orbit-rows", samp.orbit_rows, "Orbit rows (at most 1e6)");
  sample_cmd->add_flag("--conformal", samp.conformal, "Reweight by 1/h for the conformal measure");
  sample_cmd->add_flag("--remainder", samp.remainder, "Remainder-branch transition probabilities");
  sample_cmd->add_flag("--unnormalised", samp.unnormalised, "Conformal mean without self-normalisation");

  int grid = 2000;
  auto* diagnose_cmd = app.add_subcommand("diagnose", "Contraction diagnostic");
  diagnose_cmd->add_option("config", common.config, "System config file (JSON)")->required();
  diagnose_cmd->add_option("--grid", grid, "Theta grid points");
  diagnose_cmd->add_option("--threads", common.threads, "Cap on worker threads");

  UlamOptions ul;
  auto* ulam_cmd = app.add_subcommand("ulam", "Ulam baseline estimate");
  add_common(ulam_cmd, common);
  ulam_cmd->add_option("--psi", ul.psi, "Expression in x or fourier:<xi>");
  ulam_cmd->add_option("--M", ul.M, "Cells");
  ulam_cmd->add_option("--quad", ul.quad, "Quadrature points per cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*pressure) return cmd_pressure(common);
    if (*integrate_cmd) return cmd_integrate(common, integ);
    if (*fourier_cmd) return cmd_fourier(common, four);
    if (*sample_cmd) return cmd_sample(common, samp);
    if (*diagnose_cmd) return cmd_diagnose(common, grid);
    if (*ulam_cmd) return cmd_ulam(common, ul);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
