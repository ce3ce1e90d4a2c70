// Copyright 2026 The ADLA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adla/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "adla/assess.hpp"
#include "adla/error.hpp"
#include "adla/report.hpp"
#include "adla/simulate.hpp"
#include "adla/stats.hpp"
#include "adla/threshold.hpp"
#include "adla/trace_io.hpp"

namespace adla {
namespace {

struct UsageError : Error {
  using Error::Error;
};

// Inputs that parse but cannot be used together.
struct InputMismatch : Error {
  using Error::Error;
};

struct SimulateArgs {
  std::string scenario;
  std::optional<std::size_t> traces;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise_sigma;
  std::optional<std::size_t> jitter_bound;
  std::optional<double> input_a;
  std::optional<double> input_b;
  std::string dtype = "real64";
  std::string out_a;
  std::string out_b;
  bool list = false;
};

struct ThresholdArgs {
  double alpha = kCanonicalAlpha;
  std::string method = "pearson_fit";
  std::optional<std::size_t> mc_draws;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
};

struct AssessArgs {
  std::string set_a;
  std::string set_b;
  std::optional<std::size_t> traces;
  double alpha = kCanonicalAlpha;
  std::string method = "pearson_fit";
  std::size_t mc_draws = 1000000;
  std::uint64_t seed = 1;
  std::string csv;
  std::string json;
  std::string svg;
  std::string curve;
  std::size_t curve_step = 0;
  std::optional<std::size_t> per_sample_cap;
  bool fail_on_leak = false;
  std::string leak_test = "any";
};

struct QqArgs {
  std::string set;
  std::size_t sample_index = 0;
  std::optional<std::size_t> traces;
  std::string out;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing", 0);
  return f;
}

// Writes to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  auto f = open_output(path);
  write(f);
  if (!f) throw IoError("failed writing " + path, 0);
}

ThresholdSpec make_thresholds(double alpha, const std::string& method,
                              std::optional<std::size_t> mc_draws,
                              std::uint64_t seed, Parallelism par) {
  if (method == "pearson_fit") {
    return derive_thresholds(alpha, mc_draws, seed, par);
  }
  if (method == "monte_carlo") {
    return derive_thresholds_monte_carlo(alpha, mc_draws.value_or(1000000),
                                         seed, kDefaultJMax, par);
  }
  if (method == "paper_constant") {
    if (!is_canonical_alpha(alpha)) {
      throw UsageError("--method paper_constant requires --alpha 3.4e-6");
    }
    return canonical_thresholds();
  }
  throw UsageError("unknown threshold method '" + method + "'");
}

int run_simulate(const SimulateArgs& a, Parallelism par, std::ostream& out,
                 std::ostream& err) {
  if (a.list) {
    Json catalog = Json::array();
    for (const auto& s : scenario_catalog()) {
      const auto& c = s.config;
      catalog.push_back({{"name", s.name},
                         {"description", s.description},
                         {"n_traces", c.n_traces},
                         {"n_samples", c.n_samples},
                         {"n_ops", c.n_ops},
                         {"op_stride", c.op_stride},
                         {"shuffle", c.shuffle},
                         {"jitter_bound", c.jitter_bound},
                         {"noise_sigma", c.noise_sigma},
                         {"weight", c.weight},
                         {"input_a", c.input_a},
                         {"input_b", c.input_b},
                         {"leak_model", to_string(c.leak_model)},
                         {"leak_source", to_string(c.leak_source)}});
    }
    out << catalog.dump(2) << '\n';
    return kExitOk;
  }
  if (a.scenario.empty() || a.out_a.empty() || a.out_b.empty()) {
    throw UsageError("simulate requires --scenario, --out-a and --out-b");
  }
  ScenarioConfig cfg;
  try {
    cfg = find_scenario(a.scenario);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  if (a.traces) cfg.n_traces = *a.traces;
  if (a.samples) cfg.n_samples = *a.samples;
  if (a.seed) cfg.seed = *a.seed;
  if (a.noise_sigma) cfg.noise_sigma = *a.noise_sigma;
  if (a.jitter_bound) cfg.jitter_bound = *a.jitter_bound;
  if (a.input_a) cfg.input_a = *a.input_a;
  if (a.input_b) cfg.input_b = *a.input_b;
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  const auto pair = generate_pair(cfg, par);
  const DType dtype = a.dtype == "real32" ? DType::real32 : DType::real64;
  auto recast = [&](const TraceSet& s) {
    if (dtype == s.dtype()) return s;
    std::vector<double> v(s.values().begin(), s.values().end());
    return TraceSet(s.n_traces(), s.n_samples(), std::move(v), dtype, s.label());
  };
  const std::size_t bytes_a = save_trace_set(recast(pair.set_a()), a.out_a);
  const std::size_t bytes_b = save_trace_set(recast(pair.set_b()), a.out_b);

  Json summary = {{"scenario", cfg.name},
                  {"n_traces", cfg.n_traces},
                  {"n_samples", cfg.n_samples},
                  {"seed", cfg.seed},
                  {"dtype", a.dtype},
                  {"out_a", a.out_a},
                  {"out_b", a.out_b},
                  {"bytes_a", bytes_a},
                  {"bytes_b", bytes_b}};
  out << summary.dump() << '\n';
  err << "simulated " << cfg.name << ": 2 x " << cfg.n_traces << " traces x "
      << cfg.n_samples << " samples\n";
  return kExitOk;
}

int run_threshold(const ThresholdArgs& a, Parallelism par, std::ostream& out) {
  const auto spec = make_thresholds(a.alpha, a.method, a.mc_draws, a.seed, par);
  emit(a.out, out, [&](std::ostream& os) {
    if (a.format == "text") {
      write_threshold_text(spec, os);
    } else {
      os << threshold_to_json(spec).dump(2) << '\n';
    }
  });
  return kExitOk;
}

int run_assess(const AssessArgs& a, Parallelism par, std::ostream& out,
               std::ostream& err) {
  // Thresholds first: argument errors surface before the traces are read.
  const auto thresholds =
      make_thresholds(a.alpha, a.method,
                      a.method == "monte_carlo" ? std::optional(a.mc_draws)
                                                : std::nullopt,
                      a.seed, par);
  const TracePair full = [&] {
    try {
      return TracePair(load_any(a.set_a), load_any(a.set_b));
    } catch (const DomainError& e) {
      throw InputMismatch(e.what());
    }
  }();
  const std::size_t n = a.traces.value_or(full.n_traces());
  if (n < 2 || n > full.n_traces()) {
    throw UsageError("--traces must lie in [2, " +
                     std::to_string(full.n_traces()) + "]");
  }
  const auto report = assess_prefix(full, n, thresholds, par);

  if (!a.csv.empty()) {
    auto f = open_output(a.csv);
    write_stats_csv(report, f);
  }
  if (!a.svg.empty()) {
    auto f = open_output(a.svg);
    write_stats_svg(report, f);
  }
  if (!a.curve.empty()) {
    const std::size_t step =
        a.curve_step ? a.curve_step : std::max<std::size_t>(2, n / 10);
    const auto grid = linear_grid(step, n);
    const auto curve = detection_curve(full, thresholds, grid, par);
    auto f = open_output(a.curve);
    write_curve_csv(curve, f);
  }
  emit(a.json, out, [&](std::ostream& os) {
    os << report_to_json(report, a.per_sample_cap).dump(2) << '\n';
  });

  err << "assessed " << report.n_samples << " samples with n = " << n
      << ": max |t|/tau_t = " << format_real(report.max_t_norm)
      << ", max A2/tau_A = " << format_real(report.max_a2_norm) << "; "
      << report.tvla_leaks.size() << " TVLA and " << report.adla_leaks.size()
      << " ADLA detections\n";

  if (a.fail_on_leak) {
    const bool tvla = !report.tvla_leaks.empty();
    const bool adla = !report.adla_leaks.empty();
    const bool leak = a.leak_test == "tvla"   ? tvla
                      : a.leak_test == "adla" ? adla
                                              : (tvla || adla);
    if (leak) return kExitLeak;
  }
  return kExitOk;
}

int run_qq(const QqArgs& a, std::ostream& out, std::ostream& err) {
  const TraceSet set = load_any(a.set);
  if (a.sample_index >= set.n_samples()) {
    throw UsageError("--sample-index " + std::to_string(a.sample_index) +
                     " outside [0, " + std::to_string(set.n_samples()) + ")");
  }
  const std::size_t n = a.traces.value_or(set.n_traces());
  if (n < 2 || n > set.n_traces()) {
    throw UsageError("--traces must lie in [2, " +
                     std::to_string(set.n_traces()) + "]");
  }
  std::vector<double> column(n);
  set.gather_column(a.sample_index, n, column);
  const auto points = qq_points(column);
  emit(a.out, out, [&](std::ostream& os) { write_qq_csv(points, os); });
  const auto fit = fit_qq_line(points);
  err << "qq sample " << a.sample_index << " (n = " << n
      << "): slope " << format_real(fit.slope) << ", intercept "
      << format_real(fit.intercept) << ", relative residual "
      << format_real(fit.relative_residual) << '\n';
  return kExitOk;
}

void add_threads(CLI::App* app, unsigned& threads) {
  app->add_option("--threads", threads,
                  "Worker threads (0 = ADLA_THREADS or all cores); results "
                  "do not depend on it")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"adla: TVLA and Anderson-Darling leakage assessment"};
  app.name("adla");
  app.require_subcommand(1);
  app.set_version_flag("--version", "adla 1.0.0");

  unsigned threads = 0;

  SimulateArgs sim;
  auto* simulate =
      app.add_subcommand("simulate", "Generate a synthetic fixed-vs-fixed trace pair");
  simulate->add_option("--scenario", sim.scenario, "Preset name (see --list)");
  simulate->add_flag("--list", sim.list, "Print the scenario catalog as JSON");
  simulate->add_option("--traces", sim.traces, "Traces per condition")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--samples", sim.samples, "Samples per trace")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--noise-sigma", sim.noise_sigma,
                       "Override the Gaussian noise level");
  simulate->add_option("--jitter-bound", sim.jitter_bound,
                       "Override the maximum per-operation delay");
  simulate->add_option("--input-a", sim.input_a, "Override input of condition A");
  simulate->add_option("--input-b", sim.input_b, "Override input of condition B");
  simulate->add_option("--dtype", sim.dtype, "Stored sample type")
      ->check(CLI::IsMember({"real32", "real64"}))
      ->capture_default_str();
  simulate->add_option("--out-a", sim.out_a, "Output ADLA1 file for condition A");
  simulate->add_option("--out-b", sim.out_b, "Output ADLA1 file for condition B");
  add_threads(simulate, threads);

  ThresholdArgs thr;
  auto* threshold =
      app.add_subcommand("threshold", "Derive TVLA and ADLA detection thresholds");
  threshold->add_option("--alpha", thr.alpha, "Significance level in (0, 0.5)")
      ->capture_default_str();
  threshold->add_option("--method", thr.method, "How tau_A is obtained")
      ->check(CLI::IsMember({"pearson_fit", "monte_carlo", "paper_constant"}))
      ->capture_default_str();
  threshold->add_option("--mc-check", thr.mc_draws,
                        "Monte Carlo draws for the cross-check (alpha >= 1e-4)")
      ->check(CLI::PositiveNumber);
  threshold->add_option("--seed", thr.seed, "Monte Carlo seed")
      ->capture_default_str();
  threshold->add_option("--format", thr.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  threshold->add_option("--out", thr.out, "Write to a file instead of stdout");
  add_threads(threshold, threads);

  AssessArgs as;
  auto* assess = app.add_subcommand(
      "assess", "Run TVLA and ADLA at every time sample of a trace pair");
  assess->add_option("--set-a", as.set_a, "Condition A traces (.adla or .csv)")
      ->required();
  assess->add_option("--set-b", as.set_b, "Condition B traces (.adla or .csv)")
      ->required();
  assess->add_option("--traces", as.traces, "Use only the first N traces")
      ->check(CLI::PositiveNumber);
  assess->add_option("--alpha", as.alpha, "Significance level in (0, 0.5)")
      ->capture_default_str();
  assess->add_option("--method", as.method, "How tau_A is obtained")
      ->check(CLI::IsMember({"pearson_fit", "monte_carlo", "paper_constant"}))
      ->capture_default_str();
  assess->add_option("--mc-draws", as.mc_draws,
                     "Draws for --method monte_carlo")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  assess->add_option("--seed", as.seed, "Monte Carlo seed")->capture_default_str();
  assess->add_option("--csv", as.csv, "Per-sample statistics CSV");
  assess->add_option("--json", as.json, "Report JSON (default: stdout)");
  assess->add_option("--svg", as.svg, "Two-panel SVG of the normalised statistics");
  assess->add_option("--curve", as.curve, "Detection curve CSV over trace prefixes");
  assess->add_option("--curve-step", as.curve_step,
                     "Prefix step for --curve (default n/10)");
  assess->add_option("--max-per-sample", as.per_sample_cap,
                     "Elide per_sample from the JSON above this many samples");
  assess->add_flag("--fail-on-leak", as.fail_on_leak,
                   "Exit with status 3 when leakage is detected");
  assess->add_option("--leak-test", as.leak_test,
                     "Which test --fail-on-leak consults")
      ->check(CLI::IsMember({"any", "tvla", "adla"}))
      ->capture_default_str();
  add_threads(assess, threads);

  QqArgs qq;
  auto* qqcmd = app.add_subcommand(
      "qq", "Normal Q-Q points for one time sample of a trace set");
  qqcmd->add_option("--set", qq.set, "Trace set (.adla or .csv)")->required();
  qqcmd->add_option("--sample-index", qq.sample_index, "Time sample (0-based)")
      ->required();
  qqcmd->add_option("--traces", qq.traces, "Use only the first N traces")
      ->check(CLI::PositiveNumber);
  qqcmd->add_option("--out", qq.out, "Output CSV (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Parallelism par{threads};
  try {
    if (*simulate) return run_simulate(sim, par, out, err);
    if (*threshold) return run_threshold(thr, par, out);
    if (*assess) return run_assess(as, par, out, err);
    if (*qqcmd) return run_qq(qq, out, err);
  } catch (const UsageError& e) {
    err << "adla: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "adla: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "adla: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "adla: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace adla
