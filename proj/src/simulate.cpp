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

#include "adla/simulate.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <utility>

#include <boost/random/normal_distribution.hpp>

#include "adla/error.hpp"
#include "adla/rng.hpp"

namespace adla {
namespace {

std::uint64_t stream_key(std::uint64_t stream, std::size_t trace) {
  return (stream << 40) ^ static_cast<std::uint64_t>(trace);
}

double leak_of(const ScenarioConfig& cfg, double x) {
  const std::uint8_t code = quantize_q7(x);
  if (cfg.leak_model == LeakModel::value) {
    return cfg.amplitude * static_cast<double>(static_cast<std::int8_t>(code)) /
           16.0;
  }
  return cfg.amplitude * static_cast<double>(std::popcount(code));
}

TraceLayout draw_layout(const ScenarioConfig& cfg, Condition which,
                        const std::vector<double>& products, Rng& rng) {
  const std::size_t k = cfg.n_ops;
  TraceLayout layout;
  layout.order.resize(k);
  for (std::size_t s = 0; s < k; ++s) layout.order[s] = s;
  if (cfg.shuffle) {
    for (std::size_t s = k - 1; s > 0; --s) {
      std::swap(layout.order[s], layout.order[rng.below_or_equal(s)]);
    }
  }
  layout.positions.resize(k);
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t delay =
        cfg.jitter_bound ? rng.below_or_equal(cfg.jitter_bound) : 0;
    layout.positions[s] = cfg.guard + s * cfg.op_stride + delay;
  }

  layout.leaks.resize(k);
  if (cfg.leak_model == LeakModel::variance_only) {
    boost::random::normal_distribution<double> normal(0.0, cfg.mixture_sigma);
    for (std::size_t s = 0; s < k; ++s) {
      double v = normal(rng);
      if (which == Condition::b) {
        v += (rng() >> 63) ? cfg.mixture_offset : -cfg.mixture_offset;
      }
      layout.leaks[s] = cfg.amplitude * v;
    }
    return layout;
  }
  double acc = 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    const double p = products[layout.order[s]];
    acc += p;
    layout.leaks[s] =
        leak_of(cfg, cfg.leak_source == LeakSource::accumulator ? acc : p);
  }
  return layout;
}

double input_of(const ScenarioConfig& cfg, Condition which) {
  return which == Condition::a ? cfg.input_a : cfg.input_b;
}

}  // namespace

const char* to_string(LeakModel model) {
  switch (model) {
    case LeakModel::hamming_weight: return "hamming_weight";
    case LeakModel::value: return "value";
    case LeakModel::variance_only: return "variance_only";
  }
  return "?";
}

const char* to_string(LeakSource source) {
  return source == LeakSource::product ? "product" : "accumulator";
}

LeakModel parse_leak_model(const std::string& text) {
  if (text == "hamming_weight") return LeakModel::hamming_weight;
  if (text == "value") return LeakModel::value;
  if (text == "variance_only") return LeakModel::variance_only;
  throw ConfigError("unknown leak model '" + text + "'");
}

LeakSource parse_leak_source(const std::string& text) {
  if (text == "product") return LeakSource::product;
  if (text == "accumulator") return LeakSource::accumulator;
  throw ConfigError("unknown leak source '" + text + "'");
}

std::size_t ScenarioConfig::min_samples() const {
  return 2 * guard + (n_ops ? n_ops - 1 : 0) * op_stride + jitter_bound + 1;
}

void validate(const ScenarioConfig& c) {
  auto fail = [&](const std::string& what) {
    throw ConfigError("scenario '" + c.name + "': " + what);
  };
  if (c.n_traces < 2) fail("n_traces must be >= 2");
  if (c.n_ops < 1) fail("n_ops must be >= 1");
  if (c.op_stride < 1) fail("op_stride must be >= 1");
  if (!(c.input_a >= 0.0 && c.input_a <= 1.0) ||
      !(c.input_b >= 0.0 && c.input_b <= 1.0)) {
    fail("inputs must lie in [0, 1]");
  }
  if (c.input_a == c.input_b) fail("input_a and input_b must differ");
  if (!std::isfinite(c.weight)) fail("weight must be finite");
  if (!(c.noise_sigma >= 0.0) || !std::isfinite(c.noise_sigma)) {
    fail("noise_sigma must be finite and >= 0");
  }
  if (!(c.mixture_sigma >= 0.0) || !std::isfinite(c.mixture_sigma) ||
      !std::isfinite(c.mixture_offset)) {
    fail("mixture parameters must be finite, mixture_sigma >= 0");
  }
  if (!std::isfinite(c.baseline) || !std::isfinite(c.amplitude)) {
    fail("baseline and amplitude must be finite");
  }
  if (c.jitter_bound >= (std::size_t{1} << 32)) fail("jitter_bound too large");
  if (c.n_samples < c.min_samples()) {
    std::ostringstream msg;
    msg << "n_samples = " << c.n_samples << " is below the " << c.min_samples()
        << " samples needed for " << c.n_ops << " ops, stride " << c.op_stride
        << ", jitter " << c.jitter_bound << " and guard " << c.guard;
    fail(msg.str());
  }
}

std::uint8_t quantize_q7(double value) {
  const auto code = static_cast<std::int64_t>(std::llround(value * 128.0));
  return static_cast<std::uint8_t>(static_cast<std::uint64_t>(code) & 0xFFu);
}

std::vector<double> operation_products(const ScenarioConfig& c,
                                       double input) {
  std::vector<double> products(c.n_ops);
  products[0] = c.weight * input;
  Rng context(c.context_seed, 0);
  for (std::size_t k = 1; k < c.n_ops; ++k) {
    const double w = 2.0 * context.uniform() - 1.0;
    const double x = context.uniform();
    products[k] = w * x;
  }
  return products;
}

TraceLayout trace_layout(const ScenarioConfig& config, Condition which,
                         std::uint64_t stream, std::size_t trace) {
  Rng rng(config.seed, stream_key(stream, trace));
  return draw_layout(config, which,
                     operation_products(config, input_of(config, which)), rng);
}

TraceSet generate_set(const ScenarioConfig& config, Condition which,
                      std::uint64_t stream, Parallelism par) {
  const auto products = operation_products(config, input_of(config, which));
  const std::size_t width = config.n_samples;
  std::vector<double> samples(config.n_traces * width);
  parallel_for(config.n_traces, 64, par,
               [&](std::size_t begin, std::size_t end, unsigned) {
                 boost::random::normal_distribution<double> noise(
                     0.0, config.noise_sigma > 0.0 ? config.noise_sigma : 1.0);
                 for (std::size_t i = begin; i < end; ++i) {
                   Rng rng(config.seed, stream_key(stream, i));
                   const auto layout = draw_layout(config, which, products, rng);
                   double* row = samples.data() + i * width;
                   for (std::size_t j = 0; j < width; ++j) {
                     row[j] = config.baseline;
                     if (config.noise_sigma > 0.0) row[j] += noise(rng);
                   }
                   for (std::size_t s = 0; s < layout.positions.size(); ++s) {
                     row[layout.positions[s]] += layout.leaks[s];
                   }
                 }
               });
  std::ostringstream label;
  label << config.name << ':' << (which == Condition::a ? 'A' : 'B')
        << " input=" << input_of(config, which);
  return TraceSet(config.n_traces, width, std::move(samples), DType::real64,
                  label.str());
}

TracePair generate_pair(const ScenarioConfig& config, Parallelism par) {
  validate(config);
  return TracePair(generate_set(config, Condition::a, 0, par),
                   generate_set(config, Condition::b, 1, par));
}

std::vector<Scenario> scenario_catalog() {
  std::vector<Scenario> out;

  ScenarioConfig base;
  base.n_traces = 1000;
  base.n_samples = 96;
  base.n_ops = 16;
  base.op_stride = 4;
  base.guard = 8;
  base.weight = 0.9;
  // Both inputs leave the final accumulator with the same Hamming weight, so
  // the difference lives in the intermediate sums only.
  base.input_a = 0.2;
  base.input_b = 0.95;
  base.noise_sigma = 0.5;
  base.leak_model = LeakModel::hamming_weight;
  base.leak_source = LeakSource::accumulator;

  {
    ScenarioConfig c = base;
    c.name = "unprotected";
    c.noise_sigma = 1.0;
    c.leak_source = LeakSource::product;
    out.push_back({c.name,
                   "fixed execution order, no jitter; product leakage", c});
  }
  {
    ScenarioConfig c = base;
    c.name = "shuffled";
    c.shuffle = true;
    out.push_back({c.name, "random multiplication order", c});
  }
  {
    ScenarioConfig c = base;
    c.name = "jittered";
    c.jitter_bound = 2;
    out.push_back({c.name, "per-operation random delay of 0..2 samples", c});
  }
  {
    ScenarioConfig c = base;
    c.name = "shuffled_jittered";
    c.shuffle = true;
    c.jitter_bound = 1;
    out.push_back({c.name,
                   "random order plus random delay (protected setting)", c});
  }
  {
    ScenarioConfig c = base;
    c.name = "variance_only";
    c.leak_model = LeakModel::variance_only;
    c.noise_sigma = 1.0;
    c.mixture_sigma = 0.5;
    c.mixture_offset = 2.0;
    out.push_back(
        {c.name,
         "engineered stress case: equal means, different variances", c});
  }
  return out;
}

ScenarioConfig find_scenario(const std::string& name) {
  for (auto& s : scenario_catalog()) {
    if (s.name == name) return s.config;
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

}  // namespace adla
