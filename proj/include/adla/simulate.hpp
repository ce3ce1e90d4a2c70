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

#ifndef ADLA_SIMULATE_HPP
#define ADLA_SIMULATE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "adla/parallel.hpp"
#include "adla/trace_io.hpp"

namespace adla {

enum class LeakModel { hamming_weight, value, variance_only };

// What the leak model observes at each execution step of the
// multiply-accumulate: the product just computed, or the running sum.
enum class LeakSource { product, accumulator };

const char* to_string(LeakModel model);
const char* to_string(LeakSource source);
LeakModel parse_leak_model(const std::string& text);
LeakSource parse_leak_source(const std::string& text);

enum class Condition { a, b };

// Synthetic fixed-vs-fixed campaign over one neuron's multiply-accumulate.
// Operation 0 multiplies `weight` by the controlled input; operations
// 1..n_ops-1 use operands drawn once from `context_seed` and shared by both
// conditions. Operation slots start at `guard` and are `op_stride` samples
// apart; jitter delays each operation by 0..jitter_bound samples.
struct ScenarioConfig {
  std::string name = "custom";
  std::size_t n_traces = 1000;
  std::size_t n_samples = 128;
  double weight = 0.9;
  double input_a = 0.2;
  double input_b = 0.95;
  std::size_t n_ops = 16;
  std::size_t op_stride = 4;
  std::size_t guard = 8;
  bool shuffle = false;
  std::size_t jitter_bound = 0;
  double noise_sigma = 0.5;
  double baseline = 0.0;
  double amplitude = 1.0;
  LeakModel leak_model = LeakModel::hamming_weight;
  LeakSource leak_source = LeakSource::product;
  // variance_only: condition A emits N(0, s^2), condition B the equal-mean
  // mixture 1/2 N(-d, s^2) + 1/2 N(+d, s^2), with s = mixture_sigma and
  // d = mixture_offset.
  double mixture_sigma = 1.0;
  double mixture_offset = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t context_seed = 12345;

  // Smallest n_samples that keeps every jittered slot inside the trace.
  std::size_t min_samples() const;
};

// Throws ConfigError on any violated invariant.
void validate(const ScenarioConfig& config);

// Noise-free content of one trace: sample positions and the leak added there.
struct TraceLayout {
  std::vector<std::size_t> order;      // op executed at step s
  std::vector<std::size_t> positions;  // sample index of step s
  std::vector<double> leaks;           // leak value of step s
};

// Signed byte of the Q1.7 fixed-point encoding, wrapping modulo 256.
std::uint8_t quantize_q7(double value);

// Products of all operations for a given controlled input.
std::vector<double> operation_products(const ScenarioConfig& config,
                                       double input);

// Layout of trace `trace` in substream `stream` when leaking as `which`.
// The trace's random stream continues with the noise draws afterwards.
TraceLayout trace_layout(const ScenarioConfig& config, Condition which,
                         std::uint64_t stream, std::size_t trace);

// One trace set emitting `which`'s leakage, randomised by `stream`.
// Using the same `which` with two streams gives an H0 pair.
TraceSet generate_set(const ScenarioConfig& config, Condition which,
                      std::uint64_t stream, Parallelism par = {});

// Condition A on stream 0, condition B on stream 1. Deterministic in
// config.seed and independent of the thread count.
TracePair generate_pair(const ScenarioConfig& config, Parallelism par = {});

struct Scenario {
  std::string name;
  std::string description;
  ScenarioConfig config;
};

std::vector<Scenario> scenario_catalog();
// Throws ConfigError for an unknown name.
ScenarioConfig find_scenario(const std::string& name);

}  // namespace adla

#endif  // ADLA_SIMULATE_HPP
