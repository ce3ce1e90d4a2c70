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

#ifndef ADLA_ASSESS_HPP
#define ADLA_ASSESS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "adla/parallel.hpp"
#include "adla/threshold.hpp"
#include "adla/trace_io.hpp"

namespace adla {

struct SampleStatistics {
  std::size_t sample_index = 0;
  double t_abs = 0.0;
  double a2 = 0.0;
  double t_norm = 0.0;   // t_abs / tau_t
  double a2_norm = 0.0;  // a2 / tau_a
  bool tvla_detect = false;  // t_norm > 1
  bool adla_detect = false;  // a2_norm > 1
  bool degenerate = false;   // zero variance in both sets
  friend bool operator==(const SampleStatistics&,
                         const SampleStatistics&) = default;
};

// Campaign summary. Maxima and argmaxima are taken over non-degenerate
// samples only and are empty when every sample is degenerate.
struct AssessmentReport {
  ThresholdSpec thresholds;
  std::vector<SampleStatistics> per_sample;
  double max_t_norm = 0.0;
  std::optional<std::size_t> argmax_t_norm;
  double max_a2_norm = 0.0;
  std::optional<std::size_t> argmax_a2_norm;
  std::vector<std::size_t> tvla_leaks;
  std::vector<std::size_t> adla_leaks;
  std::vector<std::size_t> degenerate_samples;
  std::size_t n_traces_used = 0;
  std::size_t n_samples = 0;
};

// Welch's t and A^2 at every time sample of the pair. Output is independent
// of the thread count.
AssessmentReport assess_pair(const TracePair& pair,
                             const ThresholdSpec& thresholds,
                             Parallelism par = {});

// As assess_pair, restricted to the first n_traces traces of each set.
AssessmentReport assess_prefix(const TracePair& pair, std::size_t n_traces,
                               const ThresholdSpec& thresholds,
                               Parallelism par = {});

struct CurvePoint {
  std::size_t n = 0;
  double max_t_norm = 0.0;
  double max_a2_norm = 0.0;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// Maxima of the normalised statistics on trace-order prefixes. `grid` must
// be strictly increasing with 2 <= n <= pair.n_traces().
std::vector<CurvePoint> detection_curve(const TracePair& pair,
                                        const ThresholdSpec& thresholds,
                                        std::span<const std::size_t> grid,
                                        Parallelism par = {});

enum class Detector { tvla, adla };

// Smallest grid point whose maximum exceeds 1, if any.
std::optional<std::size_t> traces_to_detection(
    std::span<const CurvePoint> curve, Detector test);

// Evenly spaced grid step, 2*step, ..., up to and including `max_n`.
std::vector<std::size_t> linear_grid(std::size_t step, std::size_t max_n);

}  // namespace adla

#endif  // ADLA_ASSESS_HPP
