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

#include "adla/assess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adla/error.hpp"
#include "adla/stats.hpp"

namespace adla {
namespace {

constexpr std::size_t kColumnBlock = 32;

struct Scratch {
  std::vector<double> block_a;
  std::vector<double> block_b;
  AdWorkspace ad;
};

// Copies columns [begin, end) of the first n rows into column-major blocks so
// each column is contiguous.
void transpose_block(const TraceSet& set, std::size_t n, std::size_t begin,
                     std::size_t end, std::vector<double>& out) {
  const std::size_t width = end - begin;
  out.resize(width * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = set.row(i);
    for (std::size_t c = 0; c < width; ++c) out[c * n + i] = row[begin + c];
  }
}

}  // namespace

AssessmentReport assess_prefix(const TracePair& pair, std::size_t n,
                               const ThresholdSpec& thresholds,
                               Parallelism par) {
  validate(thresholds);
  if (n < 2 || n > pair.n_traces()) {
    throw DomainError("assessment needs 2 <= n <= " +
                      std::to_string(pair.n_traces()) + " traces, got " +
                      std::to_string(n));
  }
  const std::size_t samples = pair.n_samples();
  AssessmentReport report;
  report.thresholds = thresholds;
  report.n_traces_used = n;
  report.n_samples = samples;
  report.per_sample.resize(samples);

  std::vector<Scratch> scratch(resolve_threads(par));
  parallel_for(
      samples, kColumnBlock, par,
      [&](std::size_t begin, std::size_t end, unsigned worker) {
        Scratch& s = scratch[worker];
        transpose_block(pair.set_a(), n, begin, end, s.block_a);
        transpose_block(pair.set_b(), n, begin, end, s.block_b);
        for (std::size_t col = begin; col < end; ++col) {
          const std::span<const double> x(s.block_a.data() + (col - begin) * n, n);
          const std::span<const double> y(s.block_b.data() + (col - begin) * n, n);
          const auto w = welch_t(x, y);
          const auto ad = ad_statistic(x, y, s.ad);
          SampleStatistics& st = report.per_sample[col];
          st.sample_index = col;
          st.t_abs = std::abs(w.t);
          st.a2 = ad.a2;
          st.t_norm = st.t_abs / thresholds.tau_t;
          st.a2_norm = st.a2 / thresholds.tau_a;
          st.tvla_detect = st.t_norm > 1.0;
          st.adla_detect = st.a2_norm > 1.0;
          st.degenerate = w.degenerate;
        }
      });

  // Sequential reduction in sample order; ties keep the earliest index.
  for (const auto& st : report.per_sample) {
    if (st.tvla_detect) report.tvla_leaks.push_back(st.sample_index);
    if (st.adla_detect) report.adla_leaks.push_back(st.sample_index);
    if (st.degenerate) {
      report.degenerate_samples.push_back(st.sample_index);
      continue;
    }
    if (!report.argmax_t_norm || st.t_norm > report.max_t_norm) {
      report.max_t_norm = st.t_norm;
      report.argmax_t_norm = st.sample_index;
    }
    if (!report.argmax_a2_norm || st.a2_norm > report.max_a2_norm) {
      report.max_a2_norm = st.a2_norm;
      report.argmax_a2_norm = st.sample_index;
    }
  }
  return report;
}

AssessmentReport assess_pair(const TracePair& pair,
                             const ThresholdSpec& thresholds,
                             Parallelism par) {
  return assess_prefix(pair, pair.n_traces(), thresholds, par);
}

std::vector<CurvePoint> detection_curve(const TracePair& pair,
                                        const ThresholdSpec& thresholds,
                                        std::span<const std::size_t> grid,
                                        Parallelism par) {
  if (grid.empty()) throw DomainError("detection grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k] < 2 || grid[k] > pair.n_traces()) {
      throw DomainError("grid value " + std::to_string(grid[k]) +
                        " outside [2, " + std::to_string(pair.n_traces()) +
                        "]");
    }
    if (k > 0 && grid[k] <= grid[k - 1]) {
      throw DomainError("detection grid must be strictly increasing");
    }
  }
  std::vector<CurvePoint> curve;
  curve.reserve(grid.size());
  for (std::size_t n : grid) {
    const auto r = assess_prefix(pair, n, thresholds, par);
    curve.push_back({n, r.max_t_norm, r.max_a2_norm});
  }
  return curve;
}

std::optional<std::size_t> traces_to_detection(
    std::span<const CurvePoint> curve, Detector test) {
  for (const auto& p : curve) {
    const double v = test == Detector::tvla ? p.max_t_norm : p.max_a2_norm;
    if (v > 1.0) return p.n;
  }
  return std::nullopt;
}

std::vector<std::size_t> linear_grid(std::size_t step, std::size_t max_n) {
  if (step == 0) throw DomainError("grid step must be positive");
  std::vector<std::size_t> grid;
  for (std::size_t n = std::max<std::size_t>(step, 2); n <= max_n; n += step) {
    grid.push_back(n);
  }
  if (grid.empty() || grid.back() != max_n) grid.push_back(max_n);
  return grid;
}

}  // namespace adla
