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

#ifndef ADLA_REPORT_HPP
#define ADLA_REPORT_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "adla/assess.hpp"
#include "adla/stats.hpp"
#include "adla/threshold.hpp"

namespace adla {

using Json = nlohmann::ordered_json;

// Non-finite reals are written as the strings "Infinity", "-Infinity" and
// "NaN" so that reports survive a JSON round trip.
Json threshold_to_json(const ThresholdSpec& spec);
ThresholdSpec threshold_from_json(const Json& json);

// per_sample is written when the report has at most `per_sample_cap`
// samples; otherwise it is elided and "per_sample_elided" is true.
Json report_to_json(const AssessmentReport& report,
                    std::optional<std::size_t> per_sample_cap = std::nullopt);
AssessmentReport report_from_json(const Json& json);

// Plain-text threshold derivation ledger.
void write_threshold_text(const ThresholdSpec& spec, std::ostream& out);

inline constexpr const char* kStatsCsvHeader =
    "sample_index,t_abs,a2,t_norm,a2_norm,tvla_detect,adla_detect,degenerate";

void write_stats_csv(const AssessmentReport& report, std::ostream& out);
void write_curve_csv(std::span<const CurvePoint> curve, std::ostream& out);
void write_qq_csv(std::span<const QqPoint> points, std::ostream& out);

// Two stacked panels (|t|/tau_t and A^2/tau_A per time sample) with the
// rejection line at 1. Self-contained SVG, no external assets.
void write_stats_svg(const AssessmentReport& report, std::ostream& out);

// Shortest round-trip decimal form.
std::string format_real(double value);

}  // namespace adla

#endif  // ADLA_REPORT_HPP
