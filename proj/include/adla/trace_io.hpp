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

#ifndef ADLA_TRACE_IO_HPP
#define ADLA_TRACE_IO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace adla {

enum class DType : std::uint8_t { real32 = 0, real64 = 1 };

const char* to_string(DType dtype);

// n_traces x n_samples matrix of leakage measurements, row-major, one row
// per trace. Immutable once constructed; the constructor enforces shape and
// finiteness. real32 sets hold values exactly representable as float.
class TraceSet {
 public:
  TraceSet(std::size_t n_traces, std::size_t n_samples,
           std::vector<double> samples, DType dtype = DType::real64,
           std::string label = {});

  std::size_t n_traces() const noexcept { return n_traces_; }
  std::size_t n_samples() const noexcept { return n_samples_; }
  DType dtype() const noexcept { return dtype_; }
  const std::string& label() const noexcept { return label_; }

  double at(std::size_t trace, std::size_t sample) const {
    return samples_[trace * n_samples_ + sample];
  }
  std::span<const double> row(std::size_t trace) const {
    return {samples_.data() + trace * n_samples_, n_samples_};
  }
  std::span<const double> values() const noexcept { return samples_; }

  // Copies column `sample` of the first `n` traces into `out`.
  void gather_column(std::size_t sample, std::size_t n,
                     std::span<double> out) const;

  // First `n` traces as a new set (same dtype and label).
  TraceSet prefix(std::size_t n) const;

  TraceSet with_label(std::string label) const;

  // Bitwise comparison of shape, dtype, label and every sample.
  friend bool operator==(const TraceSet& a, const TraceSet& b);

 private:
  std::size_t n_traces_;
  std::size_t n_samples_;
  DType dtype_;
  std::string label_;
  std::vector<double> samples_;
};

// Two fixed-input conditions with equal trace counts and trace lengths.
class TracePair {
 public:
  TracePair(TraceSet set_a, TraceSet set_b);

  const TraceSet& set_a() const noexcept { return a_; }
  const TraceSet& set_b() const noexcept { return b_; }
  std::size_t n_traces() const noexcept { return a_.n_traces(); }
  std::size_t n_samples() const noexcept { return a_.n_samples(); }

  TracePair prefix(std::size_t n) const;

 private:
  TraceSet a_;
  TraceSet b_;
};

inline constexpr std::size_t kHeaderSize = 16;
inline constexpr std::uint8_t kFormatVersion = 1;

// ADLA1 container: 16-byte little-endian header followed by the row-major
// payload. The label is not part of the container.
std::size_t write_trace_set(const TraceSet& set, std::ostream& sink);
TraceSet read_trace_set(std::istream& source);

std::vector<std::uint8_t> encode_trace_set(const TraceSet& set);
TraceSet decode_trace_set(std::span<const std::uint8_t> bytes);

// Always yields real64. Blank trailing lines are ignored.
TraceSet read_csv(std::istream& source);
void write_csv(const TraceSet& set, std::ostream& sink);

// File helpers. The label travels in a sidecar `<path>.label`; a missing
// sidecar means an empty label.
std::filesystem::path label_sidecar(const std::filesystem::path& path);
std::size_t save_trace_set(const TraceSet& set,
                           const std::filesystem::path& path);
TraceSet load_trace_set(const std::filesystem::path& path);

// Dispatches on extension: ".csv" is parsed as CSV, anything else as ADLA1.
TraceSet load_any(const std::filesystem::path& path);

}  // namespace adla

#endif  // ADLA_TRACE_IO_HPP
