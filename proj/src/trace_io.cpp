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

#include "adla/trace_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>

#include "adla/error.hpp"

namespace adla {
namespace {

constexpr char kMagic[4] = {'A', 'D', 'L', 'A'};

std::size_t width_of(DType dtype) {
  return dtype == DType::real32 ? 4 : 8;
}

template <typename UInt>
void put_le(std::vector<std::uint8_t>& out, UInt value) {
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

template <typename UInt>
UInt get_le(const std::uint8_t* p) {
  UInt value = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    value |= static_cast<UInt>(p[i]) << (8 * i);
  }
  return value;
}

void check_finite(std::span<const double> values, std::size_t n_samples) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      const std::size_t trace = k / n_samples;
      const std::size_t sample = k % n_samples;
      std::ostringstream msg;
      msg << "non-finite value at trace " << trace << ", sample " << sample;
      throw DataError(msg.str(), trace, sample);
    }
  }
}

}  // namespace

const char* to_string(DType dtype) {
  return dtype == DType::real32 ? "real32" : "real64";
}

TraceSet::TraceSet(std::size_t n_traces, std::size_t n_samples,
                   std::vector<double> samples, DType dtype, std::string label)
    : n_traces_(n_traces),
      n_samples_(n_samples),
      dtype_(dtype),
      label_(std::move(label)),
      samples_(std::move(samples)) {
  if (n_traces_ == 0 || n_samples_ == 0) {
    throw DomainError("trace set needs at least one trace and one sample");
  }
  if (n_traces_ > std::numeric_limits<std::uint32_t>::max() ||
      n_samples_ > std::numeric_limits<std::uint32_t>::max()) {
    throw DomainError("trace set dimensions exceed 32-bit range");
  }
  if (samples_.size() != n_traces_ * n_samples_) {
    std::ostringstream msg;
    msg << "sample matrix holds " << samples_.size() << " values, expected "
        << n_traces_ << " x " << n_samples_;
    throw DomainError(msg.str());
  }
  if (dtype_ == DType::real32) {
    for (double& v : samples_) v = static_cast<double>(static_cast<float>(v));
  }
  check_finite(samples_, n_samples_);
}

void TraceSet::gather_column(std::size_t sample, std::size_t n,
                             std::span<double> out) const {
  const double* p = samples_.data() + sample;
  for (std::size_t i = 0; i < n; ++i, p += n_samples_) out[i] = *p;
}

TraceSet TraceSet::prefix(std::size_t n) const {
  if (n == 0 || n > n_traces_) {
    throw DomainError("prefix length out of range");
  }
  std::vector<double> head(samples_.begin(),
                           samples_.begin() + static_cast<std::ptrdiff_t>(n * n_samples_));
  return TraceSet(n, n_samples_, std::move(head), dtype_, label_);
}

TraceSet TraceSet::with_label(std::string label) const {
  TraceSet copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

bool operator==(const TraceSet& a, const TraceSet& b) {
  if (a.n_traces_ != b.n_traces_ || a.n_samples_ != b.n_samples_ ||
      a.dtype_ != b.dtype_ || a.label_ != b.label_) {
    return false;
  }
  for (std::size_t k = 0; k < a.samples_.size(); ++k) {
    if (std::bit_cast<std::uint64_t>(a.samples_[k]) !=
        std::bit_cast<std::uint64_t>(b.samples_[k])) {
      return false;
    }
  }
  return true;
}

TracePair::TracePair(TraceSet set_a, TraceSet set_b)
    : a_(std::move(set_a)), b_(std::move(set_b)) {
  if (a_.n_traces() != b_.n_traces()) {
    throw DomainError("trace sets differ in trace count (" +
                      std::to_string(a_.n_traces()) + " vs " +
                      std::to_string(b_.n_traces()) + ")");
  }
  if (a_.n_samples() != b_.n_samples()) {
    throw DomainError("trace sets differ in trace length (" +
                      std::to_string(a_.n_samples()) + " vs " +
                      std::to_string(b_.n_samples()) + ")");
  }
}

TracePair TracePair::prefix(std::size_t n) const {
  return TracePair(a_.prefix(n), b_.prefix(n));
}

std::vector<std::uint8_t> encode_trace_set(const TraceSet& set) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + set.values().size() * width_of(set.dtype()));
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(kFormatVersion);
  out.push_back(static_cast<std::uint8_t>(set.dtype()));
  out.push_back(0);
  out.push_back(0);
  put_le(out, static_cast<std::uint32_t>(set.n_traces()));
  put_le(out, static_cast<std::uint32_t>(set.n_samples()));
  if (set.dtype() == DType::real32) {
    for (double v : set.values()) {
      put_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    }
  } else {
    for (double v : set.values()) put_le(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

TraceSet decode_trace_set(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize ||
      !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw FormatError("missing ADLA magic");
  }
  if (bytes[4] != kFormatVersion) {
    throw FormatError("unsupported container version " +
                      std::to_string(bytes[4]));
  }
  if (bytes[5] > 1) {
    throw FormatError("unknown dtype code " + std::to_string(bytes[5]));
  }
  if (bytes[6] != 0 || bytes[7] != 0) {
    throw FormatError("reserved header bytes are not zero");
  }
  const auto dtype = static_cast<DType>(bytes[5]);
  const std::uint64_t n_traces = get_le<std::uint32_t>(bytes.data() + 8);
  const std::uint64_t n_samples = get_le<std::uint32_t>(bytes.data() + 12);
  if (n_traces == 0 || n_samples == 0) {
    throw CorruptionError("header declares an empty trace set");
  }
  const std::uint64_t count = n_traces * n_samples;
  const std::uint64_t width = width_of(dtype);
  const std::uint64_t payload = bytes.size() - kHeaderSize;
  if (payload != count * width) {
    std::ostringstream msg;
    msg << "header declares " << n_traces << " x " << n_samples << " "
        << to_string(dtype) << " values (" << count * width
        << " bytes) but payload holds " << payload << " bytes";
    throw CorruptionError(msg.str());
  }

  std::vector<double> samples(count);
  const std::uint8_t* p = bytes.data() + kHeaderSize;
  for (std::uint64_t k = 0; k < count; ++k, p += width) {
    samples[k] = dtype == DType::real32
                     ? static_cast<double>(
                           std::bit_cast<float>(get_le<std::uint32_t>(p)))
                     : std::bit_cast<double>(get_le<std::uint64_t>(p));
  }
  return TraceSet(n_traces, n_samples, std::move(samples), dtype);
}

std::size_t write_trace_set(const TraceSet& set, std::ostream& sink) {
  const auto bytes = encode_trace_set(set);
  const auto start = sink.tellp();
  sink.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  sink.flush();
  if (!sink) {
    const auto end = sink.tellp();
    const std::size_t written =
        start >= 0 && end >= start ? static_cast<std::size_t>(end - start) : 0;
    throw IoError("failed writing trace set after " + std::to_string(written) +
                      " bytes",
                  written);
  }
  return bytes.size();
}

TraceSet read_trace_set(std::istream& source) {
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(source),
                                  std::istreambuf_iterator<char>()};
  return decode_trace_set(bytes);
}

TraceSet read_csv(std::istream& source) {
  std::vector<double> samples;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::size_t fields = 0;
    std::size_t pos = 0;
    while (true) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      std::size_t b = pos;
      std::size_t e = end;
      while (b < e && (line[b] == ' ' || line[b] == '\t')) ++b;
      while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t')) --e;
      double value = 0.0;
      const char* first = line.data() + b;
      const char* last = line.data() + e;
      if (b < e && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      ++fields;
      if (b == e || ec != std::errc() || ptr != last) {
        std::ostringstream msg;
        msg << "line " << line_no << ", column " << fields
            << ": cannot parse '" << line.substr(b, e - b) << "'";
        throw FormatError(msg.str());
      }
      if (!std::isfinite(value)) {
        throw DataError("non-finite value at line " + std::to_string(line_no) +
                            ", column " + std::to_string(fields),
                        rows, fields - 1);
      }
      samples.push_back(value);
      if (end == line.size()) break;
      pos = end + 1;
    }
    if (rows == 0) {
      width = fields;
    } else if (fields != width) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected " << width
          << " values, found " << fields;
      throw FormatError(msg.str());
    }
    ++rows;
  }
  if (rows == 0) throw FormatError("CSV input holds no traces");
  return TraceSet(rows, width, std::move(samples), DType::real64);
}

void write_csv(const TraceSet& set, std::ostream& sink) {
  char buf[32];
  for (std::size_t i = 0; i < set.n_traces(); ++i) {
    const auto row = set.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) sink << ',';
      const auto res = std::to_chars(buf, buf + sizeof buf, row[j]);
      sink.write(buf, res.ptr - buf);
    }
    sink << '\n';
  }
}

std::filesystem::path label_sidecar(const std::filesystem::path& path) {
  auto sidecar = path;
  sidecar += ".label";
  return sidecar;
}

std::size_t save_trace_set(const TraceSet& set,
                           const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing", 0);
  const std::size_t n = write_trace_set(set, out);
  const auto sidecar = label_sidecar(path);
  if (set.label().empty()) {
    std::error_code ec;
    std::filesystem::remove(sidecar, ec);
  } else {
    std::ofstream label(sidecar, std::ios::binary | std::ios::trunc);
    label << set.label();
    if (!label) throw IoError("cannot write " + sidecar.string(), n);
  }
  return n;
}

TraceSet load_trace_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string(), 0);
  TraceSet set = read_trace_set(in);
  std::ifstream label(label_sidecar(path), std::ios::binary);
  if (!label) return set;
  std::string text{std::istreambuf_iterator<char>(label),
                   std::istreambuf_iterator<char>()};
  return set.with_label(std::move(text));
}

TraceSet load_any(const std::filesystem::path& path) {
  if (path.extension() == ".csv") {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string(), 0);
    return read_csv(in).with_label(path.stem().string());
  }
  return load_trace_set(path);
}

}  // namespace adla
