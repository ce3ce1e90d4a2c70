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

#ifndef ADLA_ERROR_HPP
#define ADLA_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adla {

// Base of every error the library throws. The CLI maps subclasses onto exit
// codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  IoError(const std::string& what, std::size_t bytes_written)
      : Error(what), bytes_written_(bytes_written) {}
  std::size_t bytes_written() const noexcept { return bytes_written_; }

 private:
  std::size_t bytes_written_;
};

// Unparsable input: bad magic, unknown version or dtype, CSV syntax.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Header and payload disagree.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input holding values the tests cannot use (NaN, inf).
class DataError : public Error {
 public:
  DataError(const std::string& what, std::size_t trace, std::size_t sample)
      : Error(what), trace_(trace), sample_(sample) {}
  std::size_t trace() const noexcept { return trace_; }
  std::size_t sample() const noexcept { return sample_; }

 private:
  std::size_t trace_;
  std::size_t sample_;
};

// Argument outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Moment ratios fall where no supported Pearson family applies.
class UnsupportedPearsonType : public Error {
 public:
  UnsupportedPearsonType(const std::string& what, double criterion)
      : Error(what), criterion_(criterion) {}
  double criterion() const noexcept { return criterion_; }

 private:
  double criterion_;
};

}  // namespace adla

#endif  // ADLA_ERROR_HPP
