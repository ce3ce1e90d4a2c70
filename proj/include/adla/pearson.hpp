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

#ifndef ADLA_PEARSON_HPP
#define ADLA_PEARSON_HPP

#include <string>

namespace adla {

enum class PearsonType { normal, I, II, III, IV, V, VI, VII };

const char* to_string(PearsonType type);

struct PearsonMoments {
  double mean = 0.0;
  double variance = 1.0;
  double skewness = 0.0;  // gamma1 = mu3 / mu2^(3/2)
  double kurtosis = 3.0;  // beta2 = mu4 / mu2^2 (not excess)
};

// A member of the Pearson system fitted to four moments. The density solves
//
//   p'(x) / p(x) = -(a + x) / (b0 + b1 x + b2 x^2),   x = value - mean
//
// and is integrated numerically; no incomplete beta/gamma functions are
// involved. Types I, II, IV, VI and VII come out of the same partial-
// fraction form; the normal and Type III boundaries are handled separately.
// Type V (a double root) is rejected.
class PearsonDistribution {
 public:
  // Throws UnsupportedPearsonType when the moment ratios are inadmissible or
  // land on an unsupported family.
  static PearsonDistribution fit(const PearsonMoments& moments);

  PearsonType type() const noexcept { return type_; }
  // kappa = b1^2 / (4 b0 b2): < 0 Type I, (0, 1) Type IV, > 1 Type VI.
  double criterion() const noexcept { return criterion_; }
  const PearsonMoments& moments() const noexcept { return moments_; }

  // Support in the value domain; +/-inf for unbounded ends.
  double support_lower() const noexcept { return moments_.mean + lo_; }
  double support_upper() const noexcept { return moments_.mean + hi_; }

  double pdf(double value) const;
  double cdf(double value) const;
  // Upper tail Pr(X > value), computed directly so small tails keep their
  // relative precision.
  double sf(double value) const;
  // Value q with sf(q) = alpha.
  double upper_quantile(double alpha) const;

 private:
  PearsonDistribution() = default;

  double log_kernel(double x) const;  // unnormalised, centred coordinates
  double kernel(double x) const;
  double integrate(double a, double b) const;

  PearsonMoments moments_;
  PearsonType type_ = PearsonType::normal;
  double criterion_ = 0.0;
  double a_ = 0.0;
  double b0_ = 0.0;
  double b1_ = 0.0;
  double b2_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;

  // Real-root form: -(ca * log|x - r1| + cb * log|x - r2|).
  bool real_roots_ = false;
  double r1_ = 0.0;
  double r2_ = 0.0;
  double ca_ = 0.0;
  double cb_ = 0.0;
  // Complex-root form: -power * log(1 + u^2) - skew * atan(u).
  bool complex_roots_ = false;
  double centre_ = 0.0;
  double scale_ = 1.0;
  double power_ = 0.0;
  double skew_ = 0.0;

  double log_anchor_ = 0.0;  // log_kernel at the mean
  double lower_mass_ = 0.0;  // integral of kernel over (lo, 0)
  double upper_mass_ = 0.0;  // integral of kernel over (0, hi)
};

}  // namespace adla

#endif  // ADLA_PEARSON_HPP
