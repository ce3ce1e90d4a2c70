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

#include "adla/pearson.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "adla/error.hpp"

namespace adla {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTypeTolerance = 1e-10;
constexpr double kQuadratureTolerance = 1e-13;

[[noreturn]] void unsupported(const std::string& why, double criterion) {
  std::ostringstream msg;
  msg.precision(10);
  msg << why << " (criterion kappa = " << criterion << ")";
  throw UnsupportedPearsonType(msg.str(), criterion);
}

}  // namespace

const char* to_string(PearsonType type) {
  switch (type) {
    case PearsonType::normal: return "normal";
    case PearsonType::I: return "I";
    case PearsonType::II: return "II";
    case PearsonType::III: return "III";
    case PearsonType::IV: return "IV";
    case PearsonType::V: return "V";
    case PearsonType::VI: return "VI";
    case PearsonType::VII: return "VII";
  }
  return "?";
}

PearsonDistribution PearsonDistribution::fit(const PearsonMoments& m) {
  if (!(m.variance > 0.0) || !std::isfinite(m.variance) ||
      !std::isfinite(m.mean) || !std::isfinite(m.skewness) ||
      !std::isfinite(m.kurtosis)) {
    throw UnsupportedPearsonType("Pearson fit needs finite moments and a "
                                 "positive variance",
                                 std::numeric_limits<double>::quiet_NaN());
  }
  const double beta1 = m.skewness * m.skewness;
  const double beta2 = m.kurtosis;
  const double denom = 10.0 * beta2 - 12.0 * beta1 - 18.0;
  const double crit_num = beta1 * (beta2 + 3.0) * (beta2 + 3.0);
  const double crit_den =
      4.0 * (4.0 * beta2 - 3.0 * beta1) * (2.0 * beta2 - 3.0 * beta1 - 6.0);
  const double criterion =
      crit_den != 0.0 ? crit_num / crit_den
                      : std::numeric_limits<double>::infinity();

  if (beta2 <= beta1 + 1.0) {
    unsupported("inadmissible moments: kurtosis <= skewness^2 + 1", criterion);
  }
  if (denom <= kTypeTolerance) {
    unsupported("moments outside the Pearson system (10 b2 - 12 b1 - 18 <= 0)",
                criterion);
  }

  PearsonDistribution d;
  d.moments_ = m;
  d.criterion_ = criterion;
  d.b0_ = m.variance * (4.0 * beta2 - 3.0 * beta1) / denom;
  d.b1_ = std::sqrt(m.variance) * m.skewness * (beta2 + 3.0) / denom;
  d.b2_ = (2.0 * beta2 - 3.0 * beta1 - 6.0) / denom;
  d.a_ = d.b1_;

  const bool symmetric = beta1 < kTypeTolerance;
  if (symmetric && std::abs(beta2 - 3.0) < kTypeTolerance) {
    d.type_ = PearsonType::normal;
    d.lo_ = -kInf;
    d.hi_ = kInf;
  } else if (std::abs(d.b2_) < kTypeTolerance) {
    d.type_ = PearsonType::III;
    const double root = -d.b0_ / d.b1_;
    d.lo_ = d.b1_ > 0.0 ? root : -kInf;
    d.hi_ = d.b1_ > 0.0 ? kInf : root;
  } else {
    const double disc = d.b1_ * d.b1_ - 4.0 * d.b0_ * d.b2_;
    if (symmetric) {
      d.type_ = d.b2_ < 0.0 ? PearsonType::II : PearsonType::VII;
    } else if (criterion < 0.0) {
      d.type_ = PearsonType::I;
    } else if (std::abs(criterion - 1.0) < kTypeTolerance) {
      unsupported("Pearson Type V (double root) is not supported", criterion);
    } else if (criterion < 1.0) {
      d.type_ = PearsonType::IV;
    } else {
      d.type_ = PearsonType::VI;
    }

    if (disc >= 0.0) {
      // Stable quadratic roots.
      const double q =
          -0.5 * (d.b1_ + std::copysign(std::sqrt(disc), d.b1_ == 0.0 ? 1.0 : d.b1_));
      double r1 = q / d.b2_;
      double r2 = d.b0_ / q;
      if (r1 > r2) std::swap(r1, r2);
      d.real_roots_ = true;
      d.r1_ = r1;
      d.r2_ = r2;
      const double ca = (d.a_ + r1) / (r1 - r2);
      const double cb = (d.a_ + r2) / (r2 - r1);
      d.ca_ = ca / d.b2_;
      d.cb_ = cb / d.b2_;
      if (0.0 < r1) {
        d.lo_ = -kInf;
        d.hi_ = r1;
      } else if (0.0 < r2) {
        d.lo_ = r1;
        d.hi_ = r2;
      } else {
        d.lo_ = r2;
        d.hi_ = kInf;
      }
    } else {
      d.complex_roots_ = true;
      d.centre_ = -d.b1_ / (2.0 * d.b2_);
      d.scale_ = std::sqrt(d.b0_ / d.b2_ - d.centre_ * d.centre_);
      d.power_ = 1.0 / (2.0 * d.b2_);
      d.skew_ = (d.a_ + d.centre_) / (d.b2_ * d.scale_);
      d.lo_ = -kInf;
      d.hi_ = kInf;
    }
  }

  d.log_anchor_ = 0.0;
  d.log_anchor_ = d.log_kernel(0.0);
  d.lower_mass_ = d.integrate(d.lo_, 0.0);
  d.upper_mass_ = d.integrate(0.0, d.hi_);
  if (!(d.lower_mass_ + d.upper_mass_ > 0.0) ||
      !std::isfinite(d.lower_mass_ + d.upper_mass_)) {
    unsupported("Pearson density is not normalisable", criterion);
  }
  return d;
}

double PearsonDistribution::log_kernel(double x) const {
  double v = 0.0;
  switch (type_) {
    case PearsonType::normal:
      v = -x * x / (2.0 * b0_);
      break;
    case PearsonType::III:
      v = -x / b1_ - ((a_ - b0_ / b1_) / b1_) * std::log(std::abs(b0_ + b1_ * x));
      break;
    default:
      if (complex_roots_) {
        const double u = (x - centre_) / scale_;
        v = -power_ * std::log1p(u * u) - skew_ * std::atan(u);
      } else {
        v = -ca_ * std::log(std::abs(x - r1_)) -
            cb_ * std::log(std::abs(x - r2_));
      }
      break;
  }
  return v - log_anchor_;
}

double PearsonDistribution::kernel(double x) const {
  if (!(x > lo_ && x < hi_)) return 0.0;
  return std::exp(log_kernel(x));
}

double PearsonDistribution::integrate(double a, double b) const {
  if (!(a < b)) return 0.0;
  auto f = [this](double x) { return kernel(x); };
  if (std::isinf(a) || std::isinf(b)) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(f, a, b, kQuadratureTolerance);
  }
  // The two-argument form gives the exact distance to the nearer endpoint,
  // which keeps log|x - root| accurate next to a singular support edge.
  auto g = [this, a, b](double x, double xc) {
    const double left = xc <= 0.0 ? -xc : x - a;
    const double right = xc > 0.0 ? xc : b - x;
    if (!(left > 0.0) || !(right > 0.0)) return 0.0;
    if (real_roots_) {
      const double d1 = r1_ == a ? left : (r1_ == b ? right : std::abs(x - r1_));
      const double d2 = r2_ == a ? left : (r2_ == b ? right : std::abs(x - r2_));
      return std::exp(-ca_ * std::log(d1) - cb_ * std::log(d2) - log_anchor_);
    }
    return kernel(x);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(g, a, b, kQuadratureTolerance);
}

double PearsonDistribution::pdf(double value) const {
  return kernel(value - moments_.mean) / (lower_mass_ + upper_mass_);
}

double PearsonDistribution::cdf(double value) const {
  const double x = value - moments_.mean;
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  const double total = lower_mass_ + upper_mass_;
  if (x <= 0.0) return integrate(lo_, x) / total;
  return 1.0 - integrate(x, hi_) / total;
}

double PearsonDistribution::sf(double value) const {
  const double x = value - moments_.mean;
  if (x <= lo_) return 1.0;
  if (x >= hi_) return 0.0;
  const double total = lower_mass_ + upper_mass_;
  if (x >= 0.0) return integrate(x, hi_) / total;
  return 1.0 - integrate(lo_, x) / total;
}

double PearsonDistribution::upper_quantile(double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("upper_quantile needs 0 < alpha < 1");
  }
  const double log_alpha = std::log(alpha);
  auto g = [&](double x) {
    const double tail = sf(moments_.mean + x);
    return (tail > 0.0 ? std::log(tail) : -745.0) - log_alpha;
  };

  // Expand a bracket from the mean towards the side holding the quantile,
  // halving the remaining distance whenever a support edge is in the way.
  const double sd = std::sqrt(moments_.variance);
  const bool upward = g(0.0) > 0.0;
  const double edge = upward ? hi_ : lo_;
  double near = 0.0;
  double far = upward ? sd : -sd;
  for (int i = 0; i < 400; ++i) {
    if (std::isfinite(edge) && (upward ? far >= edge : far <= edge)) {
      far = near + 0.5 * (edge - near);
    }
    if ((g(far) > 0.0) != upward) break;
    near = far;
    far *= 2.0;
  }
  double lo = upward ? near : far;
  double hi = upward ? far : near;
  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return moments_.mean + lo;
  if (ghi == 0.0) return moments_.mean + hi;
  if ((glo > 0.0) == (ghi > 0.0)) {
    throw DomainError("could not bracket the Pearson quantile");
  }
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(50),
      iterations);
  return moments_.mean + 0.5 * (a + b);
}

}  // namespace adla
