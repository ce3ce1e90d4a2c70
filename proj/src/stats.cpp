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

#include "adla/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "adla/error.hpp"

namespace adla {
namespace {

struct MeanVar {
  double mean;
  double var;
};

MeanVar mean_var(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  double comp = 0.0;
  for (double x : v) {
    const double d = x - mean;
    ss += d * d;
    comp += d;
  }
  const double var = std::max(0.0, (ss - comp * comp / n) / (n - 1.0));
  return {mean, var};
}

// Neumaier-compensated sum as an unevaluated pair sum + carry.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
};

CompensatedSum compensated_sum(std::span<const double> v) {
  CompensatedSum s;
  for (double x : v) {
    const double t = s.sum + x;
    s.carry += std::abs(s.sum) >= std::abs(x) ? (s.sum - t) + x : (x - t) + s.sum;
    s.sum = t;
  }
  return s;
}

// Sum of x minus sum of y. The numerator of t cancels badly when the means
// are close, so it is not formed from the two rounded means. Swapping the
// arguments negates the result exactly.
double sum_difference(std::span<const double> x, std::span<const double> y) {
  const auto sx = compensated_sum(x);
  const auto sy = compensated_sum(y);
  return (sx.sum - sy.sum) + (sx.carry - sy.carry);
}

}  // namespace

WelchResult welch_t(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DomainError("welch_t needs equal-length samples");
  }
  if (x.size() < 2) throw DomainError("welch_t needs n >= 2");

  const auto [mx, vx] = mean_var(x);
  const auto [my, vy] = mean_var(y);
  const double n = static_cast<double>(x.size());

  WelchResult r;
  r.mean_x = mx;
  r.mean_y = my;
  r.var_x = vx;
  r.var_y = vy;
  if (vx + vy == 0.0) {
    r.degenerate = true;
    if (mx == my) {
      r.t = 0.0;
    } else {
      r.t = mx > my ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
    }
    return r;
  }
  r.t = sum_difference(x, y) / n / std::sqrt(vx / n + vy / n);
  return r;
}

AdResult ad_statistic(std::span<const double> x, std::span<const double> y) {
  AdWorkspace ws;
  return ad_statistic(x, y, ws);
}

AdResult ad_statistic(std::span<const double> x, std::span<const double> y,
                      AdWorkspace& ws) {
  if (x.size() != y.size()) {
    throw DomainError("ad_statistic needs equal-length samples");
  }
  const std::size_t n = x.size();
  if (n == 0) throw DomainError("ad_statistic needs n >= 1");

  ws.xs.assign(x.begin(), x.end());
  ws.ys.assign(y.begin(), y.end());
  std::sort(ws.xs.begin(), ws.xs.end());
  std::sort(ws.ys.begin(), ws.ys.end());

  // Merge the two sorted samples, x before y on ties. After taking pooled
  // element i, `m` is advanced past every x equal to it so that it counts
  // x-values <= Z_(i), not just those already merged.
  const std::size_t total = 2 * n;
  const double big_n = static_cast<double>(total);
  std::size_t ix = 0;
  std::size_t iy = 0;
  std::size_t m = 0;
  double sum = 0.0;
  for (std::size_t i = 1; i < total; ++i) {
    double z;
    if (iy == n || (ix < n && ws.xs[ix] <= ws.ys[iy])) {
      z = ws.xs[ix++];
    } else {
      z = ws.ys[iy++];
    }
    if (m < ix) m = ix;
    while (m < n && ws.xs[m] <= z) ++m;
    const double d = 2.0 * static_cast<double>(m) - static_cast<double>(i);
    const double fi = static_cast<double>(i);
    sum += d * d / (fi * (big_n - fi));
  }
  return {sum, n};
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_sf(double z) {
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile needs 0 < p < 1");
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

std::vector<QqPoint> qq_points(std::span<const double> values) {
  if (values.size() < 2) throw DomainError("qq_points needs n >= 2");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<QqPoint> out(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    out[k].theoretical =
        normal_quantile((static_cast<double>(k) + 0.5) / n);
    out[k].empirical = sorted[k];
  }
  return out;
}

QqFit fit_qq_line(std::span<const QqPoint> points) {
  if (points.size() < 2) throw DomainError("fit_qq_line needs >= 2 points");
  const double n = static_cast<double>(points.size());
  double mt = 0.0;
  double me = 0.0;
  for (const auto& p : points) {
    mt += p.theoretical;
    me += p.empirical;
  }
  mt /= n;
  me /= n;
  double stt = 0.0;
  double ste = 0.0;
  double see = 0.0;
  for (const auto& p : points) {
    const double dt = p.theoretical - mt;
    const double de = p.empirical - me;
    stt += dt * dt;
    ste += dt * de;
    see += de * de;
  }
  QqFit fit;
  fit.slope = ste / stt;
  fit.intercept = me - fit.slope * mt;
  if (see > 0.0) {
    double rss = 0.0;
    for (const auto& p : points) {
      const double r = p.empirical - (fit.intercept + fit.slope * p.theoretical);
      rss += r * r;
    }
    fit.relative_residual = std::sqrt(rss / see);
  }
  return fit;
}

}  // namespace adla
