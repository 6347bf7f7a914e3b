// Copyright 2026 The M2T Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "m2t/stats.h"

#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>

#include "m2t/error.h"

namespace m2t {

namespace {

void check_sample(const std::vector<double> &xs, const std::vector<double> &ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorKind::kValidationError,
                "sample lengths differ: " + std::to_string(xs.size()) + " vs " +
                    std::to_string(ys.size()));
  }
  if (xs.size() < 2) throw Error(ErrorKind::kValidationError, "need at least 2 pairs");
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw Error(ErrorKind::kValidationError, "non-finite sample value");
    }
  }
}

double mean(const std::vector<double> &v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double student_t_two_sided_p(double t, double df) {
  if (std::isinf(t)) return 0.0;
  boost::math::students_t_distribution<double> dist(df);
  double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  return std::min(1.0, std::max(0.0, p));
}

StatsResult pearson(const std::vector<double> &xs, const std::vector<double> &ys) {
  check_sample(xs, ys);
  StatsResult r;
  r.n = xs.size();
  double mx = mean(xs), my = mean(ys);
  double sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0 || syy <= 0) {
    r.degenerate = true;
    r.note = "DegenerateSample: zero variance";
    return r;
  }
  double rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  r.pearson_r = rho;
  double df = static_cast<double>(r.n) - 2;
  if (df < 1) return r;
  r.df = df;
  double denom = 1.0 - rho * rho;
  if (denom <= 0) {
    r.p_value = 0.0;
    return r;
  }
  double t = rho * std::sqrt(df / denom);
  r.t_statistic = t;
  r.p_value = student_t_two_sided_p(t, df);
  return r;
}

StatsResult paired_t(const std::vector<double> &xs, const std::vector<double> &ys) {
  check_sample(xs, ys);
  StatsResult r;
  r.n = xs.size();
  std::vector<double> d(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) d[i] = xs[i] - ys[i];
  double md = mean(d);
  double ss = 0;
  for (double v : d) ss += (v - md) * (v - md);
  double df = static_cast<double>(r.n) - 1;
  r.df = df;
  double sd = std::sqrt(ss / df);
  if (sd == 0) {
    r.degenerate = true;
    r.note = "DegenerateSample: zero variance of differences";
    if (md == 0) {
      r.t_statistic = 0.0;
      r.p_value = 1.0;
    }
    return r;
  }
  double t = md / (sd / std::sqrt(static_cast<double>(r.n)));
  r.t_statistic = t;
  r.p_value = student_t_two_sided_p(t, df);
  return r;
}

const StatsResult &require_nondegenerate(const StatsResult &result) {
  if (result.degenerate) throw Error(ErrorKind::kDegenerateSample, result.note);
  return result;
}

}  // namespace m2t
