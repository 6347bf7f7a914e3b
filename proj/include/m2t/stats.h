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

#ifndef M2T_STATS_H_
#define M2T_STATS_H_

#include <optional>
#include <string>
#include <vector>

namespace m2t {

// Only the fields of the computed test are set. A degenerate sample (zero
// variance) is flagged instead of producing NaN.
struct StatsResult {
  std::optional<double> pearson_r;
  std::optional<double> t_statistic;
  std::optional<double> p_value;
  std::optional<double> df;
  size_t n = 0;
  bool degenerate = false;
  std::string note;
};

// Two-sided p-value of t under Student's t with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

// Pearson r; the p-value uses t = r sqrt((n-2)/(1-r^2)) with n-2 df.
// Throws ValidationError on unequal lengths or n < 2.
StatsResult pearson(const std::vector<double> &xs, const std::vector<double> &ys);

// Paired t-test on xs[i] - ys[i], n-1 df.
StatsResult paired_t(const std::vector<double> &xs, const std::vector<double> &ys);

// Throws DegenerateSample when the result is flagged.
const StatsResult &require_nondegenerate(const StatsResult &result);

}  // namespace m2t

#endif  // M2T_STATS_H_
