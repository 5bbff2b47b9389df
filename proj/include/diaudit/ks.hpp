// Copyright 2026 The diaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIAUDIT_KS_HPP_
#define DIAUDIT_KS_HPP_

#include <span>

namespace diaudit {

struct KsResult {
  double statistic = 0.0;  // sup |F_a - F_b|, in [0, 1]
  double location = 0.0;   // smallest sample value attaining the sup
};

// Two-sample Kolmogorov-Smirnov statistic. The ECDFs are right-continuous
// step functions that only change at sample points, so the supremum is
// taken over the union of the two samples. Statistic only; no p-value.
KsResult ks_statistic(std::span<const double> scores_a,
                      std::span<const double> scores_b);

}  // namespace diaudit

#endif  // DIAUDIT_KS_HPP_
