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

#include "diaudit/ks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace diaudit {

KsResult ks_statistic(std::span<const double> scores_a,
                      std::span<const double> scores_b) {
  if (scores_a.empty() || scores_b.empty()) {
    throw std::invalid_argument("ks_statistic needs two non-empty samples");
  }
  std::vector<double> a(scores_a.begin(), scores_a.end());
  std::vector<double> b(scores_b.begin(), scores_b.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  KsResult result{0.0, std::min(a.front(), b.front())};
  while (i < a.size() || j < b.size()) {
    double x;
    if (i == a.size()) {
      x = b[j];
    } else if (j == b.size()) {
      x = a[i];
    } else {
      x = std::min(a[i], b[j]);
    }
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    const double diff = std::fabs(static_cast<double>(i) / na -
                                  static_cast<double>(j) / nb);
    if (diff > result.statistic) {
      result.statistic = diff;
      result.location = x;
    }
  }
  return result;
}

}  // namespace diaudit
