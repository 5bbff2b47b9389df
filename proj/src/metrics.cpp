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

#include "diaudit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace diaudit {
namespace {

constexpr double kAllPass = -std::numeric_limits<double>::infinity();

void require_nonempty_groups(const GroupPartition& part) {
  if (part.groups.empty()) {
    throw std::invalid_argument("partition has no groups");
  }
  for (const auto& [key, scores] : part.groups) {
    if (scores.empty()) {
      throw std::invalid_argument("empty group: " + group_label(key));
    }
  }
}

// Smallest 1-based order-statistic index m with m >= p*n. The product is
// snapped to the nearest integer when within 1e-9 relative error so that
// grid proportions (k/100 etc.) select the exact order statistic.
std::size_t quantile_index(double p, std::size_t n) {
  const double x = p * static_cast<double>(n);
  const double nearest = std::nearbyint(x);
  double m = std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))
                 ? nearest
                 : std::ceil(x);
  m = std::clamp(m, 1.0, static_cast<double>(n));
  return static_cast<std::size_t>(m);
}

double rate_from_sorted(const std::vector<double>& sorted, double threshold) {
  const auto first = std::lower_bound(sorted.begin(), sorted.end(), threshold);
  return static_cast<double>(sorted.end() - first) /
         static_cast<double>(sorted.size());
}

}  // namespace

bool QuantileThreshold::all_pass() const {
  return std::isinf(value) && value < 0.0;
}

QuantileThreshold pooled_quantile(std::span<const double> scores, double p) {
  if (scores.empty()) {
    throw std::invalid_argument("empty score sample");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("proportion must lie in [0, 1]");
  }
  if (p == 0.0) return {p, kAllPass};
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  return {p, sorted[quantile_index(p, sorted.size()) - 1]};
}

double selection_rate(std::span<const double> group_scores, double threshold) {
  if (group_scores.empty()) {
    throw std::invalid_argument("empty group");
  }
  std::size_t selected = 0;
  for (const double s : group_scores) {
    if (s >= threshold) ++selected;  // ties count as selected
  }
  return static_cast<double>(selected) /
         static_cast<double>(group_scores.size());
}

double selection_rate(std::span<const double> group_scores,
                      const QuantileThreshold& threshold) {
  return selection_rate(group_scores, threshold.value);
}

namespace detail {

SortedPartition sort_partition(const GroupPartition& part) {
  require_nonempty_groups(part);
  SortedPartition sp;
  sp.groups.reserve(part.groups.size());
  for (const auto& [key, scores] : part.groups) {
    std::vector<double> sorted(scores);
    std::sort(sorted.begin(), sorted.end());
    sp.pooled.insert(sp.pooled.end(), sorted.begin(), sorted.end());
    sp.groups.emplace_back(key, std::move(sorted));
  }
  std::sort(sp.pooled.begin(), sp.pooled.end());
  return sp;
}

GroupMetricVector ratios_from_rates(std::string metric_name,
                                    const std::map<GroupKey, double>& rates,
                                    const char* zero_message) {
  double max_rate = 0.0;
  for (const auto& [key, rate] : rates) max_rate = std::max(max_rate, rate);
  if (!(max_rate > 0.0)) {
    throw std::runtime_error(zero_message);
  }
  GroupMetricVector out;
  out.metric_name = std::move(metric_name);
  for (const auto& [key, rate] : rates) {
    out.values.emplace(key, rate / max_rate);
    if (out.reference_group.empty() && rate == max_rate) {
      out.reference_group = key;
    }
  }
  return out;
}

GroupMetricVector bin_di_eval(const SortedPartition& sorted, double p) {
  if (!(p >= 0.0) || p >= 1.0) {
    throw std::invalid_argument(
        p == 1.0 ? "p = 1 is excluded: every empirical rate ratio is 0/0 there"
                 : "proportion must lie in [0, 1)");
  }
  std::map<GroupKey, double> rates;
  if (p == 0.0) {
    for (const auto& [key, scores] : sorted.groups) rates.emplace(key, 1.0);
  } else {
    // The threshold is an attained score, so its group has a positive rate.
    const double threshold =
        sorted.pooled[quantile_index(p, sorted.pooled.size()) - 1];
    for (const auto& [key, scores] : sorted.groups) {
      rates.emplace(key, rate_from_sorted(scores, threshold));
    }
  }
  return ratios_from_rates("BinDI", rates, "all selection rates are zero");
}

}  // namespace detail

GroupMetricVector mean_di(const GroupPartition& partition) {
  require_nonempty_groups(partition);
  std::map<GroupKey, double> means;
  for (const auto& [key, scores] : partition.groups) {
    const double sum = std::accumulate(scores.begin(), scores.end(), 0.0);
    means.emplace(key, sum / static_cast<double>(scores.size()));
  }
  auto out = detail::ratios_from_rates(
      "MeanDI", means,
      "maximum group mean is not positive; shift scores to a positive scale");
  return out;
}

GroupMetricVector bin_di_at(const GroupPartition& partition, double p) {
  return detail::bin_di_eval(detail::sort_partition(partition), p);
}

GroupMetricVector med_di(const GroupPartition& partition) {
  auto out = bin_di_at(partition, 0.5);
  out.metric_name = "MedDI";
  return out;
}

GroupMetricVector thresh_di(const GroupPartition& partition, double z) {
  require_nonempty_groups(partition);
  std::map<GroupKey, double> rates;
  for (const auto& [key, scores] : partition.groups) {
    rates.emplace(key, selection_rate(scores, z));
  }
  return detail::ratios_from_rates("ThreshDI", rates,
                                   "no score reaches the threshold");
}

}  // namespace diaudit
