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

#ifndef DIAUDIT_METRICS_HPP_
#define DIAUDIT_METRICS_HPP_

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "diaudit/dataset.hpp"

namespace diaudit {

// Threshold realised from the pooled sample. proportion == 0 carries the
// all-pass sentinel (-inf): every score is selected. For proportion p > 0
// the value is the order statistic s_(m) of the pooled sample, where m is
// the smallest index with m >= p*n (the product snapped to the nearest
// integer when within 1e-9 relative error, so grid proportions like 7/100
// hit the exact order statistic).
struct QuantileThreshold {
  double proportion = 0.0;
  double value = 0.0;

  bool all_pass() const;
};

QuantileThreshold pooled_quantile(std::span<const double> scores, double p);

// Fraction of group scores >= threshold; ties with the threshold count as
// selected. The all-pass sentinel yields 1.
double selection_rate(std::span<const double> group_scores, double threshold);
double selection_rate(std::span<const double> group_scores,
                      const QuantileThreshold& threshold);

// Per-group metric values in [0,1]. reference_group is the group that set
// the denominator; for the ratio metrics its value is exactly 1. Ties pick
// the first group in key order.
struct GroupMetricVector {
  std::string metric_name;
  std::map<GroupKey, double> values;
  GroupKey reference_group;
};

// Ratio of group mean scores to the maximum group mean. Requires the
// maximum mean to be strictly positive; scores on signed scales must be
// shifted by the caller first.
GroupMetricVector mean_di(const GroupPartition& partition);

// Binary disparate impact at proportion p: selection rates at the pooled
// quantile threshold, divided by the largest rate. p = 1 is rejected (the
// empirical rule degenerates to 0/0 there).
GroupMetricVector bin_di_at(const GroupPartition& partition, double p);

// bin_di_at at p = 0.5 (the pooled median as threshold).
GroupMetricVector med_di(const GroupPartition& partition);

// Disparate impact at a fixed raw-score threshold z. Errors when no score
// reaches z.
GroupMetricVector thresh_di(const GroupPartition& partition, double z);

namespace detail {

// Sorted copies shared across grid evaluations so a curve needs one sort.
struct SortedPartition {
  std::vector<double> pooled;  // ascending
  std::vector<std::pair<GroupKey, std::vector<double>>> groups;
};

SortedPartition sort_partition(const GroupPartition& partition);

// Same arithmetic as bin_di_at, applied to a prepared SortedPartition.
GroupMetricVector bin_di_eval(const SortedPartition& sorted, double p);

// values[i] = rates[i] / max rate; throws zero_message when max <= 0.
GroupMetricVector ratios_from_rates(std::string metric_name,
                                    const std::map<GroupKey, double>& rates,
                                    const char* zero_message);

}  // namespace detail

}  // namespace diaudit

#endif  // DIAUDIT_METRICS_HPP_
