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

#ifndef DIAUDIT_CURVE_HPP_
#define DIAUDIT_CURVE_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "diaudit/dataset.hpp"
#include "diaudit/metrics.hpp"

namespace diaudit {

// Evaluation grid p_k = k/100 for k = 0..99. p = 1 is excluded: at the top
// proportion the ratio of empirical selection rates is 0/0.
struct ProportionGrid {
  static constexpr std::size_t kSize = 100;

  static constexpr std::size_t size() { return kSize; }
  static constexpr double point(std::size_t k) {
    return static_cast<double>(k) / 100.0;
  }
};

// Discrete prior over the proportion grid. Weights are stored as given and
// normalised during aggregation (the sum-then-divide form keeps flat-prior
// results on exact hundredths).
class ProportionPrior {
 public:
  enum class Kind { kFlat, kDelta, kCustom };

  static ProportionPrior flat();
  // Full mass on the grid point nearest p_star, ties to the lower point.
  static ProportionPrior delta(double p_star);
  // Exactly ProportionGrid::kSize non-negative weights with a positive sum.
  static ProportionPrior custom(std::vector<double> weights);

  Kind kind() const { return kind_; }
  const std::vector<double>& raw_weights() const { return weights_; }
  double total_weight() const { return total_; }
  std::vector<double> normalized_weights() const;
  // "flat", "delta:<grid point>" or "custom".
  std::string describe() const;

 private:
  ProportionPrior(Kind kind, std::vector<double> weights);

  Kind kind_;
  std::vector<double> weights_;
  double total_ = 0.0;
};

// Per-group BinDI values over the grid plus the group that set the
// denominator at each point.
struct DiCurve {
  ProportionGrid grid;
  std::map<GroupKey, std::vector<double>> values;
  std::vector<GroupKey> reference;
};

// BinDI at every grid proportion; the pooled sort is done once and reused.
DiCurve di_curve(const GroupPartition& partition);

// Prior-weighted average of BinDI over the grid (area under the curve).
GroupMetricVector auc_di(const DiCurve& curve, const ProportionPrior& prior);

// Prior mass of grid points where BinDI >= fairness_bound.
GroupMetricVector pf_di(const DiCurve& curve, const ProportionPrior& prior,
                        double fairness_bound = 0.8);

// CSV export, header "proportion,group,bin_di", one row per grid point per
// group.
void write_curve_csv(std::ostream& out, const DiCurve& curve);

}  // namespace diaudit

#endif  // DIAUDIT_CURVE_HPP_
