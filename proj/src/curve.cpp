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

#include "diaudit/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "format_util.hpp"

namespace diaudit {
namespace {

void check_grid(const DiCurve& curve, const ProportionPrior& prior) {
  if (curve.values.empty()) {
    throw std::invalid_argument("curve has no groups");
  }
  if (prior.raw_weights().size() != ProportionGrid::kSize) {
    throw std::invalid_argument("mismatched grid lengths: prior");
  }
  for (const auto& [key, values] : curve.values) {
    if (values.size() != ProportionGrid::kSize) {
      throw std::invalid_argument("mismatched grid lengths: group " +
                                  group_label(key));
    }
  }
}

void set_reference_to_argmax(GroupMetricVector* out) {
  double best = -1.0;
  for (const auto& [key, value] : out->values) best = std::max(best, value);
  for (const auto& [key, value] : out->values) {
    if (value == best) {
      out->reference_group = key;
      break;
    }
  }
}

}  // namespace

ProportionPrior::ProportionPrior(Kind kind, std::vector<double> weights)
    : kind_(kind), weights_(std::move(weights)) {
  total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

ProportionPrior ProportionPrior::flat() {
  return {Kind::kFlat, std::vector<double>(ProportionGrid::kSize, 1.0)};
}

ProportionPrior ProportionPrior::delta(double p_star) {
  if (!(p_star >= 0.0 && p_star <= 1.0)) {
    throw std::invalid_argument("delta location must lie in [0, 1]");
  }
  // Nearest grid point; exact midpoints (and fp noise around them) go to
  // the lower point.
  const double idx = std::ceil(p_star * 100.0 - 0.5 - 1e-9);
  const auto k = static_cast<std::size_t>(
      std::clamp(idx, 0.0, static_cast<double>(ProportionGrid::kSize - 1)));
  std::vector<double> weights(ProportionGrid::kSize, 0.0);
  weights[k] = 1.0;
  return {Kind::kDelta, std::move(weights)};
}

ProportionPrior ProportionPrior::custom(std::vector<double> weights) {
  if (weights.size() != ProportionGrid::kSize) {
    throw std::invalid_argument("custom prior needs exactly " +
                                std::to_string(ProportionGrid::kSize) +
                                " weights");
  }
  double total = 0.0;
  for (const double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("prior weights must be non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("prior weights sum to zero");
  }
  return {Kind::kCustom, std::move(weights)};
}

std::vector<double> ProportionPrior::normalized_weights() const {
  std::vector<double> out(weights_);
  for (double& w : out) w /= total_;
  return out;
}

std::string ProportionPrior::describe() const {
  switch (kind_) {
    case Kind::kFlat:
      return "flat";
    case Kind::kDelta: {
      for (std::size_t k = 0; k < weights_.size(); ++k) {
        if (weights_[k] > 0.0) {
          return "delta:" + internal::format_double(ProportionGrid::point(k));
        }
      }
      return "delta";
    }
    case Kind::kCustom:
      return "custom";
  }
  return "unknown";
}

DiCurve di_curve(const GroupPartition& partition) {
  const auto sorted = detail::sort_partition(partition);
  DiCurve curve;
  for (const auto& [key, scores] : sorted.groups) {
    curve.values[key].reserve(ProportionGrid::kSize);
  }
  curve.reference.reserve(ProportionGrid::kSize);
  for (std::size_t k = 0; k < ProportionGrid::kSize; ++k) {
    auto point = detail::bin_di_eval(sorted, ProportionGrid::point(k));
    for (auto& [key, value] : point.values) {
      curve.values[key].push_back(value);
    }
    curve.reference.push_back(std::move(point.reference_group));
  }
  return curve;
}

GroupMetricVector auc_di(const DiCurve& curve, const ProportionPrior& prior) {
  check_grid(curve, prior);
  const auto& weights = prior.raw_weights();
  GroupMetricVector out;
  out.metric_name = "AucDI";
  for (const auto& [key, values] : curve.values) {
    double acc = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      acc += values[k] * weights[k];
    }
    out.values.emplace(key, acc / prior.total_weight());
  }
  set_reference_to_argmax(&out);
  return out;
}

GroupMetricVector pf_di(const DiCurve& curve, const ProportionPrior& prior,
                        double fairness_bound) {
  if (!(fairness_bound > 0.0 && fairness_bound <= 1.0)) {
    throw std::invalid_argument("fairness bound must lie in (0, 1]");
  }
  check_grid(curve, prior);
  const auto& weights = prior.raw_weights();
  GroupMetricVector out;
  out.metric_name = "PfDI";
  for (const auto& [key, values] : curve.values) {
    double acc = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k] >= fairness_bound) acc += weights[k];
    }
    out.values.emplace(key, acc / prior.total_weight());
  }
  set_reference_to_argmax(&out);
  return out;
}

void write_curve_csv(std::ostream& out, const DiCurve& curve) {
  out << "proportion,group,bin_di\n";
  for (std::size_t k = 0; k < ProportionGrid::kSize; ++k) {
    for (const auto& [key, values] : curve.values) {
      out << internal::format_double(ProportionGrid::point(k)) << ','
          << internal::csv_escape(group_label(key)) << ','
          << internal::format_double(values.at(k)) << '\n';
    }
  }
}

}  // namespace diaudit
