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

#ifndef DIAUDIT_SYNTHETIC_HPP_
#define DIAUDIT_SYNTHETIC_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "diaudit/curve.hpp"
#include "diaudit/dataset.hpp"
#include "diaudit/metrics.hpp"

namespace diaudit {

struct GaussianComponent {
  double mean = 0.0;
  double std_dev = 1.0;  // > 0
  double weight = 1.0;   // normalised per mixture
};

// Gaussian mixture; a single component is a plain normal.
struct GroupDistribution {
  std::vector<GaussianComponent> components;

  double cdf(double x) const;
  double mean() const;
};

struct SyntheticSpec {
  std::map<GroupKey, GroupDistribution> groups;
  // Group mixing proportions; empty means equal. Must sum to 1.
  std::map<GroupKey, double> proportions;

  double pooled_cdf(double x) const;
};

// The built-in two-group families, parameterised as:
//   1: a = N(50, 10-delta),           b = N(50, 10+delta)            delta in [0, 10)
//   2: a = N(50, sigma),              b = (N(20,10) + N(80,10)) / 2  sigma in (0, 10]
//   3: a = (N(30,10) + N(70,sigma))/2, b = (N(30,10) + N(80,sigma))/2 sigma in (0, 10]
SyntheticSpec example_spec(int example_id, double parameter);

// The integer parameter values each example is swept over: example 1 uses
// delta 0..9, examples 2 and 3 use sigma 1..10.
std::vector<double> example_parameter_range(int example_id);

// Deterministic mixture sampling: mt19937_64 streams feed a Box-Muller
// normal deviate (cosine branch); the component is picked by a uniform
// draw against the cumulative weights. n_per_group draws per group.
GroupPartition sample(const SyntheticSpec& spec, std::size_t n_per_group,
                      std::uint64_t seed);

// Population BinDI over the grid: the pooled quantile Q(p) is solved by
// bisection to |F(Q) - p| <= 1e-9 on a bracket covering every component
// mean +- 10 max std devs; group rates are 1 - F_g(Q).
DiCurve analytic_curve(const SyntheticSpec& spec);

// Ratio of population mixture means.
GroupMetricVector analytic_mean_di(const SyntheticSpec& spec);

enum class SweepMode { kAnalytic, kSampled };

struct SweepRow {
  double parameter = 0.0;
  GroupKey group;
  std::string metric;  // MeanDI | MedDI | AucDI | PfDI
  double value = 0.0;
};

struct SweepOptions {
  SweepMode mode = SweepMode::kAnalytic;
  std::vector<std::string> metrics = {"MeanDI", "MedDI", "AucDI", "PfDI"};
  std::size_t n_per_group = 100000;  // sampled mode
  std::uint64_t seed = 0;            // sampled mode; offset per parameter
  ProportionPrior prior = ProportionPrior::flat();
  double fairness_bound = 0.8;
};

// One row per (parameter, group, metric), parameters in ascending order.
std::vector<SweepRow> sweep(int example_id, std::span<const double> parameters,
                            const SweepOptions& options = {});

// CSV export, header "parameter,group,metric,value".
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace diaudit

#endif  // DIAUDIT_SYNTHETIC_HPP_
