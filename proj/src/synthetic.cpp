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

#include "diaudit/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "format_util.hpp"

namespace diaudit {
namespace {

double normal_cdf(double x, double mean, double std_dev) {
  return 0.5 * std::erfc((mean - x) / (std_dev * std::numbers::sqrt2));
}

// Validates and returns a copy with component weights and group
// proportions normalised.
SyntheticSpec normalized(const SyntheticSpec& spec) {
  if (spec.groups.size() < 2) {
    throw std::invalid_argument("synthetic spec needs at least two groups");
  }
  SyntheticSpec out;
  for (const auto& [key, dist] : spec.groups) {
    if (dist.components.empty()) {
      throw std::invalid_argument("group " + group_label(key) +
                                  " has no mixture components");
    }
    double weight_sum = 0.0;
    for (const auto& c : dist.components) {
      if (!(c.std_dev > 0.0) || !std::isfinite(c.std_dev)) {
        throw std::invalid_argument("component std dev must be positive");
      }
      if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
        throw std::invalid_argument("component weight must be positive");
      }
      weight_sum += c.weight;
    }
    GroupDistribution norm = dist;
    for (auto& c : norm.components) c.weight /= weight_sum;
    out.groups.emplace(key, std::move(norm));
  }
  if (spec.proportions.empty()) {
    const double equal = 1.0 / static_cast<double>(spec.groups.size());
    for (const auto& [key, dist] : spec.groups) {
      out.proportions.emplace(key, equal);
    }
  } else {
    double total = 0.0;
    for (const auto& [key, dist] : out.groups) {
      const auto it = spec.proportions.find(key);
      if (it == spec.proportions.end() || !(it->second > 0.0)) {
        throw std::invalid_argument("group " + group_label(key) +
                                    " needs a positive proportion");
      }
      total += it->second;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw std::invalid_argument("group proportions must sum to 1");
    }
    for (const auto& [key, dist] : out.groups) {
      out.proportions.emplace(key, spec.proportions.at(key) / total);
    }
  }
  return out;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

double normal_deviate(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

const GaussianComponent& pick_component(const GroupDistribution& dist,
                                        double u) {
  double cumulative = 0.0;
  for (const auto& c : dist.components) {
    cumulative += c.weight;
    if (u < cumulative) return c;
  }
  return dist.components.back();
}

// Bisection on the pooled mixture CDF. The bracket holds all but ~1e-23 of
// the mass, so F is strictly increasing across it.
double invert_pooled_cdf(const SyntheticSpec& spec, double p, double lo,
                         double hi) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double err = spec.pooled_cdf(mid) - p;
    if (std::abs(err) <= 1e-9) return mid;
    (err < 0.0 ? lo : hi) = mid;
  }
  throw std::runtime_error(
      "quantile bisection did not converge; distribution spec is malformed");
}

}  // namespace

double GroupDistribution::cdf(double x) const {
  double acc = 0.0;
  for (const auto& c : components) {
    acc += c.weight * normal_cdf(x, c.mean, c.std_dev);
  }
  return acc;
}

double GroupDistribution::mean() const {
  double acc = 0.0;
  for (const auto& c : components) acc += c.weight * c.mean;
  return acc;
}

double SyntheticSpec::pooled_cdf(double x) const {
  double acc = 0.0;
  for (const auto& [key, dist] : groups) {
    acc += proportions.at(key) * dist.cdf(x);
  }
  return acc;
}

SyntheticSpec example_spec(int example_id, double parameter) {
  const GroupKey a{"a"};
  const GroupKey b{"b"};
  SyntheticSpec spec;
  switch (example_id) {
    case 1:
      if (!(parameter >= 0.0 && parameter < 10.0)) {
        throw std::invalid_argument(
            "example 1 takes delta in [0, 10); a std dev hits zero at 10");
      }
      spec.groups[a] = {{{50.0, 10.0 - parameter, 1.0}}};
      spec.groups[b] = {{{50.0, 10.0 + parameter, 1.0}}};
      break;
    case 2:
      if (!(parameter > 0.0 && parameter <= 10.0)) {
        throw std::invalid_argument("example 2 takes sigma in (0, 10]");
      }
      spec.groups[a] = {{{50.0, parameter, 1.0}}};
      spec.groups[b] = {{{20.0, 10.0, 0.5}, {80.0, 10.0, 0.5}}};
      break;
    case 3:
      if (!(parameter > 0.0 && parameter <= 10.0)) {
        throw std::invalid_argument("example 3 takes sigma in (0, 10]");
      }
      spec.groups[a] = {{{30.0, 10.0, 0.5}, {70.0, parameter, 0.5}}};
      spec.groups[b] = {{{30.0, 10.0, 0.5}, {80.0, parameter, 0.5}}};
      break;
    default:
      throw std::invalid_argument("unknown example id (use 1, 2 or 3)");
  }
  spec.proportions[a] = 0.5;
  spec.proportions[b] = 0.5;
  return spec;
}

std::vector<double> example_parameter_range(int example_id) {
  switch (example_id) {
    case 1:
      return {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    case 2:
    case 3:
      return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    default:
      throw std::invalid_argument("unknown example id (use 1, 2 or 3)");
  }
}

GroupPartition sample(const SyntheticSpec& spec, std::size_t n_per_group,
                      std::uint64_t seed) {
  if (n_per_group < 1) {
    throw std::invalid_argument("n_per_group must be at least 1");
  }
  const SyntheticSpec norm = normalized(spec);
  std::mt19937_64 rng(seed);
  std::map<GroupKey, std::vector<double>> groups;
  for (const auto& [key, dist] : norm.groups) {
    auto& draws = groups[key];
    draws.reserve(n_per_group);
    for (std::size_t i = 0; i < n_per_group; ++i) {
      const auto& c = pick_component(dist, uniform01(rng));
      draws.push_back(c.mean + c.std_dev * normal_deviate(rng));
    }
  }
  return make_partition(std::move(groups));
}

DiCurve analytic_curve(const SyntheticSpec& spec) {
  const SyntheticSpec norm = normalized(spec);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double max_std = 0.0;
  for (const auto& [key, dist] : norm.groups) {
    for (const auto& c : dist.components) {
      lo = std::min(lo, c.mean);
      hi = std::max(hi, c.mean);
      max_std = std::max(max_std, c.std_dev);
    }
  }
  lo -= 10.0 * max_std;
  hi += 10.0 * max_std;

  DiCurve curve;
  for (const auto& [key, dist] : norm.groups) {
    curve.values[key].reserve(ProportionGrid::kSize);
  }
  curve.reference.reserve(ProportionGrid::kSize);
  for (std::size_t k = 0; k < ProportionGrid::kSize; ++k) {
    const double p = ProportionGrid::point(k);
    std::map<GroupKey, double> rates;
    if (k == 0) {
      for (const auto& [key, dist] : norm.groups) rates.emplace(key, 1.0);
    } else {
      const double q = invert_pooled_cdf(norm, p, lo, hi);
      for (const auto& [key, dist] : norm.groups) {
        rates.emplace(key, 1.0 - dist.cdf(q));
      }
    }
    auto point = detail::ratios_from_rates(
        "BinDI", rates, "all population selection rates are zero");
    for (auto& [key, value] : point.values) {
      curve.values[key].push_back(value);
    }
    curve.reference.push_back(std::move(point.reference_group));
  }
  return curve;
}

GroupMetricVector analytic_mean_di(const SyntheticSpec& spec) {
  const SyntheticSpec norm = normalized(spec);
  std::map<GroupKey, double> means;
  for (const auto& [key, dist] : norm.groups) {
    means.emplace(key, dist.mean());
  }
  return detail::ratios_from_rates(
      "MeanDI", means,
      "maximum population mean is not positive; shift the scale");
}

std::vector<SweepRow> sweep(int example_id, std::span<const double> parameters,
                            const SweepOptions& options) {
  static const std::vector<std::string> kOrder = {"MeanDI", "MedDI", "AucDI",
                                                  "PfDI"};
  if (options.metrics.empty()) {
    throw std::invalid_argument("sweep needs at least one metric");
  }
  for (const auto& name : options.metrics) {
    if (std::find(kOrder.begin(), kOrder.end(), name) == kOrder.end()) {
      throw std::invalid_argument("unknown sweep metric: " + name);
    }
  }
  std::vector<double> params(parameters.begin(), parameters.end());
  std::sort(params.begin(), params.end());

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double parameter = params[i];
    const SyntheticSpec spec = example_spec(example_id, parameter);
    DiCurve curve;
    GroupMetricVector mean;
    if (options.mode == SweepMode::kAnalytic) {
      curve = analytic_curve(spec);
      mean = analytic_mean_di(spec);
    } else {
      const auto part =
          sample(spec, options.n_per_group,
                 options.seed + static_cast<std::uint64_t>(i));
      curve = di_curve(part);
      mean = mean_di(part);
    }
    // The median metric is the curve at p = 0.5 (grid index 50).
    GroupMetricVector med;
    med.metric_name = "MedDI";
    for (const auto& [key, values] : curve.values) {
      med.values.emplace(key, values[ProportionGrid::kSize / 2]);
    }
    med.reference_group = curve.reference[ProportionGrid::kSize / 2];
    const auto auc = auc_di(curve, options.prior);
    const auto pf = pf_di(curve, options.prior, options.fairness_bound);

    const std::map<std::string, const GroupMetricVector*> by_name = {
        {"MeanDI", &mean}, {"MedDI", &med}, {"AucDI", &auc}, {"PfDI", &pf}};
    for (const auto& [key, values] : curve.values) {
      for (const auto& name : kOrder) {
        if (std::find(options.metrics.begin(), options.metrics.end(), name) ==
            options.metrics.end()) {
          continue;
        }
        rows.push_back(
            {parameter, key, name, by_name.at(name)->values.at(key)});
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "parameter,group,metric,value\n";
  for (const auto& row : rows) {
    out << internal::format_double(row.parameter) << ','
        << internal::csv_escape(group_label(row.group)) << ',' << row.metric
        << ',' << internal::format_double(row.value) << '\n';
  }
}

}  // namespace diaudit
