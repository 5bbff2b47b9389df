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

#ifndef DIAUDIT_REPORT_HPP_
#define DIAUDIT_REPORT_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diaudit/curve.hpp"
#include "diaudit/dataset.hpp"
#include "diaudit/ks.hpp"
#include "diaudit/metrics.hpp"

namespace diaudit {

struct ExcludedGroup {
  GroupKey group;
  std::size_t count = 0;
  std::string reason;
};

struct DatasetSummary {
  std::size_t record_count = 0;
  std::size_t dropped_count = 0;
  std::map<GroupKey, std::size_t> group_counts;
  std::vector<ExcludedGroup> excluded;
};

// Configuration echo carried inside the report.
struct ReportConfig {
  std::size_t grid_size = ProportionGrid::kSize;
  std::string prior = "flat";
  double fairness_bound = 0.8;
  std::optional<double> threshold;
  std::size_t min_group_size = 1;
  std::string input;
  std::string score_column;
};

struct MetricSection {
  GroupMetricVector values;
  std::map<GroupKey, bool> flags;
};

struct KsPair {
  GroupKey group_a;
  GroupKey group_b;
  double statistic = 0.0;
};

struct AuditReport {
  DatasetSummary summary;
  std::vector<std::string> attribute_spec;
  std::vector<MetricSection> metrics;
  std::optional<std::vector<KsPair>> ks;
  ReportConfig config;

  bool any_flagged() const;
};

// Flagged iff value < fairness_bound; a value of exactly the bound passes.
std::map<GroupKey, bool> flag(const GroupMetricVector& values,
                              double fairness_bound);

enum class ReportFormat { kJson, kCsv, kText };

// "json" | "csv" | "text", otherwise throws.
ReportFormat parse_format(const std::string& name);

// Deterministic serialisation. JSON keeps full precision; the text table
// lists metrics as rows and groups as columns at six decimals, marking
// flagged cells with '*'. CSV emits one metric,group,value,flag row each.
std::string render(const AuditReport& report, ReportFormat format);

// Several reports in one payload (one per attribute spec): JSON becomes an
// array, CSV gains a leading `attributes` column, text concatenates the
// tables. A single report renders exactly as render().
std::string render_all(std::span<const AuditReport> reports,
                       ReportFormat format);

// Metric selection and knobs for assembling a report. Valid names are
// MeanDI, MedDI, ThreshDI, AucDI, PfDI and KS; ThreshDI requires threshold.
struct AuditOptions {
  std::vector<std::string> metrics = {"MeanDI", "MedDI", "AucDI", "PfDI"};
  ProportionPrior prior = ProportionPrior::flat();
  double fairness_bound = 0.8;
  std::optional<double> threshold;
  std::string input;
  std::string score_column;
};

AuditReport build_audit_report(const ScoreDataset& ds,
                               const GroupPartition& partition,
                               const AuditOptions& options);

}  // namespace diaudit

#endif  // DIAUDIT_REPORT_HPP_
