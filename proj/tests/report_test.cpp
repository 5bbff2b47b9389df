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

#include "diaudit/report.hpp"

#include <stdexcept>

#include "gtest/gtest.h"
#include "json.hpp"

namespace diaudit {
namespace {

ScoreDataset small_dataset() {
  ScoreDataset ds;
  ds.schema = {"g"};
  const std::vector<double> a = {1, 2, 3, 10};
  const std::vector<double> b = {4, 5, 6, 7};
  for (const double s : a) ds.records.push_back({s, {"a"}});
  for (const double s : b) ds.records.push_back({s, {"b"}});
  ds.dropped_count = 2;
  return ds;
}

AuditOptions all_metric_options() {
  AuditOptions options;
  options.metrics = {"MeanDI", "MedDI", "ThreshDI", "AucDI", "PfDI", "KS"};
  options.threshold = 4.0;
  options.input = "fixture.csv";
  options.score_column = "score";
  return options;
}

TEST(FlagTest, StrictBelowBound) {
  GroupMetricVector v;
  v.metric_name = "MedDI";
  v.values[{"x"}] = 0.718925;
  v.values[{"y"}] = 1.0;
  v.values[{"z"}] = 0.8;
  const auto flags = flag(v, 0.8);
  EXPECT_TRUE(flags.at({"x"}));
  EXPECT_FALSE(flags.at({"y"}));
  EXPECT_FALSE(flags.at({"z"}));  // exactly the bound is not flagged
}

TEST(FlagTest, RejectsBadBound) {
  GroupMetricVector v;
  v.values[{"x"}] = 0.5;
  EXPECT_THROW(flag(v, 0.0), std::invalid_argument);
  EXPECT_THROW(flag(v, 1.5), std::invalid_argument);
}

TEST(BuildReportTest, EveryGroupInEveryMetric) {
  const auto ds = small_dataset();
  const auto part = partition(ds, {"g"}, 1);
  const auto report = build_audit_report(ds, part, all_metric_options());
  EXPECT_EQ(report.metrics.size(), 5u);
  for (const auto& section : report.metrics) {
    EXPECT_EQ(section.values.values.size(), part.groups.size());
    EXPECT_EQ(section.flags.size(), part.groups.size());
  }
  ASSERT_TRUE(report.ks.has_value());
  EXPECT_EQ(report.ks->size(), 1u);  // one unordered pair for two groups
  EXPECT_EQ(report.summary.record_count, 8u);
  EXPECT_EQ(report.summary.dropped_count, 2u);
  EXPECT_TRUE(report.any_flagged());  // MedDI for group a is 0.25
}

TEST(BuildReportTest, MetricOrderIsCanonical) {
  const auto ds = small_dataset();
  const auto part = partition(ds, {"g"}, 1);
  AuditOptions options = all_metric_options();
  options.metrics = {"PfDI", "MeanDI"};  // selection order does not matter
  options.threshold.reset();
  const auto report = build_audit_report(ds, part, options);
  ASSERT_EQ(report.metrics.size(), 2u);
  EXPECT_EQ(report.metrics[0].values.metric_name, "MeanDI");
  EXPECT_EQ(report.metrics[1].values.metric_name, "PfDI");
}

TEST(BuildReportTest, ThreshRequiresThreshold) {
  const auto ds = small_dataset();
  const auto part = partition(ds, {"g"}, 1);
  AuditOptions options;
  options.metrics = {"ThreshDI"};
  EXPECT_THROW(build_audit_report(ds, part, options), std::invalid_argument);
}

TEST(BuildReportTest, RejectsEmptyOrUnknownSelection) {
  const auto ds = small_dataset();
  const auto part = partition(ds, {"g"}, 1);
  AuditOptions options;
  options.metrics = {};
  EXPECT_THROW(build_audit_report(ds, part, options), std::invalid_argument);
  options.metrics = {"Gini"};
  EXPECT_THROW(build_audit_report(ds, part, options), std::invalid_argument);
}

TEST(RenderTest, JsonRoundTripsValuesExactly) {
  const auto ds = small_dataset();
  const auto part = partition(ds, {"g"}, 1);
  const auto report = build_audit_report(ds, part, all_metric_options());
  const auto payload = render(report, ReportFormat::kJson);
  const auto parsed = nlohmann::json::parse(payload);

  EXPECT_EQ(parsed["summary"]["record_count"], 8);
  EXPECT_EQ(parsed["summary"]["dropped_count"], 2);
  for (const auto& section : report.metrics) {
    bool found = false;
    for (const auto& entry : parsed["metrics"]) {
      if (entry["name"] != section.values.metric_name) continue;
      found = true;
      for (const auto& [key, value] : section.values.values) {
        const auto& cell = entry["groups"][group_label(key)];
        EXPECT_EQ(cell["value"].get<double>(), value);
        EXPECT_EQ(cell["flag"].get<bool>(), section.flags.at(key));
      }
      EXPECT_EQ(entry["reference_group"],
                group_label(section.values.reference_group));
    }
    EXPECT_TRUE(found) << section.values.metric_name;
  }
  ASSERT_TRUE(parsed.contains("ks"));
  EXPECT_EQ(parsed["ks"].size(), 1u);
}

TEST(RenderTest, DeterministicBytes) {
  const auto ds = small_dataset();
  const auto part = partition(ds, {"g"}, 1);
  const auto report = build_audit_report(ds, part, all_metric_options());
  for (const auto format :
       {ReportFormat::kJson, ReportFormat::kCsv, ReportFormat::kText}) {
    EXPECT_EQ(render(report, format), render(report, format));
  }
}

TEST(RenderTest, CsvShape) {
  const auto ds = small_dataset();
  const auto part = partition(ds, {"g"}, 1);
  const auto report = build_audit_report(ds, part, all_metric_options());
  const auto payload = render(report, ReportFormat::kCsv);
  EXPECT_EQ(payload.rfind("metric,group,value,flag\n", 0), 0u);
  std::size_t lines = 0;
  for (const char c : payload) {
    if (c == '\n') ++lines;
  }
  EXPECT_EQ(lines, 1u + 5u * 2u);  // header + 5 metrics x 2 groups
  EXPECT_NE(payload.find("MedDI,a,0.25,true\n"), std::string::npos);
}

TEST(RenderTest, TextTableMarksFlags) {
  const auto ds = small_dataset();
  const auto part = partition(ds, {"g"}, 1);
  const auto report = build_audit_report(ds, part, all_metric_options());
  const auto payload = render(report, ReportFormat::kText);
  EXPECT_NE(payload.find("metric"), std::string::npos);
  EXPECT_NE(payload.find("0.250000*"), std::string::npos);  // flagged cell
  EXPECT_NE(payload.find("records: 8 (dropped: 2)"), std::string::npos);
  EXPECT_NE(payload.find("a vs b:"), std::string::npos);
}

TEST(RenderTest, ExcludedGroupsAreListed) {
  ScoreDataset ds;
  ds.schema = {"g"};
  for (int i = 0; i < 5; ++i) ds.records.push_back({1.0 * i, {"big"}});
  for (int i = 0; i < 5; ++i) ds.records.push_back({2.0 * i, {"big2"}});
  ds.records.push_back({9.0, {"tiny"}});
  const auto part = partition(ds, {"g"}, 2);
  AuditOptions options;
  options.metrics = {"MedDI"};
  const auto report = build_audit_report(ds, part, options);

  const auto text = render(report, ReportFormat::kText);
  EXPECT_NE(text.find("excluded: tiny=1"), std::string::npos);

  const auto parsed = nlohmann::json::parse(render(report, ReportFormat::kJson));
  ASSERT_EQ(parsed["summary"]["excluded"].size(), 1u);
  EXPECT_EQ(parsed["summary"]["excluded"][0]["group"], "tiny");
  EXPECT_EQ(parsed["summary"]["excluded"][0]["count"], 1);
}

TEST(RenderTest, MultiReportFormats) {
  const auto ds = small_dataset();
  const auto part = partition(ds, {"g"}, 1);
  AuditOptions options;
  options.metrics = {"MedDI"};
  const auto report = build_audit_report(ds, part, options);
  const std::vector<AuditReport> reports = {report, report};

  const auto json_payload = render_all(reports, ReportFormat::kJson);
  const auto parsed = nlohmann::json::parse(json_payload);
  ASSERT_TRUE(parsed.is_array());
  EXPECT_EQ(parsed.size(), 2u);

  const auto csv_payload = render_all(reports, ReportFormat::kCsv);
  EXPECT_EQ(csv_payload.rfind("attributes,metric,group,value,flag\n", 0), 0u);
}

TEST(RenderTest, UnknownFormatNameThrows) {
  EXPECT_THROW(parse_format("yaml"), std::invalid_argument);
  EXPECT_EQ(parse_format("json"), ReportFormat::kJson);
  EXPECT_EQ(parse_format("csv"), ReportFormat::kCsv);
  EXPECT_EQ(parse_format("text"), ReportFormat::kText);
}

}  // namespace
}  // namespace diaudit
