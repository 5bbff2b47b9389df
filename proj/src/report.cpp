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

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "format_util.hpp"

namespace diaudit {
namespace {

const std::vector<std::string> kMetricOrder = {"MeanDI", "MedDI", "ThreshDI",
                                               "AucDI", "PfDI"};

bool selected(const std::vector<std::string>& metrics,
              const std::string& name) {
  return std::find(metrics.begin(), metrics.end(), name) != metrics.end();
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

nlohmann::ordered_json report_json(const AuditReport& report) {
  nlohmann::ordered_json j;
  auto& summary = j["summary"];
  summary["record_count"] = report.summary.record_count;
  summary["dropped_count"] = report.summary.dropped_count;
  summary["attributes"] = report.attribute_spec;
  auto& counts = summary["group_counts"];
  counts = nlohmann::ordered_json::object();
  for (const auto& [key, count] : report.summary.group_counts) {
    counts[group_label(key)] = count;
  }
  auto& excluded = summary["excluded"];
  excluded = nlohmann::ordered_json::array();
  for (const auto& ex : report.summary.excluded) {
    excluded.push_back({{"group", group_label(ex.group)},
                        {"count", ex.count},
                        {"reason", ex.reason}});
  }

  auto& config = j["config"];
  config["grid_size"] = report.config.grid_size;
  config["prior"] = report.config.prior;
  config["fairness_bound"] = report.config.fairness_bound;
  if (report.config.threshold) {
    config["threshold"] = *report.config.threshold;
  }
  config["min_group_size"] = report.config.min_group_size;
  if (!report.config.input.empty()) config["input"] = report.config.input;
  if (!report.config.score_column.empty()) {
    config["score_column"] = report.config.score_column;
  }

  auto& metrics = j["metrics"];
  metrics = nlohmann::ordered_json::array();
  for (const auto& section : report.metrics) {
    nlohmann::ordered_json entry;
    entry["name"] = section.values.metric_name;
    auto& groups = entry["groups"];
    groups = nlohmann::ordered_json::object();
    for (const auto& [key, value] : section.values.values) {
      groups[group_label(key)] = {{"value", value},
                                  {"flag", section.flags.at(key)}};
    }
    entry["reference_group"] = group_label(section.values.reference_group);
    metrics.push_back(std::move(entry));
  }

  if (report.ks) {
    auto& ks = j["ks"];
    ks = nlohmann::ordered_json::array();
    for (const auto& pair : *report.ks) {
      ks.push_back({{"group_a", group_label(pair.group_a)},
                    {"group_b", group_label(pair.group_b)},
                    {"statistic", pair.statistic}});
    }
  }
  return j;
}

void render_csv_rows(std::ostream& out, const AuditReport& report,
                     bool with_attributes) {
  const std::string attrs =
      internal::csv_escape(join(report.attribute_spec, "|"));
  for (const auto& section : report.metrics) {
    for (const auto& [key, value] : section.values.values) {
      if (with_attributes) out << attrs << ',';
      out << section.values.metric_name << ','
          << internal::csv_escape(group_label(key)) << ','
          << internal::format_double(value) << ','
          << (section.flags.at(key) ? "true" : "false") << '\n';
    }
  }
}

void render_text(std::ostream& out, const AuditReport& report) {
  out << "attributes: " << join(report.attribute_spec, ",") << '\n';
  out << "records: " << report.summary.record_count
      << " (dropped: " << report.summary.dropped_count << ")\n";
  out << "groups:";
  for (const auto& [key, count] : report.summary.group_counts) {
    out << ' ' << group_label(key) << '=' << count;
  }
  out << '\n';
  for (const auto& ex : report.summary.excluded) {
    out << "excluded: " << group_label(ex.group) << '=' << ex.count << " ("
        << ex.reason << ")\n";
  }
  out << "config: grid=" << report.config.grid_size
      << ", prior=" << report.config.prior
      << ", bound=" << internal::format_double(report.config.fairness_bound);
  if (report.config.threshold) {
    out << ", threshold=" << internal::format_double(*report.config.threshold);
  }
  out << ", min_group=" << report.config.min_group_size << '\n';

  if (!report.metrics.empty()) {
    // Metrics as rows, groups as columns; flagged cells carry '*'.
    std::vector<GroupKey> keys;
    for (const auto& [key, count] : report.summary.group_counts) {
      keys.push_back(key);
    }
    std::size_t name_width = 6;  // "metric"
    for (const auto& section : report.metrics) {
      name_width = std::max(name_width, section.values.metric_name.size());
    }
    std::vector<std::size_t> widths;
    for (const auto& key : keys) {
      std::size_t w = group_label(key).size();
      for (const auto& section : report.metrics) {
        std::string cell =
            internal::format_fixed6(section.values.values.at(key));
        if (section.flags.at(key)) cell += '*';
        w = std::max(w, cell.size());
      }
      widths.push_back(w);
    }
    auto pad = [&out](const std::string& s, std::size_t width, bool last) {
      out << s;
      if (last) return;  // no trailing spaces
      for (std::size_t i = s.size(); i < width; ++i) out << ' ';
    };
    out << '\n';
    pad("metric", name_width, false);
    for (std::size_t g = 0; g < keys.size(); ++g) {
      out << "  ";
      pad(group_label(keys[g]), widths[g], g + 1 == keys.size());
    }
    out << '\n';
    bool any_flag = false;
    for (const auto& section : report.metrics) {
      pad(section.values.metric_name, name_width, false);
      for (std::size_t g = 0; g < keys.size(); ++g) {
        std::string cell =
            internal::format_fixed6(section.values.values.at(keys[g]));
        if (section.flags.at(keys[g])) {
          cell += '*';
          any_flag = true;
        }
        out << "  ";
        pad(cell, widths[g], g + 1 == keys.size());
      }
      out << '\n';
    }
    if (any_flag) {
      out << "\n* value below fairness bound "
          << internal::format_double(report.config.fairness_bound) << '\n';
    }
  }

  if (report.ks) {
    out << "\nks:\n";
    for (const auto& pair : *report.ks) {
      out << "  " << group_label(pair.group_a) << " vs "
          << group_label(pair.group_b) << ": "
          << internal::format_fixed6(pair.statistic) << '\n';
    }
  }
}

}  // namespace

bool AuditReport::any_flagged() const {
  for (const auto& section : metrics) {
    for (const auto& [key, flagged] : section.flags) {
      if (flagged) return true;
    }
  }
  return false;
}

std::map<GroupKey, bool> flag(const GroupMetricVector& values,
                              double fairness_bound) {
  if (!(fairness_bound > 0.0 && fairness_bound <= 1.0)) {
    throw std::invalid_argument("fairness bound must lie in (0, 1]");
  }
  std::map<GroupKey, bool> out;
  for (const auto& [key, value] : values.values) {
    out.emplace(key, value < fairness_bound);
  }
  return out;
}

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "text") return ReportFormat::kText;
  throw std::invalid_argument("unknown report format: " + name);
}

std::string render(const AuditReport& report, ReportFormat format) {
  return render_all({&report, 1}, format);
}

std::string render_all(std::span<const AuditReport> reports,
                       ReportFormat format) {
  if (reports.empty()) {
    throw std::invalid_argument("nothing to render");
  }
  switch (format) {
    case ReportFormat::kJson: {
      if (reports.size() == 1) {
        return report_json(reports.front()).dump(2) + "\n";
      }
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& report : reports) arr.push_back(report_json(report));
      return arr.dump(2) + "\n";
    }
    case ReportFormat::kCsv: {
      std::ostringstream out;
      const bool with_attributes = reports.size() > 1;
      out << (with_attributes ? "attributes,metric,group,value,flag\n"
                              : "metric,group,value,flag\n");
      for (const auto& report : reports) {
        render_csv_rows(out, report, with_attributes);
      }
      return out.str();
    }
    case ReportFormat::kText: {
      std::ostringstream out;
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i > 0) out << '\n';
        render_text(out, reports[i]);
      }
      return out.str();
    }
  }
  throw std::invalid_argument("unknown report format");
}

AuditReport build_audit_report(const ScoreDataset& ds,
                               const GroupPartition& partition,
                               const AuditOptions& options) {
  if (options.metrics.empty()) {
    throw std::invalid_argument("at least one metric must be selected");
  }
  for (const auto& name : options.metrics) {
    if (name != "KS" && !selected(kMetricOrder, name)) {
      throw std::invalid_argument("unknown metric: " + name);
    }
  }
  if (selected(options.metrics, "ThreshDI") && !options.threshold) {
    throw std::invalid_argument("ThreshDI requires a threshold score");
  }

  AuditReport report;
  report.summary.record_count = ds.records.size();
  report.summary.dropped_count = ds.dropped_count;
  for (const auto& [key, scores] : partition.groups) {
    report.summary.group_counts.emplace(key, scores.size());
  }
  for (const auto& [key, count] : partition.excluded) {
    report.summary.excluded.push_back(
        {key, count,
         "below min group size " + std::to_string(partition.min_group_size)});
  }
  report.attribute_spec = partition.attribute_spec;

  std::optional<DiCurve> curve;
  if (selected(options.metrics, "AucDI") ||
      selected(options.metrics, "PfDI")) {
    curve = di_curve(partition);
  }
  for (const auto& name : kMetricOrder) {
    if (!selected(options.metrics, name)) continue;
    GroupMetricVector values;
    if (name == "MeanDI") {
      values = mean_di(partition);
    } else if (name == "MedDI") {
      values = med_di(partition);
    } else if (name == "ThreshDI") {
      values = thresh_di(partition, *options.threshold);
    } else if (name == "AucDI") {
      values = auc_di(*curve, options.prior);
    } else {
      values = pf_di(*curve, options.prior, options.fairness_bound);
    }
    auto flags = flag(values, options.fairness_bound);
    report.metrics.push_back({std::move(values), std::move(flags)});
  }

  if (selected(options.metrics, "KS")) {
    std::vector<KsPair> pairs;
    for (auto it_a = partition.groups.begin(); it_a != partition.groups.end();
         ++it_a) {
      for (auto it_b = std::next(it_a); it_b != partition.groups.end();
           ++it_b) {
        pairs.push_back({it_a->first, it_b->first,
                         ks_statistic(it_a->second, it_b->second).statistic});
      }
    }
    report.ks = std::move(pairs);
  }

  report.config.prior = options.prior.describe();
  report.config.fairness_bound = options.fairness_bound;
  report.config.threshold = options.threshold;
  report.config.min_group_size = partition.min_group_size;
  report.config.input = options.input;
  report.config.score_column = options.score_column;
  return report;
}

}  // namespace diaudit
