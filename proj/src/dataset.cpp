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

#include "diaudit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace diaudit {
namespace {

std::string trim(const std::string& s) {
  const auto* ws = " \t\r\n\v\f";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

// Comma separated, '"'-quoted fields with doubled quotes inside; quoted
// fields may span commas and newlines. CRLF and LF both end records.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = fields.size() == 1 && fields[0].empty();
    if (!blank) rows.push_back(std::move(fields));
    fields.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field.empty() && !field_was_quoted) {
          in_quotes = true;
          field_was_quoted = true;
        } else {
          field += c;
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;  // CRLF
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
    }
  }
  if (!field.empty() || !fields.empty() || field_was_quoted) end_record();
  return rows;
}

bool parse_score(const std::string& raw, double* out) {
  const std::string t = trim(raw);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  double value = 0.0;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) return false;
  if (!std::isfinite(value)) return false;
  *out = value;
  return true;
}

std::size_t column_index(const std::vector<std::string>& header,
                         const std::string& name,
                         const std::filesystem::path& path) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::runtime_error("column '" + name + "' not found in " +
                           path.string());
}

}  // namespace

std::string group_label(const GroupKey& key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i > 0) out += '|';
    out += key[i];
  }
  return out;
}

std::size_t GroupPartition::total_count() const {
  std::size_t total = 0;
  for (const auto& [key, scores] : groups) total += scores.size();
  for (const auto& [key, count] : excluded) total += count;
  return total;
}

ScoreDataset ingest_csv(const std::filesystem::path& path,
                        const std::string& score_column,
                        const std::vector<std::string>& attribute_columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open input file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  auto rows = parse_csv(buffer.str());
  if (rows.empty()) {
    throw std::runtime_error("input file " + path.string() + " has no header");
  }

  auto header = rows.front();
  for (auto& h : header) h = trim(h);
  const std::size_t score_idx = column_index(header, score_column, path);
  std::vector<std::size_t> attr_idx;
  attr_idx.reserve(attribute_columns.size());
  for (const auto& name : attribute_columns) {
    attr_idx.push_back(column_index(header, name, path));
  }

  ScoreDataset ds;
  ds.schema = attribute_columns;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    ScoreRecord record;
    bool ok = score_idx < row.size() && parse_score(row[score_idx], &record.score);
    if (ok) {
      record.labels.reserve(attr_idx.size());
      for (const std::size_t idx : attr_idx) {
        std::string label = idx < row.size() ? trim(row[idx]) : std::string{};
        if (label.empty()) {
          ok = false;
          break;
        }
        record.labels.push_back(std::move(label));
      }
    }
    if (ok) {
      ds.records.push_back(std::move(record));
    } else {
      ++ds.dropped_count;
    }
  }
  if (ds.records.empty()) {
    throw std::runtime_error("no usable rows in " + path.string() +
                             " after dropping incomplete records");
  }
  return ds;
}

GroupPartition partition(const ScoreDataset& ds,
                         const std::vector<std::string>& attribute_spec,
                         std::size_t min_group_size) {
  if (attribute_spec.empty()) {
    throw std::invalid_argument("attribute spec is empty");
  }
  if (min_group_size < 1) {
    throw std::invalid_argument("min_group_size must be at least 1");
  }
  std::vector<std::size_t> indices;
  indices.reserve(attribute_spec.size());
  for (const auto& name : attribute_spec) {
    const auto it = std::find(ds.schema.begin(), ds.schema.end(), name);
    if (it == ds.schema.end()) {
      throw std::invalid_argument("attribute '" + name +
                                  "' is not in the dataset schema");
    }
    indices.push_back(static_cast<std::size_t>(it - ds.schema.begin()));
  }

  GroupPartition part;
  part.attribute_spec = attribute_spec;
  part.min_group_size = min_group_size;
  for (const auto& record : ds.records) {
    GroupKey key;
    key.reserve(indices.size());
    for (const std::size_t idx : indices) key.push_back(record.labels[idx]);
    part.groups[key].push_back(record.score);
  }
  for (auto it = part.groups.begin(); it != part.groups.end();) {
    if (it->second.size() < min_group_size) {
      part.excluded.emplace(it->first, it->second.size());
      it = part.groups.erase(it);
    } else {
      ++it;
    }
  }
  if (part.groups.empty()) {
    throw std::runtime_error("all groups fall below min_group_size " +
                             std::to_string(min_group_size));
  }
  return part;
}

GroupPartition make_partition(std::map<GroupKey, std::vector<double>> groups,
                              std::vector<std::string> attribute_spec) {
  if (groups.empty()) {
    throw std::invalid_argument("partition needs at least one group");
  }
  for (const auto& [key, scores] : groups) {
    if (scores.empty()) {
      throw std::invalid_argument("empty group: " + group_label(key));
    }
  }
  GroupPartition part;
  part.attribute_spec = std::move(attribute_spec);
  part.groups = std::move(groups);
  return part;
}

}  // namespace diaudit
