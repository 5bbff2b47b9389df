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

#ifndef DIAUDIT_DATASET_HPP_
#define DIAUDIT_DATASET_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace diaudit {

// Tuple of category labels identifying a subgroup, one label per attribute
// in the partition's attribute_spec. A single-attribute key is a 1-tuple.
using GroupKey = std::vector<std::string>;

// Display form of a group key, labels joined with '|' ("Male|Black").
std::string group_label(const GroupKey& key);

// One scored candidate. Labels are aligned with the owning dataset's schema.
struct ScoreRecord {
  double score = 0.0;
  std::vector<std::string> labels;
};

struct ScoreDataset {
  std::vector<std::string> schema;   // attribute column names
  std::vector<ScoreRecord> records;  // surviving rows, in file order
  std::size_t dropped_count = 0;     // rows removed during ingestion
};

// Scores split into protected-attribute groups. Groups that fell below the
// size floor are kept in `excluded` with their counts, never silently
// dropped; group sizes plus excluded sizes add up to the dataset size.
struct GroupPartition {
  std::vector<std::string> attribute_spec;
  std::map<GroupKey, std::vector<double>> groups;
  std::map<GroupKey, std::size_t> excluded;
  std::size_t min_group_size = 1;

  std::size_t total_count() const;
};

// Reads a CSV file (comma separated, first row header, UTF-8, quoted fields
// honored). A row survives when its score field parses to a finite number
// and every requested attribute value is non-empty after whitespace
// trimming; all other rows are dropped and counted in dropped_count.
//
// Throws std::runtime_error for a missing file, a column absent from the
// header, or when no rows survive.
ScoreDataset ingest_csv(const std::filesystem::path& path,
                        const std::string& score_column,
                        const std::vector<std::string>& attribute_columns);

// Assigns every record to the group keyed by its tuple of labels for
// `attribute_spec` (two or more names give intersectional subgroups).
// Groups smaller than `min_group_size` move to the excluded list.
GroupPartition partition(const ScoreDataset& ds,
                         const std::vector<std::string>& attribute_spec,
                         std::size_t min_group_size = 1);

// Builds a partition directly from per-group score vectors (synthetic
// samples, tests). Every group must be non-empty.
GroupPartition make_partition(std::map<GroupKey, std::vector<double>> groups,
                              std::vector<std::string> attribute_spec = {
                                  "group"});

}  // namespace diaudit

#endif  // DIAUDIT_DATASET_HPP_
