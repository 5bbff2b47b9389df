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
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"

namespace diaudit {
namespace {

class TempCsv {
 public:
  explicit TempCsv(const std::string& contents) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("diaudit_dataset_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + ".csv");
    std::ofstream out(path_, std::ios::binary);
    out << contents;
  }
  ~TempCsv() { std::filesystem::remove(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

TEST(IngestCsvTest, DropsRowWithEmptyScore) {
  TempCsv file(
      "score,gender\n"
      "10,M\n"
      ",F\n"
      "30,M\n"
      "40,F\n"
      "50,M\n");
  const auto ds = ingest_csv(file.path(), "score", {"gender"});
  EXPECT_EQ(ds.records.size(), 4u);
  EXPECT_EQ(ds.dropped_count, 1u);
}

TEST(IngestCsvTest, AllRowsValid) {
  TempCsv file("score,gender\n1,M\n2,F\n3,M\n");
  const auto ds = ingest_csv(file.path(), "score", {"gender"});
  EXPECT_EQ(ds.dropped_count, 0u);
  EXPECT_EQ(ds.records.size(), 3u);
  EXPECT_DOUBLE_EQ(ds.records[0].score, 1.0);
  EXPECT_EQ(ds.records[0].labels, std::vector<std::string>{"M"});
}

TEST(IngestCsvTest, UnparseableScoresAreDropped) {
  std::string contents = "score,gender\n";
  for (int i = 0; i < 8; ++i) {
    contents += std::to_string(i) + ",M\n";
  }
  contents += "abc,F\nabc,F\n";
  TempCsv file(contents);
  const auto ds = ingest_csv(file.path(), "score", {"gender"});
  EXPECT_EQ(ds.records.size(), 8u);
  EXPECT_EQ(ds.dropped_count, 2u);
}

TEST(IngestCsvTest, NonFiniteScoresAreDropped) {
  TempCsv file("score,gender\nnan,M\ninf,F\n1,M\n");
  const auto ds = ingest_csv(file.path(), "score", {"gender"});
  EXPECT_EQ(ds.records.size(), 1u);
  EXPECT_EQ(ds.dropped_count, 2u);
}

TEST(IngestCsvTest, MissingAttributeDropsRow) {
  TempCsv file("score,gender,ethnicity\n1,M,x\n2,,x\n3,F,  \n");
  const auto ds = ingest_csv(file.path(), "score", {"gender", "ethnicity"});
  EXPECT_EQ(ds.records.size(), 1u);
  EXPECT_EQ(ds.dropped_count, 2u);
}

TEST(IngestCsvTest, QuotedFieldsAndTrimming) {
  TempCsv file(
      "score, group \n"
      " 10 ,\"Hispanic/Latino\"\n"
      "20,\"Two, or more\"\n"
      "30,\"say \"\"hi\"\"\"\n");
  const auto ds = ingest_csv(file.path(), "score", {"group"});
  ASSERT_EQ(ds.records.size(), 3u);
  EXPECT_EQ(ds.records[0].labels[0], "Hispanic/Latino");
  EXPECT_EQ(ds.records[1].labels[0], "Two, or more");
  EXPECT_EQ(ds.records[2].labels[0], "say \"hi\"");
  EXPECT_DOUBLE_EQ(ds.records[0].score, 10.0);
}

TEST(IngestCsvTest, CrlfAndTrailingNewlineHandled) {
  TempCsv file("score,gender\r\n1,M\r\n2,F\r\n");
  const auto ds = ingest_csv(file.path(), "score", {"gender"});
  EXPECT_EQ(ds.records.size(), 2u);
  EXPECT_EQ(ds.dropped_count, 0u);
}

TEST(IngestCsvTest, MissingFileThrows) {
  EXPECT_THROW(ingest_csv("/nonexistent/never.csv", "score", {"g"}),
               std::runtime_error);
}

TEST(IngestCsvTest, MissingColumnThrowsWithName) {
  TempCsv file("score,gender\n1,M\n");
  try {
    ingest_csv(file.path(), "score", {"ethnicity"});
    FAIL() << "expected runtime_error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("ethnicity"), std::string::npos);
  }
}

TEST(IngestCsvTest, AllRowsDroppedThrows) {
  TempCsv file("score,gender\nabc,M\n,F\n");
  EXPECT_THROW(ingest_csv(file.path(), "score", {"gender"}),
               std::runtime_error);
}

TEST(IngestCsvTest, Deterministic) {
  const std::string contents = "score,gender\n1,M\n2,F\nabc,M\n";
  TempCsv file_a(contents);
  TempCsv file_b(contents);
  const auto a = ingest_csv(file_a.path(), "score", {"gender"});
  const auto b = ingest_csv(file_b.path(), "score", {"gender"});
  ASSERT_EQ(a.records.size(), b.records.size());
  EXPECT_EQ(a.dropped_count, b.dropped_count);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].score, b.records[i].score);
    EXPECT_EQ(a.records[i].labels, b.records[i].labels);
  }
}

ScoreDataset six_record_dataset() {
  ScoreDataset ds;
  ds.schema = {"gender"};
  for (int i = 0; i < 6; ++i) {
    ds.records.push_back(
        {static_cast<double>(i), {i % 2 == 0 ? "M" : "F"}});
  }
  return ds;
}

TEST(PartitionTest, BalancedTwoGroups) {
  const auto part = partition(six_record_dataset(), {"gender"}, 1);
  ASSERT_EQ(part.groups.size(), 2u);
  EXPECT_EQ(part.groups.at({"F"}).size(), 3u);
  EXPECT_EQ(part.groups.at({"M"}).size(), 3u);
  EXPECT_TRUE(part.excluded.empty());
}

TEST(PartitionTest, IntersectionalCrossProduct) {
  ScoreDataset ds;
  ds.schema = {"gender", "ethnicity"};
  for (const auto* g : {"M", "F"}) {
    for (const auto* e : {"X", "Y"}) {
      ds.records.push_back({1.0, {g, e}});
      ds.records.push_back({2.0, {g, e}});
    }
  }
  const auto part = partition(ds, {"gender", "ethnicity"}, 1);
  EXPECT_EQ(part.groups.size(), 4u);
  EXPECT_EQ(part.groups.at({"M", "X"}).size(), 2u);
}

TEST(PartitionTest, SmallGroupExcludedNotDropped) {
  ScoreDataset ds;
  ds.schema = {"gender"};
  for (int i = 0; i < 5; ++i) ds.records.push_back({1.0 * i, {"M"}});
  ds.records.push_back({7.0, {"F"}});
  ds.records.push_back({8.0, {"F"}});
  const auto part = partition(ds, {"gender"}, 3);
  EXPECT_EQ(part.groups.count({"F"}), 0u);
  ASSERT_EQ(part.excluded.count({"F"}), 1u);
  EXPECT_EQ(part.excluded.at({"F"}), 2u);
  EXPECT_EQ(part.total_count(), ds.records.size());
}

TEST(PartitionTest, EmptySpecThrows) {
  EXPECT_THROW(partition(six_record_dataset(), {}, 1), std::invalid_argument);
}

TEST(PartitionTest, UnknownAttributeThrows) {
  EXPECT_THROW(partition(six_record_dataset(), {"age"}, 1),
               std::invalid_argument);
}

TEST(PartitionTest, AllGroupsExcludedThrows) {
  EXPECT_THROW(partition(six_record_dataset(), {"gender"}, 10),
               std::runtime_error);
}

TEST(PartitionTest, ZeroMinGroupSizeThrows) {
  EXPECT_THROW(partition(six_record_dataset(), {"gender"}, 0),
               std::invalid_argument);
}

TEST(PartitionTest, ConservationAndOrderInsensitivity) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> label(0, 3);
  std::uniform_real_distribution<double> score(0.0, 100.0);
  const std::vector<std::string> labels = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 20; ++trial) {
    ScoreDataset ds;
    ds.schema = {"g"};
    for (int i = 0; i < 100; ++i) {
      ds.records.push_back({score(rng), {labels[label(rng)]}});
    }
    const auto part = partition(ds, {"g"}, 5);
    EXPECT_EQ(part.total_count(), ds.records.size());

    ScoreDataset shuffled = ds;
    std::shuffle(shuffled.records.begin(), shuffled.records.end(), rng);
    const auto part2 = partition(shuffled, {"g"}, 5);
    ASSERT_EQ(part.groups.size(), part2.groups.size());
    for (const auto& [key, scores] : part.groups) {
      auto lhs = scores;
      auto rhs = part2.groups.at(key);
      std::sort(lhs.begin(), lhs.end());
      std::sort(rhs.begin(), rhs.end());
      EXPECT_EQ(lhs, rhs);
    }
    EXPECT_EQ(part.excluded, part2.excluded);
  }
}

TEST(MakePartitionTest, RejectsEmptyGroups) {
  EXPECT_THROW(make_partition({}), std::invalid_argument);
  EXPECT_THROW(make_partition({{{"a"}, {}}}), std::invalid_argument);
}

TEST(GroupLabelTest, JoinsWithPipe) {
  EXPECT_EQ(group_label({"Male", "Black"}), "Male|Black");
  EXPECT_EQ(group_label({"Asian"}), "Asian");
}

}  // namespace
}  // namespace diaudit
