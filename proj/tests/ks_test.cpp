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

#include "diaudit/ks.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace diaudit {
namespace {

TEST(KsStatisticTest, IdenticalSamplesGiveZero) {
  const std::vector<double> a = {1, 2, 3, 4};
  const auto result = ks_statistic(a, a);
  EXPECT_DOUBLE_EQ(result.statistic, 0.0);
}

TEST(KsStatisticTest, FullySeparatedSamplesGiveOne) {
  const std::vector<double> a = {1, 2};
  const std::vector<double> b = {3, 4};
  const auto result = ks_statistic(a, b);
  EXPECT_DOUBLE_EQ(result.statistic, 1.0);
  EXPECT_DOUBLE_EQ(result.location, 2.0);
}

TEST(KsStatisticTest, OverlappingSamples) {
  const std::vector<double> a = {1, 2};
  const std::vector<double> b = {2, 3};
  const auto result = ks_statistic(a, b);
  EXPECT_DOUBLE_EQ(result.statistic, 0.5);
  EXPECT_DOUBLE_EQ(result.location, 1.0);  // first point attaining the sup
}

TEST(KsStatisticTest, UnequalSampleSizes) {
  const std::vector<double> a = {1, 1, 2, 5};
  const std::vector<double> b = {2, 4};
  EXPECT_NEAR(ks_statistic(a, b).statistic, testutil::oracle_ks(a, b), 1e-15);
}

TEST(KsStatisticTest, Symmetry) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> score(0.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(30);
    std::vector<double> b(17);
    for (double& x : a) x = score(rng);
    for (double& x : b) x = score(rng);
    EXPECT_DOUBLE_EQ(ks_statistic(a, b).statistic,
                     ks_statistic(b, a).statistic);
  }
}

TEST(KsStatisticTest, MonotoneTransformInvariance) {
  std::mt19937 rng(18);
  std::uniform_real_distribution<double> score(1.0, 10.0);
  std::vector<double> a(40);
  std::vector<double> b(25);
  for (double& x : a) x = score(rng);
  for (double& x : b) x = score(rng);
  const double before = ks_statistic(a, b).statistic;
  for (double& x : a) x = x * x * x + 7.0;
  for (double& x : b) x = x * x * x + 7.0;
  EXPECT_DOUBLE_EQ(ks_statistic(a, b).statistic, before);
}

TEST(KsStatisticTest, MatchesGridOracle) {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> size(1, 100);
  std::uniform_int_distribution<int> lattice(0, 9);
  std::bernoulli_distribution tie(0.5);
  std::uniform_real_distribution<double> real(0.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(size(rng));
    std::vector<double> b(size(rng));
    for (double& x : a) x = tie(rng) ? 1.0 * lattice(rng) : real(rng);
    for (double& x : b) x = tie(rng) ? 1.0 * lattice(rng) : real(rng);
    EXPECT_NEAR(ks_statistic(a, b).statistic, testutil::oracle_ks(a, b),
                1e-12);
  }
}

TEST(KsStatisticTest, EmptyInputThrows) {
  const std::vector<double> a = {1.0};
  EXPECT_THROW(ks_statistic({}, a), std::invalid_argument);
  EXPECT_THROW(ks_statistic(a, {}), std::invalid_argument);
}

}  // namespace
}  // namespace diaudit
