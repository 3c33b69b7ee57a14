/*
 * Copyright 2026 The HybridFL Simulator Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hybridfl/dataset.h"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "hybridfl/errors.h"

namespace hybridfl {
namespace {

constexpr char kRows[] =
    "800\t0\t0.3048\t71.3\t0.00266337\t126.201\n"
    "1000\t0\t0.3048\t71.3\t0.00266337\t125.201\n"
    "\n"
    "1250 1.5 0.2286 39.6 0.00529514 127.591\n";

TEST(ParseAerofoilTest, ReadsAndStandardizes) {
  std::istringstream in(kRows);
  const Dataset d = ParseAerofoil(in);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.dim(), 5);
  EXPECT_EQ(d.task, TaskKind::kRegression);
  for (int j = 0; j < 5; ++j) {
    EXPECT_NEAR(d.features.col(j).mean(), 0.0, 1e-12);
    const double var = d.features.col(j).squaredNorm() / 3.0;
    EXPECT_TRUE(std::abs(var - 1.0) < 1e-12 || var == 0.0);
  }
  EXPECT_NEAR(d.targets.mean(), 0.0, 1e-12);
  EXPECT_NEAR(d.targets.squaredNorm() / 3.0, 1.0, 1e-12);
  // Row order is preserved: the second row has the smallest target.
  EXPECT_LT(d.targets[1], d.targets[0]);
}

TEST(ParseAerofoilTest, ReportsBadLine) {
  std::istringstream in("1 2 3 4 5 6\n1 2 3 x 5 6\n");
  try {
    ParseAerofoil(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream wide("1 2 3 4 5 6 7\n");
  EXPECT_THROW(ParseAerofoil(wide), ParseError);
  std::istringstream narrow("1 2 3 4 5\n");
  EXPECT_THROW(ParseAerofoil(narrow), ParseError);
}

TEST(ParseAerofoilTest, EmptyInput) {
  std::istringstream in("\n\n");
  try {
    ParseAerofoil(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("0 rows read"), std::string::npos);
  }
}

TEST(LoadAerofoilTest, MissingFile) {
  EXPECT_THROW(LoadAerofoil("/nonexistent/airfoil.dat"), IoError);
}

TEST(SynthesizeRegressionTest, DeterministicInSeed) {
  const Dataset a = SynthesizeRegression(50, 5, 0.5, 1);
  const Dataset b = SynthesizeRegression(50, 5, 0.5, 1);
  const Dataset c = SynthesizeRegression(50, 5, 0.5, 2);
  EXPECT_EQ(a.features, b.features);
  EXPECT_EQ(a.targets, b.targets);
  EXPECT_NE(a.targets, c.targets);
  EXPECT_EQ(a.size(), 50u);
  EXPECT_EQ(a.dim(), 5);
}

TEST(SynthesizeRegressionTest, NoiselessTargetsAreLinear) {
  const Dataset d = SynthesizeRegression(40, 3, 0.0, 4);
  Eigen::MatrixXd x(40, 4);
  x << d.features, Eigen::VectorXd::Ones(40);
  const Eigen::VectorXd coef = x.colPivHouseholderQr().solve(d.targets);
  EXPECT_LT((x * coef - d.targets).norm(), 1e-9);
}

TEST(SynthesizeClassificationTest, BalancedLabels) {
  const Dataset d = SynthesizeClassification(100, 8, 10, 0.1, 3);
  EXPECT_EQ(d.task, TaskKind::kClassification);
  EXPECT_EQ(d.num_classes, 10);
  std::vector<int> counts(10, 0);
  for (int label : d.Labels()) ++counts[static_cast<std::size_t>(label)];
  for (int c : counts) EXPECT_EQ(c, 10);
}

TEST(DatasetTest, SubsetKeepsRows) {
  const Dataset d = SynthesizeRegression(10, 2, 0.1, 5);
  const std::vector<std::size_t> rows{7, 2};
  const Dataset s = d.Subset(rows);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.features.row(0), d.features.row(7));
  EXPECT_EQ(s.targets[1], d.targets[2]);
}

}  // namespace
}  // namespace hybridfl
