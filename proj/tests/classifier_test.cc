// Copyright 2026 The fairmix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fairmix/classifier.h"

#include <random>
#include <sstream>

#include "fairmix/error.h"
#include "fairmix/scenarios.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairmix {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

constexpr Label kPos = Label::kPositive;
constexpr Label kNeg = Label::kNegative;

TEST(LinearClassifierTest, ZeroScoreIsPositive) {
  const LinearClassifier c{{1.0, -1.0}, 0.0, 0.0};
  const std::vector<double> x = {0.5, 0.5};
  EXPECT_EQ(c.Score(x, 0), 0.0);
  EXPECT_EQ(c.Apply(x, 0), kPos);
  const std::vector<double> below = {0.5, 0.5000001};
  EXPECT_EQ(c.Apply(below, 0), kNeg);
}

TEST(LinearClassifierTest, FigureOneMemberOneAcceptsWomenOnly) {
  const LinearClassifier c{{0.0}, 1.0, -0.5};
  const std::vector<double> x = {0.0};
  EXPECT_EQ(c.Apply(x, 1), kPos);
  EXPECT_EQ(c.Apply(x, 0), kNeg);
}

TEST(LinearClassifierTest, DimensionMismatchThrows) {
  const Dataset d({{{1.0, 2.0}, kPos, 0}});
  const Classifier c = LinearClassifier{{1.0}, 0.0, 0.0};
  try {
    Predict(c, d, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(LinearClassifierTest, NegationFlipsEveryOffBoundaryLabel) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 100; ++t) {
    const Dataset d = testing::RandomDataset(rng, 20, false);
    const LinearClassifier c{{normal(rng)}, normal(rng), normal(rng)};
    const LinearClassifier neg{{-c.weights[0]}, -c.sensitive_weight, -c.bias};
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (c.Score(d[i].features, d[i].sensitive) == 0.0) continue;
      EXPECT_EQ(Predict(Classifier{neg}, d, i),
                Flip(Predict(Classifier{c}, d, i)));
    }
  }
}

TEST(LinearClassifierTest, FlippedPredictionUsesOtherGroup) {
  const Dataset d({{{0.0}, kPos, 0}, {{0.0}, kPos, 1}});
  const Classifier c = LinearClassifier{{0.0}, 1.0, -0.5};
  EXPECT_EQ(PredictFlipped(c, d, 0), kPos);
  EXPECT_EQ(PredictFlipped(c, d, 1), kNeg);
}

TEST(TableClassifierTest, RowCountMismatchThrows) {
  const Dataset d({{{0.0}, kPos, 0}, {{1.0}, kPos, 1}});
  try {
    TableClassifier({kPos}, d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
    EXPECT_THAT(e.what(), HasSubstr("row count mismatch"));
  }
}

TEST(TableClassifierTest, BoundToItsDatasetOnly) {
  const Dataset d({{{0.0}, kPos, 0}, {{1.0}, kPos, 1}});
  const Dataset other({{{0.0}, kPos, 0}, {{2.0}, kPos, 1}});
  const Classifier c = TableClassifier({kPos, kNeg}, d);
  EXPECT_THAT(PredictAll(c, d), ElementsAre(kPos, kNeg));
  EXPECT_THROW(PredictAll(c, other), Error);
}

TEST(TableClassifierTest, FreeInstanceQueryIsUnsupported) {
  const Dataset d({{{0.0}, kPos, 0}});
  const Classifier c = TableClassifier({kPos}, d);
  try {
    Predict(c, d[0]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedQuery);
  }
}

TEST(PredictionMatrixTest, EvaluateMatchesPredict) {
  const Scenario s = Figure2();
  const PredictionMatrix m = PredictionMatrix::Evaluate(s.members, s.dataset);
  ASSERT_EQ(m.members(), s.members.size());
  ASSERT_EQ(m.instances(), s.dataset.size());
  for (std::size_t j = 0; j < m.members(); ++j) {
    for (std::size_t i = 0; i < m.instances(); ++i) {
      EXPECT_EQ(m.at(j, i), Predict(s.members[j], s.dataset, i));
    }
  }
}

TEST(PredictionMatrixTest, CsvRoundTrip) {
  for (int n = 1; n <= 4; ++n) {
    const Scenario s = *ScenarioByNumber(n);
    std::ostringstream out;
    WritePredictionMatrixCsv(s.members, s.dataset, out);
    std::istringstream in(out.str());
    const auto tables = ParsePredictionMatrixCsv(in, s.dataset);
    ASSERT_EQ(tables.size(), s.members.size());
    for (std::size_t j = 0; j < tables.size(); ++j) {
      EXPECT_EQ(PredictAll(Classifier{tables[j]}, s.dataset),
                PredictAll(s.members[j], s.dataset));
    }
  }
}

TEST(PredictionMatrixTest, CsvErrors) {
  const Dataset d({{{0.0}, kPos, 0}, {{1.0}, kPos, 1}});
  auto parse = [&](const std::string& text) {
    std::istringstream in(text);
    return ParsePredictionMatrixCsv(in, d);
  };
  EXPECT_EQ(parse("clf_1,clf_2\n1,-1\n-1,1\n").size(), 2u);
  EXPECT_THROW(parse("clf_1\n1\n0\n"), Error);
  EXPECT_THROW(parse("clf_1\n1\n"), Error);
  EXPECT_THROW(parse("clf_2\n1\n1\n"), Error);
  EXPECT_THROW(parse("clf_1,clf_2\n1\n1,1\n"), Error);
  EXPECT_THROW(parse(""), Error);
}

}  // namespace
}  // namespace fairmix
