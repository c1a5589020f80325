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

#include "fairmix/metrics.h"

#include <random>

#include "fairmix/error.h"
#include "fairmix/scenarios.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairmix {
namespace {

using testing::CountRate;
using testing::Fraction;

constexpr Label kPos = Label::kPositive;
constexpr Label kNeg = Label::kNegative;

TEST(MetricNameTest, RoundTripsAndIsCaseInsensitive) {
  for (MetricKind k : kAllMetricKinds) {
    EXPECT_EQ(ParseMetricKind(MetricName(k)), k);
  }
  EXPECT_EQ(ParseMetricKind("tpr"), MetricKind::kTpr);
  EXPECT_EQ(ParseMetricKind("acceptancerate"), MetricKind::kAcceptanceRate);
  EXPECT_EQ(ParseMetricKind("FPR"), std::nullopt);
}

TEST(MetricsTest, RatesMatchIntegerCountOracle) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 500; ++t) {
    const Dataset d = testing::RandomDataset(rng, 1 + t % 40, false);
    const auto pred = testing::RandomLabels(rng, d.size(), 0.3 + 0.4 * (t % 2));
    for (MetricKind k : kAllMetricKinds) {
      for (int z = 0; z < 2; ++z) {
        const Fraction oracle = CountRate(k, pred, d, z);
        const auto rate = GroupRate(k, pred, d, z);
        ASSERT_EQ(rate.has_value(), oracle.defined());
        if (rate) {
          EXPECT_NEAR(*rate, oracle.value(), 1e-12);
        }
      }
      const Fraction a = CountRate(k, pred, d, 0);
      const Fraction b = CountRate(k, pred, d, 1);
      const auto gap = FairnessGap(k, pred, d);
      ASSERT_EQ(gap.has_value(), a.defined() && b.defined());
      if (gap) {
        EXPECT_NEAR(*gap, a.value() - b.value(), 1e-12);
      }
    }
  }
}

TEST(MetricsTest, AccuracyIsRecoveredFromTpr) {
  // acc = sum_z (|G_z+| TPR_z + |G_z-| TNR_z) / N
  std::mt19937_64 rng(22);
  for (int t = 0; t < 300; ++t) {
    const Dataset d = testing::RandomDataset(rng, 4 + t % 30);
    const auto pred = testing::RandomLabels(rng, d.size());
    double correct = 0.0;
    for (int z = 0; z < 2; ++z) {
      const Fraction tpr = CountRate(MetricKind::kTpr, pred, d, z);
      const Fraction tnr = CountRate(MetricKind::kTnr, pred, d, z);
      correct += tpr.den * *GroupRate(MetricKind::kTpr, pred, d, z) +
                 tnr.den * *GroupRate(MetricKind::kTnr, pred, d, z);
    }
    EXPECT_NEAR(Accuracy(pred, d), correct / d.size(), 1e-12);
  }
}

TEST(MetricsTest, NegatedPredictionsComplementRates) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const Dataset d = testing::RandomDataset(rng, 4 + t % 30);
    const auto pred = testing::RandomLabels(rng, d.size());
    std::vector<Label> neg(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) neg[i] = Flip(pred[i]);
    for (int z = 0; z < 2; ++z) {
      EXPECT_NEAR(*GroupRate(MetricKind::kAcceptanceRate, neg, d, z),
                  1.0 - *GroupRate(MetricKind::kAcceptanceRate, pred, d, z),
                  1e-12);
      EXPECT_NEAR(*GroupRate(MetricKind::kTpr, neg, d, z),
                  1.0 - *GroupRate(MetricKind::kTpr, pred, d, z), 1e-12);
      EXPECT_NEAR(*GroupRate(MetricKind::kTnr, neg, d, z),
                  1.0 - *GroupRate(MetricKind::kTnr, pred, d, z), 1e-12);
      const auto ppv = GroupRate(MetricKind::kPpv, pred, d, z);
      const auto npv_of_neg = GroupRate(MetricKind::kNpv, neg, d, z);
      ASSERT_EQ(ppv.has_value(), npv_of_neg.has_value());
      if (ppv) {
        EXPECT_NEAR(*npv_of_neg, 1.0 - *ppv, 1e-12);
      }
    }
    EXPECT_NEAR(Accuracy(neg, d), 1.0 - Accuracy(pred, d), 1e-12);
  }
}

TEST(MetricsTest, SwappingGroupsNegatesGap) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 200; ++t) {
    const Dataset d = testing::RandomDataset(rng, 4 + t % 30);
    const auto pred = testing::RandomLabels(rng, d.size());
    std::vector<Instance> swapped(d.instances().begin(), d.instances().end());
    for (auto& inst : swapped) inst.sensitive = 1 - inst.sensitive;
    const Dataset s(std::move(swapped));
    for (MetricKind k : kAllMetricKinds) {
      const auto a = FairnessGap(k, pred, d);
      const auto b = FairnessGap(k, pred, s);
      ASSERT_EQ(a.has_value(), b.has_value());
      if (a) {
        EXPECT_EQ(*a, -*b);
      }
    }
  }
}

TEST(MetricsTest, UndefinedConditioningSets) {
  // No negatives among men, nobody rejected at all.
  const Dataset d({{{0.0}, kPos, 0}, {{1.0}, kNeg, 1}, {{2.0}, kPos, 1}});
  const std::vector<Label> all_pos = {kPos, kPos, kPos};
  EXPECT_EQ(GroupRate(MetricKind::kTnr, all_pos, d, 0), std::nullopt);
  EXPECT_EQ(GroupRate(MetricKind::kNpv, all_pos, d, 1), std::nullopt);
  EXPECT_EQ(FairnessGap(MetricKind::kTnr, all_pos, d), std::nullopt);
  const GroupMetric m = MakeGroupMetric(MetricKind::kTnr, std::nullopt, 0.0,
                                        kDefaultTolerance);
  EXPECT_EQ(m.gap, std::nullopt);
  EXPECT_EQ(m.pass, std::nullopt);
}

TEST(MetricsTest, PassIsAbsoluteGapWithinTolerance) {
  EXPECT_EQ(MakeGroupMetric(MetricKind::kTpr, 0.5, 0.5, 0.0).pass, true);
  EXPECT_EQ(MakeGroupMetric(MetricKind::kTpr, 0.5, 0.6, 0.1).pass, true);
  EXPECT_EQ(MakeGroupMetric(MetricKind::kTpr, 0.6, 0.4, 0.1).pass, false);
  EXPECT_EQ(*MakeGroupMetric(MetricKind::kTpr, 0.25, 0.75, 0.0).gap, -0.5);
}

TEST(MetricsTest, FigureTwoMembers) {
  const Scenario s = Figure2();
  const auto c1 = PredictAll(s.members[0], s.dataset);
  const auto c2 = PredictAll(s.members[1], s.dataset);
  const auto c3 = PredictAll(s.references[0], s.dataset);
  const auto ar = MetricKind::kAcceptanceRate;
  EXPECT_NEAR(*GroupRate(ar, c1, s.dataset, 0), 0.0, 1e-15);
  EXPECT_NEAR(*GroupRate(ar, c1, s.dataset, 1), 6.0 / 9.0, 1e-15);
  EXPECT_NEAR(*GroupRate(ar, c2, s.dataset, 0), 3.0 / 9.0, 1e-15);
  EXPECT_NEAR(*GroupRate(ar, c2, s.dataset, 1), 0.0, 1e-15);
  EXPECT_NEAR(*FairnessGap(ar, c3, s.dataset), 0.0, 1e-15);
  EXPECT_NEAR(*GroupRate(ar, c3, s.dataset, 0), 2.0 / 9.0, 1e-15);
}

TEST(TreatmentTest, FigureOneMembersViolateEveryPair) {
  const Scenario s = Figure1();
  const auto pairs = BuildCounterfactualPairs(s.dataset);
  for (const Classifier& c : s.members) {
    EXPECT_EQ(TreatmentViolations(c, s.dataset, pairs).size(), pairs.size());
    EXPECT_EQ(FlipTestViolations(c, s.dataset).size(), s.dataset.size());
  }
}

TEST(TreatmentTest, BlindClassifierHasNoFlipViolations) {
  std::mt19937_64 rng(25);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 50; ++t) {
    const Dataset d = testing::RandomDataset(rng, 20, false);
    const Classifier c = LinearClassifier{{normal(rng)}, 0.0, normal(rng)};
    EXPECT_TRUE(FlipTestViolations(c, d).empty());
  }
}

TEST(TreatmentTest, ProbabilityVersionUsesTolerance) {
  const std::vector<double> q = {0.5, 0.5 + 1e-12, 0.7};
  const std::vector<CounterfactualPair> pairs = {{0, 1}, {0, 2}};
  const auto v = TreatmentViolations(q, pairs, 1e-9);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], (CounterfactualPair{0, 2}));
  EXPECT_EQ(TreatmentViolations(q, pairs, 0.0).size(), 2u);
}

TEST(TreatmentTest, FlipTestRejectsTables) {
  const Dataset d({{{0.0}, kPos, 0}});
  EXPECT_THROW(FlipTestViolations(TableClassifier({kPos}, d), d), Error);
}

}  // namespace
}  // namespace fairmix
