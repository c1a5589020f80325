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

#include "fairmix/simplex.h"

#include <cmath>
#include <random>

#include "fairmix/error.h"
#include "gtest/gtest.h"

namespace fairmix {
namespace {

TEST(SimplexTest, MaximizeFirstWeight) {
  LinearProgram lp;
  lp.objective = {1.0, 0.0};
  lp.AddSimplexRow();
  const LpSolution s = SimplexSolve(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 1.0, 1e-12);
  EXPECT_NEAR(s.x[1], 0.0, 1e-12);
  EXPECT_NEAR(s.objective_value, 1.0, 1e-12);
}

TEST(SimplexTest, ContradictoryBoundIsInfeasible) {
  LinearProgram lp;
  lp.objective = {1.0};
  lp.AddLessEqual({1.0}, -1.0);
  EXPECT_EQ(SimplexSolve(lp).status, LpStatus::kInfeasible);
  EXPECT_TRUE(SimplexSolve(lp).x.empty());
}

TEST(SimplexTest, InconsistentEqualitiesAreInfeasible) {
  LinearProgram lp;
  lp.objective = {0.0, 0.0};
  lp.AddSimplexRow();
  lp.AddEquality({1.0, 1.0}, 2.0);
  EXPECT_EQ(SimplexSolve(lp).status, LpStatus::kInfeasible);
}

TEST(SimplexTest, OpenDirectionIsUnbounded) {
  LinearProgram lp;
  lp.objective = {1.0, 0.0};
  lp.AddLessEqual({1.0, -1.0}, 1.0);
  EXPECT_EQ(SimplexSolve(lp).status, LpStatus::kUnbounded);
}

TEST(SimplexTest, RedundantEqualityRowsAreDropped) {
  LinearProgram lp;
  lp.objective = {0.0, 2.0, 1.0};
  lp.AddSimplexRow();
  lp.AddSimplexRow();
  lp.AddEquality({2.0, 2.0, 2.0}, 2.0);
  const LpSolution s = SimplexSolve(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[1], 1.0, 1e-12);
  EXPECT_NEAR(s.objective_value, 2.0, 1e-12);
}

TEST(SimplexTest, BealeCyclingExampleTerminates) {
  // Cycles under the largest-coefficient rule; Bland's rule must not.
  LinearProgram lp;
  lp.objective = {0.75, -20.0, 0.5, -6.0};
  lp.AddLessEqual({0.25, -8.0, -1.0, 9.0}, 0.0);
  lp.AddLessEqual({0.5, -12.0, -0.5, 3.0}, 0.0);
  lp.AddLessEqual({0.0, 0.0, 1.0, 0.0}, 1.0);
  const LpSolution s = SimplexSolve(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 1.25, 1e-9);
  EXPECT_NEAR(s.x[0], 1.0, 1e-9);
  EXPECT_NEAR(s.x[2], 1.0, 1e-9);
}

TEST(SimplexTest, DegenerateVertexWithManyTightRows) {
  // Every row is tight at the optimum (1/2, 1/2).
  LinearProgram lp;
  lp.objective = {1.0, 1.0};
  lp.AddSimplexRow();
  lp.AddLessEqual({1.0, -1.0}, 0.0);
  lp.AddLessEqual({-1.0, 1.0}, 0.0);
  lp.AddLessEqual({2.0, 0.0}, 1.0);
  lp.AddLessEqual({0.0, 2.0}, 1.0);
  const LpSolution s = SimplexSolve(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 0.5, 1e-12);
  EXPECT_NEAR(s.x[1], 0.5, 1e-12);
}

TEST(SimplexTest, MalformedDimensionsThrow) {
  LinearProgram lp;
  lp.objective = {1.0, 1.0};
  lp.le_rows.push_back({1.0});
  lp.le_rhs.push_back(1.0);
  EXPECT_THROW(SimplexSolve(lp), Error);

  LinearProgram rhs_mismatch;
  rhs_mismatch.objective = {1.0};
  rhs_mismatch.eq_rows.push_back({1.0});
  EXPECT_THROW(SimplexSolve(rhs_mismatch), Error);

  LinearProgram too_big;
  too_big.objective.assign(kMaxLpVariables + 1, 0.0);
  EXPECT_THROW(SimplexSolve(too_big), Error);
}

double Det3(const double a[3][3]) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

// Vertex-enumeration oracle for 3-variable programs over the simplex: every
// choice of two extra tight constraints (from the le rows and x_i = 0) with
// sum x = 1 is solved by Cramer's rule, and feasible vertices are scored.
TEST(SimplexTest, MatchesVertexEnumerationOnRandomPrograms) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  int optimal = 0;
  for (int t = 0; t < 500; ++t) {
    LinearProgram lp;
    lp.objective = {coef(rng), coef(rng), coef(rng)};
    lp.AddSimplexRow();
    const int rows = 1 + t % 3;
    for (int k = 0; k < rows; ++k) {
      lp.AddLessEqual({coef(rng), coef(rng), coef(rng)}, 0.3 * coef(rng));
    }
    std::vector<std::vector<double>> tight = lp.le_rows;
    std::vector<double> tight_rhs = lp.le_rhs;
    for (int i = 0; i < 3; ++i) {
      std::vector<double> unit(3, 0.0);
      unit[i] = -1.0;
      tight.push_back(unit);
      tight_rhs.push_back(0.0);
    }
    std::optional<double> best;
    for (std::size_t a = 0; a < tight.size(); ++a) {
      for (std::size_t b = a + 1; b < tight.size(); ++b) {
        const double m[3][3] = {{1, 1, 1},
                                {tight[a][0], tight[a][1], tight[a][2]},
                                {tight[b][0], tight[b][1], tight[b][2]}};
        const double rhs[3] = {1.0, tight_rhs[a], tight_rhs[b]};
        const double det = Det3(m);
        if (std::abs(det) < 1e-9) continue;
        double x[3];
        for (int c = 0; c < 3; ++c) {
          double mc[3][3];
          for (int r = 0; r < 3; ++r) {
            for (int k = 0; k < 3; ++k) mc[r][k] = k == c ? rhs[r] : m[r][k];
          }
          x[c] = Det3(mc) / det;
        }
        bool feasible = x[0] >= -1e-9 && x[1] >= -1e-9 && x[2] >= -1e-9;
        for (std::size_t k = 0; k < lp.le_rows.size(); ++k) {
          const auto& r = lp.le_rows[k];
          feasible = feasible &&
                     r[0] * x[0] + r[1] * x[1] + r[2] * x[2] <=
                         lp.le_rhs[k] + 1e-9;
        }
        if (!feasible) continue;
        const double value = lp.objective[0] * x[0] +
                             lp.objective[1] * x[1] + lp.objective[2] * x[2];
        if (!best || value > *best) best = value;
      }
    }
    const LpSolution s = SimplexSolve(lp);
    if (!best) {
      EXPECT_EQ(s.status, LpStatus::kInfeasible) << "trial " << t;
      continue;
    }
    ASSERT_EQ(s.status, LpStatus::kOptimal) << "trial " << t;
    ++optimal;
    EXPECT_NEAR(s.objective_value, *best, 1e-7) << "trial " << t;
    double sum = 0.0;
    for (double v : s.x) {
      EXPECT_GE(v, -1e-9);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
  EXPECT_GT(optimal, 100);
}

}  // namespace
}  // namespace fairmix
