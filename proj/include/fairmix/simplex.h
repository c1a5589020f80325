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

// Dense two-phase simplex for the small LPs that arise over mixture weights.

#ifndef FAIRMIX_SIMPLEX_H_
#define FAIRMIX_SIMPLEX_H_

#include <cstddef>
#include <string_view>
#include <vector>

namespace fairmix {

// maximize objective . x  s.t.  eq_rows x = eq_rhs,  le_rows x <= le_rhs,
// x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> le_rows;
  std::vector<double> le_rhs;

  std::size_t variables() const { return objective.size(); }

  // Adds sum_j x_j = 1, the row every mixture program carries.
  void AddSimplexRow();
  void AddEquality(std::vector<double> row, double rhs);
  void AddLessEqual(std::vector<double> row, double rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;  // empty unless optimal
  double objective_value = 0.0;
  std::size_t iterations = 0;
};

inline constexpr double kPivotTolerance = 1e-9;
inline constexpr std::size_t kMaxLpVariables = 1024;

// Two-phase simplex with Bland's rule (smallest eligible index enters,
// smallest basic index leaves on ratio ties), so degenerate problems cannot
// cycle. Throws kDimensionMismatch on ragged rows and kContract past
// kMaxLpVariables.
LpSolution SimplexSolve(const LinearProgram& lp);

}  // namespace fairmix

#endif  // FAIRMIX_SIMPLEX_H_
