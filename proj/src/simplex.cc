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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fairmix/error.h"

namespace fairmix {
namespace {

// Safety net only; Bland's rule terminates on its own.
constexpr std::size_t kIterationLimit = 1'000'000;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t columns)
      : columns_(columns), cells_(rows * (columns + 1), 0.0), basis_(rows) {}

  std::size_t rows() const { return basis_.size(); }
  std::size_t columns() const { return columns_; }
  double& at(std::size_t r, std::size_t c) { return cells_[r * (columns_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const {
    return cells_[r * (columns_ + 1) + c];
  }
  double& rhs(std::size_t r) { return at(r, columns_); }
  double rhs(std::size_t r) const { return at(r, columns_); }
  std::vector<std::size_t>& basis() { return basis_; }

  void Pivot(std::size_t row, std::size_t col) {
    const double inv = 1.0 / at(row, col);
    for (std::size_t c = 0; c <= columns_; ++c) at(row, c) *= inv;
    at(row, col) = 1.0;
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r == row) continue;
      const double factor = at(r, col);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c <= columns_; ++c) {
        at(r, c) -= factor * at(row, c);
      }
      at(r, col) = 0.0;
    }
    basis_[row] = col;
  }

  void DropRow(std::size_t row) {
    const std::size_t width = columns_ + 1;
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(row * width),
                 cells_.begin() + static_cast<std::ptrdiff_t>((row + 1) * width));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
  }

 private:
  std::size_t columns_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { kOptimal, kUnbounded };

// Maximizes cost . x over the current basis. Columns with allowed[c] false
// never enter.
PhaseResult Optimize(Tableau& t, const std::vector<double>& cost,
                     const std::vector<bool>& allowed, std::size_t& iterations) {
  const std::size_t n = t.columns();
  std::vector<double> reduced(n);
  while (true) {
    if (++iterations > kIterationLimit) {
      throw Error(ErrorCode::kContract, "simplex iteration limit exceeded");
    }
    // reduced_j = c_B . column_j - c_j; negative means x_j improves.
    std::size_t entering = n;
    for (std::size_t c = 0; c < n && entering == n; ++c) {
      if (!allowed[c]) continue;
      double r = -cost[c];
      for (std::size_t row = 0; row < t.rows(); ++row) {
        r += cost[t.basis()[row]] * t.at(row, c);
      }
      if (r < -kPivotTolerance) entering = c;
    }
    if (entering == n) return PhaseResult::kOptimal;

    std::size_t leaving = t.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t row = 0; row < t.rows(); ++row) {
      const double a = t.at(row, entering);
      if (a <= kPivotTolerance) continue;
      const double ratio = std::max(t.rhs(row), 0.0) / a;
      if (leaving == t.rows() || ratio < best_ratio - kPivotTolerance) {
        best_ratio = ratio;
        leaving = row;
      } else if (ratio <= best_ratio + kPivotTolerance &&
                 t.basis()[row] < t.basis()[leaving]) {
        best_ratio = std::min(best_ratio, ratio);
        leaving = row;
      }
    }
    if (leaving == t.rows()) return PhaseResult::kUnbounded;
    t.Pivot(leaving, entering);
  }
}

}  // namespace

void LinearProgram::AddSimplexRow() {
  AddEquality(std::vector<double>(variables(), 1.0), 1.0);
}

void LinearProgram::AddEquality(std::vector<double> row, double rhs) {
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(rhs);
}

void LinearProgram::AddLessEqual(std::vector<double> row, double rhs) {
  le_rows.push_back(std::move(row));
  le_rhs.push_back(rhs);
}

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kUnbounded:
      return "Unbounded";
  }
  return "?";
}

LpSolution SimplexSolve(const LinearProgram& lp) {
  const std::size_t n = lp.variables();
  if (n == 0) throw Error(ErrorCode::kContract, "LP has no variables");
  if (n > kMaxLpVariables) {
    throw Error(ErrorCode::kContract,
                "LP has more than " + std::to_string(kMaxLpVariables) +
                    " variables");
  }
  if (lp.eq_rows.size() != lp.eq_rhs.size() ||
      lp.le_rows.size() != lp.le_rhs.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "LP row/rhs count mismatch");
  }
  for (const auto* rows : {&lp.eq_rows, &lp.le_rows}) {
    for (const auto& row : *rows) {
      if (row.size() != n) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "LP row width does not match variable count");
      }
    }
  }

  // Columns: structural [0, n), slacks [n, n + le), artificials after.
  const std::size_t m_eq = lp.eq_rows.size();
  const std::size_t m_le = lp.le_rows.size();
  const std::size_t m = m_eq + m_le;
  const std::size_t slack0 = n;
  const std::size_t art0 = n + m_le;
  const std::size_t width = art0 + m;

  Tableau t(m, width);
  for (std::size_t r = 0; r < m; ++r) {
    const bool le = r >= m_eq;
    const auto& row = le ? lp.le_rows[r - m_eq] : lp.eq_rows[r];
    const double rhs = le ? lp.le_rhs[r - m_eq] : lp.eq_rhs[r];
    const double sign = rhs < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) t.at(r, c) = sign * row[c];
    if (le) t.at(r, slack0 + (r - m_eq)) = sign;
    t.rhs(r) = sign * rhs;
    t.at(r, art0 + r) = 1.0;
    if (le && sign > 0.0) {
      t.basis()[r] = slack0 + (r - m_eq);
    } else {
      t.basis()[r] = art0 + r;
    }
  }

  LpSolution solution;
  std::vector<bool> allowed(width, true);

  // Phase I: maximize -sum(artificials).
  std::vector<double> phase1(width, 0.0);
  for (std::size_t c = art0; c < width; ++c) phase1[c] = -1.0;
  Optimize(t, phase1, allowed, solution.iterations);
  double infeasibility = 0.0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basis()[r] >= art0) infeasibility += t.rhs(r);
  }
  if (infeasibility > kPivotTolerance) {
    solution.status = LpStatus::kInfeasible;
    return solution;
  }

  // Drive zero-valued artificials out of the basis; rows where that is
  // impossible are redundant.
  for (std::size_t r = t.rows(); r-- > 0;) {
    if (t.basis()[r] < art0) continue;
    std::size_t col = art0;
    for (std::size_t c = 0; c < art0; ++c) {
      if (std::fabs(t.at(r, c)) > kPivotTolerance) {
        col = c;
        break;
      }
    }
    if (col == art0) {
      t.DropRow(r);
    } else {
      t.Pivot(r, col);
    }
  }
  for (std::size_t c = art0; c < width; ++c) allowed[c] = false;

  // Phase II.
  std::vector<double> phase2(width, 0.0);
  for (std::size_t c = 0; c < n; ++c) phase2[c] = lp.objective[c];
  if (Optimize(t, phase2, allowed, solution.iterations) ==
      PhaseResult::kUnbounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }

  solution.status = LpStatus::kOptimal;
  solution.x.assign(n, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basis()[r] < n) solution.x[t.basis()[r]] = std::max(t.rhs(r), 0.0);
  }
  for (std::size_t c = 0; c < n; ++c) {
    solution.objective_value += lp.objective[c] * solution.x[c];
  }
  return solution;
}

}  // namespace fairmix
