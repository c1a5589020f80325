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

// Deterministic reconstructions of the four illustrative decision-making
// scenarios. Each bundles a dataset, the member classifiers, the prescribed
// mixture weights, and the exact values the scenario is meant to exhibit.
// Group coding throughout: z = 0 men, z = 1 women.

#ifndef FAIRMIX_SCENARIOS_H_
#define FAIRMIX_SCENARIOS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairmix/classifier.h"
#include "fairmix/dataset.h"

namespace fairmix {

struct Scenario {
  std::string name;
  std::string description;
  Dataset dataset;
  std::vector<Classifier> members;
  std::vector<double> prescribed_weights;
  // Classifiers shown alongside the ensemble but not part of it (Figure 2's
  // fair C_3).
  std::vector<Classifier> references;
  // Expected values keyed as produced by EvaluateScenario.
  std::map<std::string, double> expectations;
};

// Two groups of four, identical (constant) feature vectors so every
// man/woman combination is a counterfactual pair. C_1 accepts women only,
// C_2 men only (both read gender through sensitive_weight); p = (1/2, 1/2).
Scenario Figure1();

// Nine women (f_2 > 0) and nine men (f_2 < 0) on a 3x3 layout per group.
// Gender is not a feature: every classifier has sensitive_weight 0.
// C_1 accepts 6/9 women and no men, C_2 3/9 men and no women, C_3 2/9 of
// each group (the two points with f_1 >= 0.7); p = (1/3, 2/3) over C_1, C_2.
Scenario Figure2();

// Four clusters of four on f_1: men+ at 1, men- at 0, women+ at 0, women- at
// 1. C_1 = man and f_1 >= 0.5, C_2 = woman and f_1 <= 0.5, which needs the
// sensitive attribute; p = (1/2, 1/2).
Scenario Figure3();

// Quadrant clusters of two: men top-right and bottom-left, women top-left and
// bottom-right. C_1 = (f_1 >= 0), C_2 = (f_2 >= 0): both accept the same
// men and complementary halves of the women; p = (1/2, 1/2).
Scenario Figure4();

// figure number 1..4; nullopt otherwise.
std::optional<Scenario> ScenarioByNumber(int number);
// "fig1".."fig4", "figure1".., or "1".."4".
std::optional<Scenario> ScenarioByName(std::string_view name);

// Recomputes every quantity a scenario can carry through the metrics,
// ensemble, distributional and optimizer modules.
std::map<std::string, double> EvaluateScenario(const Scenario& scenario);

struct ScenarioCheck {
  std::string key;
  double expected = 0.0;
  std::optional<double> actual;  // nullopt if the key was not computed
  bool pass = false;
};

inline constexpr double kScenarioTolerance = 1e-12;

// Compares expectations with EvaluateScenario within 1e-12.
std::vector<ScenarioCheck> SelfTest(const Scenario& scenario);

}  // namespace fairmix

#endif  // FAIRMIX_SCENARIOS_H_
