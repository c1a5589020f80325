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

// Generators and independent oracles shared by the test binaries. Nothing in
// here calls into the code paths it is used to check.

#ifndef FAIRMIX_TESTS_TEST_UTIL_H_
#define FAIRMIX_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "fairmix/classifier.h"
#include "fairmix/dataset.h"
#include "fairmix/metrics.h"

namespace fairmix::testing {

// Random dataset with both groups and both labels present in each group when
// `require_cells` is set. Features are the instance index plus noise so
// that they are distinct.
inline Dataset RandomDataset(std::mt19937_64& rng, std::size_t n,
                             bool require_cells = true) {
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> noise(0.0, 0.5);
  while (true) {
    std::vector<Instance> instances(n);
    int cells[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t i = 0; i < n; ++i) {
      instances[i].features = {static_cast<double>(i) + noise(rng)};
      instances[i].sensitive = coin(rng) ? 1 : 0;
      instances[i].label = coin(rng) ? Label::kPositive : Label::kNegative;
      ++cells[instances[i].sensitive][instances[i].label == Label::kPositive];
    }
    if (!require_cells ||
        (cells[0][0] && cells[0][1] && cells[1][0] && cells[1][1])) {
      return Dataset(std::move(instances));
    }
  }
}

inline std::vector<Label> RandomLabels(std::mt19937_64& rng, std::size_t n,
                                       double p_positive = 0.5) {
  std::bernoulli_distribution coin(p_positive);
  std::vector<Label> labels(n);
  for (auto& l : labels) l = coin(rng) ? Label::kPositive : Label::kNegative;
  return labels;
}

inline std::vector<double> RandomWeights(std::mt19937_64& rng, std::size_t m) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(m);
  for (auto& v : w) v = e(rng);
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= sum;
  // Push the rounding residue into the last weight.
  w.back() = 1.0 - std::accumulate(w.begin(), w.end() - 1, 0.0);
  if (w.back() < 0.0) w.back() = 0.0;
  return w;
}

// Exact rational in lowest terms; denominator 0 means undefined.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 0;

  bool defined() const { return den != 0; }
  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

// Integer-count oracle for a group rate, written from the definitions: it
// loops over instances and counts the conditioning and event sets directly.
inline Fraction CountRate(MetricKind kind, const std::vector<Label>& pred,
                          const Dataset& data, int z) {
  std::int64_t event = 0;
  std::int64_t given = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].sensitive != z) continue;
    const bool y = data[i].label == Label::kPositive;
    const bool yhat = pred[i] == Label::kPositive;
    bool in_given = false;
    bool in_event = false;
    switch (kind) {
      case MetricKind::kAcceptanceRate:
        in_given = true;
        in_event = yhat;
        break;
      case MetricKind::kTpr:
        in_given = y;
        in_event = yhat;
        break;
      case MetricKind::kTnr:
        in_given = !y;
        in_event = !yhat;
        break;
      case MetricKind::kPpv:
        in_given = yhat;
        in_event = y;
        break;
      case MetricKind::kNpv:
        in_given = !yhat;
        in_event = !y;
        break;
    }
    if (in_given) {
      ++given;
      if (in_event) ++event;
    }
  }
  return {event, given};
}

// Ensemble rate by enumerating every (member, instance) contribution with its
// probability weight: P(event and given) / P(given) over the joint law of
// "draw a member, then classify".
inline std::optional<double> EnumeratedEnsembleRate(
    MetricKind kind, const std::vector<std::vector<Label>>& member_predictions,
    const std::vector<double>& weights, const Dataset& data, int z) {
  double event = 0.0;
  double given = 0.0;
  for (std::size_t j = 0; j < member_predictions.size(); ++j) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data[i].sensitive != z) continue;
      const bool y = data[i].label == Label::kPositive;
      const bool yhat = member_predictions[j][i] == Label::kPositive;
      bool in_given = false;
      bool in_event = false;
      switch (kind) {
        case MetricKind::kAcceptanceRate:
          in_given = true;
          in_event = yhat;
          break;
        case MetricKind::kTpr:
          in_given = y;
          in_event = yhat;
          break;
        case MetricKind::kTnr:
          in_given = !y;
          in_event = !yhat;
          break;
        case MetricKind::kPpv:
          in_given = yhat;
          in_event = y;
          break;
        case MetricKind::kNpv:
          in_given = !yhat;
          in_event = !y;
          break;
      }
      if (in_given) {
        given += weights[j];
        if (in_event) event += weights[j];
      }
    }
  }
  if (given == 0.0) return std::nullopt;
  return event / given;
}

inline std::vector<Classifier> AsClassifiers(
    const std::vector<std::vector<Label>>& predictions, const Dataset& data) {
  std::vector<Classifier> out;
  for (const auto& p : predictions) out.emplace_back(TableClassifier(p, data));
  return out;
}

}  // namespace fairmix::testing

#endif  // FAIRMIX_TESTS_TEST_UTIL_H_
