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

#ifndef FAIRMIX_CLASSIFIER_H_
#define FAIRMIX_CLASSIFIER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "fairmix/dataset.h"

namespace fairmix {

// Predicts +1 iff weights . features + sensitive_weight * z + bias >= 0.
// A zero sensitive_weight makes the classifier blind to z.
struct LinearClassifier {
  std::vector<double> weights;
  double sensitive_weight = 0.0;
  double bias = 0.0;

  double Score(std::span<const double> features, int z) const;
  Label Apply(std::span<const double> features, int z) const;
};

// Precomputed labels for exactly one dataset (matched by fingerprint).
class TableClassifier {
 public:
  TableClassifier(std::vector<Label> predictions, const Dataset& dataset);

  std::span<const Label> predictions() const { return predictions_; }
  std::uint64_t dataset_fingerprint() const { return fingerprint_; }
  bool BoundTo(const Dataset& dataset) const {
    return dataset.fingerprint() == fingerprint_ &&
           dataset.size() == predictions_.size();
  }

 private:
  std::vector<Label> predictions_;
  std::uint64_t fingerprint_;
};

using Classifier = std::variant<LinearClassifier, TableClassifier>;

// Label for the i-th instance of `dataset`.
Label Predict(const Classifier& classifier, const Dataset& dataset,
              std::size_t index);

// Label for an arbitrary instance. Table classifiers throw kUnsupportedQuery
// because they have no functional form off their dataset.
Label Predict(const Classifier& classifier, const Instance& instance);

// Label for instance `index` with its sensitive value flipped.
Label PredictFlipped(const Classifier& classifier, const Dataset& dataset,
                     std::size_t index);

std::vector<Label> PredictAll(const Classifier& classifier,
                              const Dataset& dataset);

// Throws unless `classifier` can be evaluated on every instance of `dataset`.
void CheckCompatible(const Classifier& classifier, const Dataset& dataset);

// Member-major label matrix: row j holds C_j's predictions on every instance.
class PredictionMatrix {
 public:
  PredictionMatrix(std::size_t members, std::size_t instances)
      : members_(members), instances_(instances),
        labels_(members * instances, Label::kNegative) {}

  static PredictionMatrix Evaluate(std::span<const Classifier> members,
                                   const Dataset& dataset);

  std::size_t members() const { return members_; }
  std::size_t instances() const { return instances_; }
  std::span<const Label> row(std::size_t j) const {
    return {labels_.data() + j * instances_, instances_};
  }
  std::span<Label> row(std::size_t j) {
    return {labels_.data() + j * instances_, instances_};
  }
  Label at(std::size_t j, std::size_t i) const {
    return labels_[j * instances_ + i];
  }

 private:
  std::size_t members_;
  std::size_t instances_;
  std::vector<Label> labels_;
};

// CSV with header `clf_1,...,clf_M`, one row per dataset instance.
std::vector<TableClassifier> ParsePredictionMatrixCsv(std::istream& in,
                                                      const Dataset& dataset);
std::vector<TableClassifier> LoadPredictionMatrix(
    const std::filesystem::path& path, const Dataset& dataset);
void WritePredictionMatrixCsv(std::span<const Classifier> members,
                              const Dataset& dataset, std::ostream& out);

}  // namespace fairmix

#endif  // FAIRMIX_CLASSIFIER_H_
