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

#include <fstream>
#include <numeric>
#include <ostream>
#include <string>

#include "csv_util.h"
#include "fairmix/error.h"

namespace fairmix {
namespace {

void CheckLinearDimension(const LinearClassifier& c, std::size_t d) {
  if (c.weights.size() != d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "classifier expects " + std::to_string(c.weights.size()) +
                    " features, dataset has " + std::to_string(d));
  }
}

// Overload helper for std::visit.
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double LinearClassifier::Score(std::span<const double> features, int z) const {
  CheckLinearDimension(*this, features.size());
  const double dot =
      std::inner_product(features.begin(), features.end(), weights.begin(), 0.0);
  return dot + sensitive_weight * z + bias;
}

Label LinearClassifier::Apply(std::span<const double> features, int z) const {
  return Score(features, z) >= 0.0 ? Label::kPositive : Label::kNegative;
}

TableClassifier::TableClassifier(std::vector<Label> predictions,
                                 const Dataset& dataset)
    : predictions_(std::move(predictions)),
      fingerprint_(dataset.fingerprint()) {
  if (predictions_.size() != dataset.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "row count mismatch: " + std::to_string(predictions_.size()) +
                    " predictions for " + std::to_string(dataset.size()) +
                    " instances");
  }
}

void CheckCompatible(const Classifier& classifier, const Dataset& dataset) {
  std::visit(
      Overloaded{
          [&](const LinearClassifier& c) {
            CheckLinearDimension(c, dataset.dimension());
          },
          [&](const TableClassifier& c) {
            if (!c.BoundTo(dataset)) {
              throw Error(ErrorCode::kDimensionMismatch,
                          "table classifier is bound to a different dataset");
            }
          }},
      classifier);
}

Label Predict(const Classifier& classifier, const Dataset& dataset,
              std::size_t index) {
  return std::visit(
      Overloaded{[&](const LinearClassifier& c) {
                   const Instance& inst = dataset[index];
                   return c.Apply(inst.features, inst.sensitive);
                 },
                 [&](const TableClassifier& c) {
                   if (!c.BoundTo(dataset)) {
                     throw Error(
                         ErrorCode::kDimensionMismatch,
                         "table classifier is bound to a different dataset");
                   }
                   return c.predictions()[index];
                 }},
      classifier);
}

Label Predict(const Classifier& classifier, const Instance& instance) {
  if (const auto* linear = std::get_if<LinearClassifier>(&classifier)) {
    return linear->Apply(instance.features, instance.sensitive);
  }
  throw Error(ErrorCode::kUnsupportedQuery,
              "treatment test unsupported for table classifiers");
}

Label PredictFlipped(const Classifier& classifier, const Dataset& dataset,
                     std::size_t index) {
  Instance flipped = dataset[index];
  flipped.sensitive = 1 - flipped.sensitive;
  return Predict(classifier, flipped);
}

std::vector<Label> PredictAll(const Classifier& classifier,
                              const Dataset& dataset) {
  CheckCompatible(classifier, dataset);
  if (const auto* table = std::get_if<TableClassifier>(&classifier)) {
    return {table->predictions().begin(), table->predictions().end()};
  }
  std::vector<Label> out(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    out[i] = Predict(classifier, dataset, i);
  }
  return out;
}

PredictionMatrix PredictionMatrix::Evaluate(std::span<const Classifier> members,
                                            const Dataset& dataset) {
  PredictionMatrix matrix(members.size(), dataset.size());
  for (std::size_t j = 0; j < members.size(); ++j) {
    const std::vector<Label> labels = PredictAll(members[j], dataset);
    std::copy(labels.begin(), labels.end(), matrix.row(j).begin());
  }
  return matrix;
}

std::vector<TableClassifier> ParsePredictionMatrixCsv(std::istream& in,
                                                      const Dataset& dataset) {
  std::vector<std::string> lines = csv::ReadNonBlankLines(in);
  if (lines.empty()) throw Error(ErrorCode::kParse, "empty prediction file");
  if (lines.front().rfind("\xEF\xBB\xBF", 0) == 0) lines.front().erase(0, 3);
  const auto header = csv::SplitLine(lines.front());
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] != "clf_" + std::to_string(k + 1)) {
      throw Error(ErrorCode::kParse,
                  "prediction header must be clf_1,...,clf_M");
    }
  }
  const std::size_t m = header.size();
  const std::size_t rows = lines.size() - 1;
  if (rows != dataset.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "row count mismatch: " + std::to_string(rows) +
                    " prediction rows for " + std::to_string(dataset.size()) +
                    " instances");
  }
  std::vector<std::vector<Label>> columns(m, std::vector<Label>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto fields = csv::SplitLine(lines[r + 1]);
    if (fields.size() != m) {
      throw Error(ErrorCode::kParse,
                  "inconsistent row width at row " + std::to_string(r + 1));
    }
    for (std::size_t k = 0; k < m; ++k) {
      const auto v = csv::ParseInt(fields[k]);
      if (!v || (*v != 1 && *v != -1)) {
        throw Error(ErrorCode::kParse,
                    "invalid prediction at row " + std::to_string(r + 1));
      }
      columns[k][r] = *v == 1 ? Label::kPositive : Label::kNegative;
    }
  }
  std::vector<TableClassifier> out;
  out.reserve(m);
  for (auto& column : columns) out.emplace_back(std::move(column), dataset);
  return out;
}

std::vector<TableClassifier> LoadPredictionMatrix(
    const std::filesystem::path& path, const Dataset& dataset) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParse, "cannot open predictions " + path.string());
  }
  return ParsePredictionMatrixCsv(in, dataset);
}

void WritePredictionMatrixCsv(std::span<const Classifier> members,
                              const Dataset& dataset, std::ostream& out) {
  const PredictionMatrix matrix = PredictionMatrix::Evaluate(members, dataset);
  for (std::size_t j = 0; j < matrix.members(); ++j) {
    out << (j == 0 ? "" : ",") << "clf_" << j + 1;
  }
  out << '\n';
  for (std::size_t i = 0; i < matrix.instances(); ++i) {
    for (std::size_t j = 0; j < matrix.members(); ++j) {
      out << (j == 0 ? "" : ",") << ToInt(matrix.at(j, i));
    }
    out << '\n';
  }
}

}  // namespace fairmix
