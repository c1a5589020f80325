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

#ifndef FAIRMIX_DATASET_H_
#define FAIRMIX_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace fairmix {

enum class Label : std::int8_t { kNegative = -1, kPositive = 1 };

inline int ToInt(Label label) { return static_cast<int>(label); }
inline Label Flip(Label label) {
  return label == Label::kPositive ? Label::kNegative : Label::kPositive;
}

// Sensitive attribute values. Scenarios code women as 1.
inline constexpr int kGroupCount = 2;

struct Instance {
  std::vector<double> features;
  Label label = Label::kNegative;
  int sensitive = 0;

  bool operator==(const Instance&) const = default;
};

// Immutable, non-empty, ordered collection of instances sharing one feature
// dimension. Index i (0-based here, 1-based in every report) identifies a user.
class Dataset {
 public:
  explicit Dataset(std::vector<Instance> instances);

  std::size_t size() const { return instances_.size(); }
  std::size_t dimension() const { return dimension_; }
  const Instance& operator[](std::size_t i) const { return instances_[i]; }
  std::span<const Instance> instances() const { return instances_; }

  // Content hash; table classifiers bind to it.
  std::uint64_t fingerprint() const { return fingerprint_; }

  bool operator==(const Dataset& other) const {
    return instances_ == other.instances_;
  }

 private:
  std::vector<Instance> instances_;
  std::size_t dimension_ = 0;
  std::uint64_t fingerprint_ = 0;
};

// A pair of instances with bitwise-identical feature vectors and different
// sensitive values. left < right.
struct CounterfactualPair {
  std::size_t left = 0;
  std::size_t right = 0;

  bool operator==(const CounterfactualPair&) const = default;
};

// CSV with header `f_1,...,f_d,y,z`. Errors name the 1-based data row.
Dataset ParseDatasetCsv(std::istream& in);
Dataset LoadDataset(const std::filesystem::path& path);

// Features are written with 17 significant digits so that loading the output
// reproduces the dataset exactly.
void WriteDatasetCsv(const Dataset& dataset, std::ostream& out);
void SaveDataset(const Dataset& dataset, const std::filesystem::path& path);

// Ascending 0-based indices of the instances with sensitive value z.
std::vector<std::size_t> GroupIndices(const Dataset& dataset, int z);

// All pairs (i, i'), i < i', with identical features and differing z, ordered
// by (i, i').
std::vector<CounterfactualPair> BuildCounterfactualPairs(
    const Dataset& dataset);

}  // namespace fairmix

#endif  // FAIRMIX_DATASET_H_
