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

#include "fairmix/dataset.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>

#include "csv_util.h"
#include "fairmix/error.h"

namespace fairmix {
namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t Mix(std::uint64_t hash, std::uint64_t word) {
  for (int byte = 0; byte < 8; ++byte) {
    hash ^= (word >> (8 * byte)) & 0xffU;
    hash *= kFnvPrime;
  }
  return hash;
}

std::string RowError(const char* what, std::size_t row) {
  return std::string(what) + " at row " + std::to_string(row);
}

// Bit patterns so that feature comparison is exact (0.0 and -0.0 differ).
std::vector<std::uint64_t> FeatureBits(const Instance& instance) {
  std::vector<std::uint64_t> bits(instance.features.size());
  std::transform(instance.features.begin(), instance.features.end(),
                 bits.begin(),
                 [](double v) { return std::bit_cast<std::uint64_t>(v); });
  return bits;
}

}  // namespace

Dataset::Dataset(std::vector<Instance> instances)
    : instances_(std::move(instances)) {
  if (instances_.empty()) {
    throw Error(ErrorCode::kContract, "dataset must contain at least one row");
  }
  dimension_ = instances_.front().features.size();
  fingerprint_ = Mix(kFnvOffset, dimension_);
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const Instance& inst = instances_[i];
    if (inst.features.size() != dimension_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  RowError("inconsistent feature dimension", i + 1));
    }
    if (inst.label != Label::kPositive && inst.label != Label::kNegative) {
      throw Error(ErrorCode::kContract, RowError("invalid label", i + 1));
    }
    if (inst.sensitive != 0 && inst.sensitive != 1) {
      throw Error(ErrorCode::kContract,
                  RowError("invalid sensitive value", i + 1));
    }
    for (double f : inst.features) {
      fingerprint_ = Mix(fingerprint_, std::bit_cast<std::uint64_t>(f));
    }
    fingerprint_ = Mix(fingerprint_, static_cast<std::uint64_t>(
                                         ToInt(inst.label) + 2 * inst.sensitive + 4));
  }
}

Dataset ParseDatasetCsv(std::istream& in) {
  std::vector<std::string> lines = csv::ReadNonBlankLines(in);
  if (lines.empty()) throw Error(ErrorCode::kParse, "empty dataset file");
  std::string& header_line = lines.front();
  if (header_line.rfind("\xEF\xBB\xBF", 0) == 0) header_line.erase(0, 3);

  const auto header = csv::SplitLine(header_line);
  if (header.size() < 2 || header[header.size() - 2] != "y" ||
      header.back() != "z") {
    throw Error(ErrorCode::kParse,
                "dataset header must be f_1,...,f_d,y,z");
  }
  const std::size_t d = header.size() - 2;
  for (std::size_t k = 0; k < d; ++k) {
    if (header[k] != "f_" + std::to_string(k + 1)) {
      throw Error(ErrorCode::kParse, "dataset header column " +
                                         std::to_string(k + 1) +
                                         " must be f_" + std::to_string(k + 1));
    }
  }

  std::vector<Instance> instances;
  instances.reserve(lines.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = csv::SplitLine(lines[r]);
    if (fields.size() != d + 2) {
      throw Error(ErrorCode::kParse, RowError("inconsistent row width", r));
    }
    Instance inst;
    inst.features.reserve(d);
    for (std::size_t k = 0; k < d; ++k) {
      const auto v = csv::ParseDouble(fields[k]);
      if (!v) throw Error(ErrorCode::kParse, RowError("malformed feature", r));
      inst.features.push_back(*v);
    }
    const auto y = csv::ParseInt(fields[d]);
    if (!y || (*y != 1 && *y != -1)) {
      throw Error(ErrorCode::kParse, RowError("invalid label", r));
    }
    const auto z = csv::ParseInt(fields[d + 1]);
    if (!z || (*z != 0 && *z != 1)) {
      throw Error(ErrorCode::kParse, RowError("invalid sensitive value", r));
    }
    inst.label = *y == 1 ? Label::kPositive : Label::kNegative;
    inst.sensitive = static_cast<int>(*z);
    instances.push_back(std::move(inst));
  }
  if (instances.empty()) throw Error(ErrorCode::kParse, "dataset has no rows");
  return Dataset(std::move(instances));
}

Dataset LoadDataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParse, "cannot open dataset " + path.string());
  }
  return ParseDatasetCsv(in);
}

void WriteDatasetCsv(const Dataset& dataset, std::ostream& out) {
  for (std::size_t k = 0; k < dataset.dimension(); ++k) {
    out << "f_" << k + 1 << ',';
  }
  out << "y,z\n";
  char buf[40];
  for (const Instance& inst : dataset.instances()) {
    for (double f : inst.features) {
      std::snprintf(buf, sizeof(buf), "%.17g", f);
      out << buf << ',';
    }
    out << ToInt(inst.label) << ',' << inst.sensitive << '\n';
  }
}

void SaveDataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParse, "cannot write " + path.string());
  WriteDatasetCsv(dataset, out);
}

std::vector<std::size_t> GroupIndices(const Dataset& dataset, int z) {
  if (z != 0 && z != 1) {
    throw Error(ErrorCode::kContract, "sensitive value must be 0 or 1");
  }
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset[i].sensitive == z) indices.push_back(i);
  }
  return indices;
}

std::vector<CounterfactualPair> BuildCounterfactualPairs(
    const Dataset& dataset) {
  // Bucket instances by exact feature bits, then pair across groups within a
  // bucket.
  std::vector<std::vector<std::uint64_t>> keys;
  keys.reserve(dataset.size());
  for (const Instance& inst : dataset.instances()) {
    keys.push_back(FeatureBits(inst));
  }
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  std::vector<CounterfactualPair> pairs;
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin + 1;
    while (end < order.size() && keys[order[end]] == keys[order[begin]]) ++end;
    for (std::size_t a = begin; a < end; ++a) {
      for (std::size_t b = a + 1; b < end; ++b) {
        const std::size_t i = std::min(order[a], order[b]);
        const std::size_t k = std::max(order[a], order[b]);
        if (dataset[i].sensitive != dataset[k].sensitive) {
          pairs.push_back({i, k});
        }
      }
    }
    begin = end;
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return a.left != b.left ? a.left < b.left : a.right < b.right;
  });
  return pairs;
}

}  // namespace fairmix
