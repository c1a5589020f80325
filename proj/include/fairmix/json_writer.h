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

#ifndef FAIRMIX_JSON_WRITER_H_
#define FAIRMIX_JSON_WRITER_H_

#include <optional>
#include <string>

#include "json.hpp"

namespace fairmix {

// Serializes with sorted keys, two-space indentation and every floating
// point number printed with 12 significant digits ("%.12g"). Non-finite
// numbers become null. Identical documents give byte-identical text.
std::string DumpJson(const nlohmann::json& document);

inline nlohmann::json OptionalNumber(const std::optional<double>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

}  // namespace fairmix

#endif  // FAIRMIX_JSON_WRITER_H_
