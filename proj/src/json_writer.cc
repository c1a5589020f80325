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

#include "fairmix/json_writer.h"

#include <cmath>
#include <cstdio>

namespace fairmix {
namespace {

void WriteString(const std::string& s, std::string& out) {
  // nlohmann's own escaping is correct; reuse it for strings.
  out += nlohmann::json(s).dump();
}

void WriteNumber(double v, std::string& out) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  out += buf;
}

void Write(const nlohmann::json& j, int depth, std::string& out) {
  const std::string indent(2 * (depth + 1), ' ');
  const std::string close_indent(2 * depth, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      // nlohmann::json objects are std::map backed: keys iterate sorted.
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += indent;
        WriteString(it.key(), out);
        out += ": ";
        Write(it.value(), depth + 1, out);
      }
      out += "\n" + close_indent + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k > 0) out += ",\n";
        out += indent;
        Write(j[k], depth + 1, out);
      }
      out += "\n" + close_indent + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      WriteNumber(j.get<double>(), out);
      return;
    case nlohmann::json::value_t::string:
      WriteString(j.get<std::string>(), out);
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string DumpJson(const nlohmann::json& document) {
  std::string out;
  Write(document, 0, out);
  out += '\n';
  return out;
}

}  // namespace fairmix
