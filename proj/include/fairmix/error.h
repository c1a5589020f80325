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

#ifndef FAIRMIX_ERROR_H_
#define FAIRMIX_ERROR_H_

#include <stdexcept>
#include <string>

namespace fairmix {

enum class ErrorCode {
  kParse,             // malformed input file
  kContract,          // precondition violated by the caller
  kDimensionMismatch,
  kUnsupportedQuery,  // e.g. flipped-z query on a table classifier
  kUndefinedMetric,
};

// All library failures are reported as this exception. The CLI maps every
// Error to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fairmix

#endif  // FAIRMIX_ERROR_H_
