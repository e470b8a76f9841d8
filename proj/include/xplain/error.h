// Copyright 2026 The Xplain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XPLAIN_ERROR_H_
#define XPLAIN_ERROR_H_

#include <stdexcept>
#include <string>

namespace xplain {

enum class ErrorCode {
  kInputShape = 1,      // instance/weight length mismatches
  kInvalidArgument = 2,
  kUnsupportedModel = 3,
  kResourceExceeded = 4,  // brute-force caps, pseudo-polynomial budgets
  kInfeasible = 5,
  kParse = 6,
  kInvalidInstance = 7,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type; the C API
// maps `code()` onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace xplain

#endif  // XPLAIN_ERROR_H_
