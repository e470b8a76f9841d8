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

#include "xplain/error.h"

namespace xplain {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInputShape:
      return "input-shape";
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kUnsupportedModel:
      return "unsupported-model";
    case ErrorCode::kResourceExceeded:
      return "resource-exceeded";
    case ErrorCode::kInfeasible:
      return "infeasible";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kInvalidInstance:
      return "invalid-instance";
  }
  return "unknown";
}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace xplain
