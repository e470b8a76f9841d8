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

#include "xplain/config.h"

#include <cstdlib>
#include <string>

#include "xplain/error.h"

namespace xplain {

namespace {

template <typename T>
void ReadEnv(const char* name, T& target) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') return;
  try {
    size_t used = 0;
    const long long parsed = std::stoll(value, &used);
    if (used != std::string(value).size() || parsed < 0) throw 0;
    target = static_cast<T>(parsed);
  } catch (...) {
    Fail(ErrorCode::kInvalidArgument,
         std::string("environment variable ") + name +
             " must be a non-negative integer");
  }
}

}  // namespace

Limits Limits::FromEnvironment() {
  Limits limits;
  ReadEnv("XPLAIN_ORACLE_MAX_FEATURES", limits.oracle_max_features);
  ReadEnv("XPLAIN_SHAP_ORACLE_MAX_FEATURES", limits.shap_oracle_max_features);
  ReadEnv("XPLAIN_PSEUDOPOLY_BUDGET", limits.pseudopoly_budget);
  ReadEnv("XPLAIN_SHAP_ENUM_MAX_FEATURES", limits.shap_enum_max_features);
  ReadEnv("XPLAIN_THREADS", limits.threads);
  if (limits.threads < 1) limits.threads = 1;
  return limits;
}

}  // namespace xplain
