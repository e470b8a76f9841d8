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

#ifndef XPLAIN_CONFIG_H_
#define XPLAIN_CONFIG_H_

#include <cstdint>

namespace xplain {

// Resource limits shared by every algorithm. Exceeding a limit raises
// ErrorCode::kResourceExceeded; nothing is silently approximated.
struct Limits {
  // Largest feature count the exhaustive oracles accept.
  int oracle_max_features = 20;
  // The Shapley oracle also sums over coalitions, so it is capped lower.
  int shap_oracle_max_features = 14;
  // Largest total |weight| (after integer scaling) for pseudo-polynomial DPs.
  int64_t pseudopoly_budget = 4'000'000;
  // Cap on coalition enumeration in shap_enum.
  int shap_enum_max_features = 16;
  // Worker threads for leaf-tuple enumeration. Results never depend on it.
  int threads = 1;

  // Reads XPLAIN_ORACLE_MAX_FEATURES, XPLAIN_SHAP_ORACLE_MAX_FEATURES,
  // XPLAIN_PSEUDOPOLY_BUDGET, XPLAIN_SHAP_ENUM_MAX_FEATURES and
  // XPLAIN_THREADS on top of the defaults above.
  static Limits FromEnvironment();
};

}  // namespace xplain

#endif  // XPLAIN_CONFIG_H_
