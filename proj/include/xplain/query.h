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

#ifndef XPLAIN_QUERY_H_
#define XPLAIN_QUERY_H_

#include <optional>
#include <string>
#include <vector>

#include "xplain/config.h"
#include "xplain/model.h"

namespace xplain {

enum class QueryKind {
  kCsr,
  kMcr,
  kMsr,
  kCc,
  kShap,
  kExpect,
  kEnumerateContrastive,
  kGreedy,
};

// Selector values: auto, oracle, fpt, pseudopoly, interpolation, enumeration.
struct QueryRequest {
  QueryKind kind = QueryKind::kCsr;
  std::string instance;                    // '0'/'1' string
  std::vector<int> subset;                 // csr, cc
  std::optional<int> bound;                // mcr, msr
  std::optional<int> feature;              // shap; all features when absent
  std::vector<std::string> distribution;   // shap, expect; empty = uniform
  std::vector<int> order;                  // greedy; empty = 0..n-1
  bool minimal_only = false;               // enumerate-contrastive
  std::string algorithm = "auto";
};

struct QueryResult {
  QueryKind kind = QueryKind::kCsr;
  std::string algorithm;       // route actually taken
  std::string answer_json;     // canonical JSON object
  std::vector<std::string> warnings;
  // False only for decision queries answered No (csr, bounded mcr/msr).
  bool affirmative = true;
  double wall_seconds = 0;

  // Everything except timings, as canonical JSON.
  std::string PayloadJson() const;
  // Payload plus "wall_seconds".
  std::string ToJson() const;
};

const char* QueryKindName(QueryKind kind);
QueryKind ParseQueryKind(const std::string& name);

// Request as JSON: {"query": "csr", "instance": "0110", "subset": [0, 2],
// "bound": 1, "feature": 0, "distribution": ["1/3", ...] or "uniform",
// "order": [...], "minimal_only": false, "algorithm": "auto"}.
QueryRequest ParseQueryRequest(const std::string& json);
std::string SerializeQueryRequest(const QueryRequest& request);

// Dispatches to the matching module. Raises kInvalidArgument for a selector
// that does not fit the model class, kResourceExceeded when a cap is hit.
QueryResult RunQuery(const Model& model, const QueryRequest& request,
                     const Limits& limits = {});

}  // namespace xplain

#endif  // XPLAIN_QUERY_H_
