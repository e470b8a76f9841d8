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

#ifndef XPLAIN_BENCH_H_
#define XPLAIN_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "xplain/config.h"

namespace xplain {

// Suites: scaling-in-m, scaling-in-k, pseudopoly-in-W, oracle-vs-fpt.
struct BenchParams {
  std::string suite = "scaling-in-m";
  uint64_t seed = 1;
  // Swept values: m, k, W or n depending on the suite. Empty = suite default.
  std::vector<int> values;
  int n = 30;
  int k = 2;
  int m = 8;
  int repeats = 3;  // the fastest repeat is reported
  double budget_seconds = 120;
  Limits limits;
};

struct BenchRow {
  std::string suite;
  int n = 0;
  int k = 0;
  int m = 0;
  int64_t weight = 0;
  std::string query;
  std::string algorithm;
  double wall_seconds = -1;   // negative when not run
  std::string answer_digest;  // "cap-exceeded" when the route refused
};

inline constexpr const char* kBenchHeader =
    "suite,n,k,m,W,query,algorithm,wall_seconds,answer_digest";

// Rows in sweep order. When the time budget runs out, the remaining values
// are skipped and a final row with algorithm "truncated" is appended.
std::vector<BenchRow> RunBench(const BenchParams& params);

std::string BenchCsv(const std::vector<BenchRow>& rows);

// 64-bit FNV-1a of `text` as 16 hex digits.
std::string Digest(const std::string& text);

}  // namespace xplain

#endif  // XPLAIN_BENCH_H_
