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

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include "harness.h"

namespace {

struct Criterion {
  const char* name;
  std::function<xplain::acceptance::Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace xplain::acceptance;
  const Criterion criteria[] = {
      {"1 oracle-equivalence", OracleEquivalence},
      {"2 shapley-identities", ShapleyIdentities},
      {"3 duality", Duality},
      {"4 transform-equivalence", TransformEquivalence},
      {"5 reduction-soundness", ReductionSoundness},
      {"6 tractability-boundary", TractabilityBoundary},
      {"7 greedy-minimality", GreedyMinimality},
      {"8 determinism", Determinism},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::string(c.name).find(only) == std::string::npos) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    std::printf("%s criterion %s: %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL",
                c.name, outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!outcome.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
