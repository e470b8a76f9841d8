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

#include "xplain/bench.h"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "xplain/error.h"
#include "xplain/generator.h"
#include "xplain/oracle.h"
#include "xplain/perceptron_explain.h"
#include "xplain/tree_explain.h"

namespace xplain {

namespace {

using Clock = std::chrono::steady_clock;

// Runs `work` `repeats` times; returns the fastest wall time and the answer.
std::pair<double, std::string> Measure(
    int repeats, const std::function<std::string()>& work) {
  double best = -1;
  std::string answer;
  for (int r = 0; r < std::max(1, repeats); ++r) {
    const auto start = Clock::now();
    answer = work();
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (best < 0 || seconds < best) best = seconds;
  }
  return {best, answer};
}

std::vector<int> DefaultValues(const std::string& suite) {
  if (suite == "scaling-in-m") return {4, 8, 16, 32};
  if (suite == "scaling-in-k") return {1, 2, 3, 4};
  if (suite == "pseudopoly-in-W") return {10, 100, 1000};
  if (suite == "oracle-vs-fpt") return {12, 16, 20, 30};
  Fail(ErrorCode::kInvalidArgument, "unknown bench suite '" + suite + "'");
}

uint64_t RowSeed(uint64_t seed, int index) {
  return seed * 1000003ULL + static_cast<uint64_t>(index);
}

}  // namespace

std::string Digest(const std::string& text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(h));
  return buffer;
}

std::vector<BenchRow> RunBench(const BenchParams& params) {
  const std::vector<int> values =
      params.values.empty() ? DefaultValues(params.suite) : params.values;
  DefaultValues(params.suite);  // validates the suite name
  const auto start = Clock::now();
  std::vector<BenchRow> rows;
  for (size_t index = 0; index < values.size(); ++index) {
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed > params.budget_seconds) {
      BenchRow marker;
      marker.suite = params.suite;
      marker.algorithm = "truncated";
      rows.push_back(marker);
      break;
    }
    const int value = values[index];
    GeneratorParams gen;
    gen.seed = RowSeed(params.seed, static_cast<int>(index));
    gen.n = params.n;
    gen.k = params.k;
    gen.m = params.m;
    BenchRow row;
    row.suite = params.suite;
    row.query = "cc";

    if (params.suite == "pseudopoly-in-W") {
      gen.cls = InstanceClass::kPerceptron;
      gen.weight_bound = value;
      const GeneratedInstance inst = GenerateRandomInstance(gen);
      const Perceptron& p = std::get<Perceptron>(inst.document.model);
      row.n = gen.n;
      row.k = 1;
      row.weight = value;
      row.algorithm = "pseudopoly";
      std::tie(row.wall_seconds, row.answer_digest) =
          Measure(params.repeats, [&] {
            return ToString(CcPerceptronPseudopoly(p, inst.x, FeatureSubset(),
                                                   params.limits));
          });
      row.answer_digest = Digest(row.answer_digest);
      rows.push_back(row);
      continue;
    }

    gen.cls = InstanceClass::kTreeEnsemble;
    if (params.suite == "scaling-in-m") gen.m = value;
    if (params.suite == "scaling-in-k") gen.k = value;
    if (params.suite == "oracle-vs-fpt") gen.n = value;
    const GeneratedInstance inst = GenerateRandomInstance(gen);
    const Ensemble& e = std::get<Ensemble>(inst.document.model);
    row.n = gen.n;
    row.k = gen.k;
    row.m = gen.m;
    row.algorithm = "tree-fpt";
    std::tie(row.wall_seconds, row.answer_digest) =
        Measure(params.repeats, [&] {
          return ToString(
              CcTreeEnsemble(e, inst.x, FeatureSubset(), params.limits));
        });
    row.answer_digest = Digest(row.answer_digest);
    rows.push_back(row);

    if (params.suite == "oracle-vs-fpt") {
      BenchRow oracle = row;
      oracle.algorithm = "oracle";
      try {
        std::tie(oracle.wall_seconds, oracle.answer_digest) =
            Measure(1, [&] {
              return ToString(OracleCompletionCount(
                  inst.document.model, inst.x, FeatureSubset(),
                  params.limits));
            });
        oracle.answer_digest = Digest(oracle.answer_digest);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kResourceExceeded) throw;
        oracle.wall_seconds = -1;
        oracle.answer_digest = "cap-exceeded";
      }
      rows.push_back(oracle);
    }
  }
  return rows;
}

std::string BenchCsv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << kBenchHeader << "\n";
  for (const BenchRow& row : rows) {
    if (row.algorithm == "truncated") {
      out << row.suite << ",,,,,,truncated,,\n";
      continue;
    }
    char seconds[32] = "";
    if (row.wall_seconds >= 0) {
      std::snprintf(seconds, sizeof seconds, "%.6f", row.wall_seconds);
    }
    out << row.suite << "," << row.n << "," << row.k << "," << row.m << ","
        << row.weight << "," << row.query << "," << row.algorithm << ","
        << seconds << "," << row.answer_digest << "\n";
  }
  return out.str();
}

}  // namespace xplain
