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

#include <sstream>

#include "harness.h"
#include "xplain/bench.h"
#include "xplain/model_format.h"
#include "xplain/query.h"

namespace xplain::acceptance {

namespace {

std::string WithoutTimes(const std::string& csv) {
  std::istringstream in(csv);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    // Drop the wall_seconds column (8th field).
    std::vector<std::string> fields;
    std::stringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    if (fields.size() > 7) fields.erase(fields.begin() + 7);
    for (const std::string& f : fields) out += f + ",";
    out += "\n";
  }
  return out;
}

std::string Stream(uint64_t seed) {
  std::string out;
  for (int i = 0; i < 40; ++i) {
    GeneratorParams p;
    p.seed = seed + i;
    p.cls = static_cast<InstanceClass>(i % 4);
    p.n = 6 + i % 5;
    p.weighted_voting = i % 3 == 0;
    const GeneratedInstance inst = GenerateRandomInstance(p);
    out += SerializeModel(inst.document) + inst.x.ToString() + "\n";
  }
  return out;
}

std::string Payloads(int threads) {
  Limits limits;
  limits.threads = threads;
  std::string out;
  const std::vector<Case>& corpus = Corpus();
  for (size_t i = 0; i < corpus.size(); i += 25) {
    const Case& c = corpus[i];
    for (const char* kind : {"csr", "mcr", "msr", "cc", "shap", "expect",
                             "enumerate-contrastive", "greedy"}) {
      QueryRequest request;
      request.kind = ParseQueryKind(kind);
      request.instance = c.x.ToString();
      request.subset = c.subset.indices();
      request.bound = c.bound;
      out += RunQuery(c.model, request, limits).PayloadJson() + "\n";
    }
  }
  return out;
}

}  // namespace

Outcome Determinism() {
  Tally tally;
  tally.Check(Stream(99) == Stream(99), "generator stream");
  const std::string single = Payloads(1);
  tally.Check(single == Payloads(1), "query payloads repeat");
  tally.Check(single == Payloads(4), "query payloads with 4 threads");
  BenchParams bench;
  bench.suite = "oracle-vs-fpt";
  bench.values = {8, 12, 24};
  bench.repeats = 1;
  tally.Check(WithoutTimes(BenchCsv(RunBench(bench))) ==
                  WithoutTimes(BenchCsv(RunBench(bench))),
              "bench rows");
  bench.limits.threads = 4;
  const std::string threaded = WithoutTimes(BenchCsv(RunBench(bench)));
  bench.limits.threads = 1;
  tally.Check(threaded == WithoutTimes(BenchCsv(RunBench(bench))),
              "bench rows with 4 threads");
  return tally.Result("generator streams, query payloads (1 and 4 threads), "
                      "bench rows all byte-identical");
}

}  // namespace xplain::acceptance
