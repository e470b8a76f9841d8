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

#ifndef XPLAIN_GENERATOR_H_
#define XPLAIN_GENERATOR_H_

#include <cstdint>
#include <random>
#include <string>

#include "xplain/model.h"
#include "xplain/model_format.h"

namespace xplain {

enum class InstanceClass { kTree, kTreeEnsemble, kPerceptron, kPerceptronEnsemble };

const char* InstanceClassName(InstanceClass cls);
InstanceClass ParseInstanceClass(const std::string& name);

struct GeneratorParams {
  uint64_t seed = 1;
  InstanceClass cls = InstanceClass::kTreeEnsemble;
  int n = 8;
  int k = 3;             // ensemble size
  int m = 8;             // leaves per tree (upper bound)
  int weight_bound = 8;  // perceptron weights and bias in [-W, W]
  bool weighted_voting = false;
};

struct GeneratedInstance {
  ModelDocument document;
  BooleanInstance x;
};

// Integer draws from mt19937_64 by rejection sampling, so streams depend only
// on the engine, which the standard fixes bit for bit.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound); bound > 0.
  uint64_t Below(uint64_t bound);
  // Uniform in [lo, hi].
  int64_t Between(int64_t lo, int64_t hi);
  bool Bit() { return engine_() >> 63; }

 private:
  std::mt19937_64 engine_;
};

DecisionTree RandomTree(Rng& rng, int feature_count, int max_leaves);
Perceptron RandomPerceptron(Rng& rng, int feature_count, int weight_bound);
BooleanInstance RandomInstance(Rng& rng, int feature_count);

// Trees grow by splitting a random leaf on a random feature not yet tested on
// its path, until m leaves or no leaf can split.
GeneratedInstance GenerateRandomInstance(const GeneratorParams& params);

}  // namespace xplain

#endif  // XPLAIN_GENERATOR_H_
