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

#include "xplain/generator.h"

#include <algorithm>
#include <optional>

#include "xplain/error.h"

namespace xplain {

uint64_t Rng::Below(uint64_t bound) {
  if (bound == 0) Fail(ErrorCode::kInvalidArgument, "empty range");
  // Largest multiple of bound that fits; draws at or above it are rejected.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

int64_t Rng::Between(int64_t lo, int64_t hi) {
  if (hi < lo) Fail(ErrorCode::kInvalidArgument, "empty range");
  return lo + static_cast<int64_t>(Below(static_cast<uint64_t>(hi - lo) + 1));
}

const char* InstanceClassName(InstanceClass cls) {
  switch (cls) {
    case InstanceClass::kTree:
      return "tree";
    case InstanceClass::kTreeEnsemble:
      return "tree-ensemble";
    case InstanceClass::kPerceptron:
      return "perceptron";
    case InstanceClass::kPerceptronEnsemble:
      return "perceptron-ensemble";
  }
  return "unknown";
}

InstanceClass ParseInstanceClass(const std::string& name) {
  for (InstanceClass cls :
       {InstanceClass::kTree, InstanceClass::kTreeEnsemble,
        InstanceClass::kPerceptron, InstanceClass::kPerceptronEnsemble}) {
    if (name == InstanceClassName(cls)) return cls;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown instance class '" + name + "'");
}

DecisionTree RandomTree(Rng& rng, int feature_count, int max_leaves) {
  std::vector<TreeNode> nodes{TreeNode::Leaf(rng.Bit())};
  std::vector<std::vector<uint8_t>> used{std::vector<uint8_t>(feature_count)};
  std::vector<int> leaves{0};
  while (static_cast<int>(leaves.size()) < max_leaves) {
    std::vector<int> open;  // positions in `leaves` that can still split
    for (size_t i = 0; i < leaves.size(); ++i) {
      const auto& u = used[leaves[i]];
      if (std::find(u.begin(), u.end(), 0) != u.end()) open.push_back(i);
    }
    if (open.empty()) break;
    const int slot = open[rng.Below(open.size())];
    const int leaf = leaves[slot];
    std::vector<int> free;
    for (int f = 0; f < feature_count; ++f) {
      if (!used[leaf][f]) free.push_back(f);
    }
    const int feature = free[rng.Below(free.size())];
    const int zero = static_cast<int>(nodes.size());
    const int one = zero + 1;
    std::vector<uint8_t> child_used = used[leaf];
    child_used[feature] = 1;
    nodes.push_back(TreeNode::Leaf(rng.Bit()));
    nodes.push_back(TreeNode::Leaf(rng.Bit()));
    used.push_back(child_used);
    used.push_back(child_used);
    nodes[leaf] = TreeNode::Split(feature, zero, one);
    leaves[slot] = zero;
    leaves.push_back(one);
  }
  return DecisionTree(feature_count, std::move(nodes), 0);
}

Perceptron RandomPerceptron(Rng& rng, int feature_count, int weight_bound) {
  std::vector<Rational> weights;
  for (int i = 0; i < feature_count; ++i) {
    weights.push_back(MakeRational(rng.Between(-weight_bound, weight_bound)));
  }
  const Rational bias = MakeRational(rng.Between(-weight_bound, weight_bound));
  return Perceptron(std::move(weights), bias);
}

BooleanInstance RandomInstance(Rng& rng, int feature_count) {
  std::vector<uint8_t> bits;
  for (int i = 0; i < feature_count; ++i) bits.push_back(rng.Bit());
  return BooleanInstance(std::move(bits));
}

GeneratedInstance GenerateRandomInstance(const GeneratorParams& params) {
  if (params.n < 0 || params.k < 1 || params.m < 1 || params.weight_bound < 0) {
    Fail(ErrorCode::kInvalidArgument, "generator parameters out of range");
  }
  Rng rng(params.seed);
  const bool trees = params.cls == InstanceClass::kTree ||
                     params.cls == InstanceClass::kTreeEnsemble;
  auto base = [&]() -> BaseModel {
    if (trees) return RandomTree(rng, params.n, params.m);
    return RandomPerceptron(rng, params.n, params.weight_bound);
  };
  std::optional<Model> model;
  if (params.cls == InstanceClass::kTree) {
    model = RandomTree(rng, params.n, params.m);
  } else if (params.cls == InstanceClass::kPerceptron) {
    model = RandomPerceptron(rng, params.n, params.weight_bound);
  } else {
    std::vector<BaseModel> members;
    for (int i = 0; i < params.k; ++i) members.push_back(base());
    Voting voting = Voting::Majority();
    if (params.weighted_voting) {
      std::vector<Rational> weights;
      int64_t positive = 0;
      for (int i = 0; i < params.k; ++i) {
        const int64_t w = rng.Between(-1, 3);
        positive += std::max<int64_t>(0, w);
        weights.push_back(MakeRational(w));
      }
      voting = Voting::Weighted(std::move(weights),
                                MakeRational(rng.Between(0, positive)));
    }
    model = Ensemble(std::move(members), std::move(voting));
  }
  const BooleanInstance x = RandomInstance(rng, params.n);
  std::string provenance = std::string("generated class=") +
                           InstanceClassName(params.cls) +
                           " seed=" + std::to_string(params.seed) +
                           " n=" + std::to_string(params.n) +
                           " k=" + std::to_string(params.k) +
                           " m=" + std::to_string(params.m) +
                           " W=" + std::to_string(params.weight_bound);
  if (params.weighted_voting) provenance += " weighted";
  return GeneratedInstance{
      ModelDocument{std::move(*model), "", std::move(provenance),
                    kModelSchemaVersion},
      x};
}

}  // namespace xplain
