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

#ifndef XPLAIN_TESTS_UNIT_TEST_UTIL_H_
#define XPLAIN_TESTS_UNIT_TEST_UTIL_H_

#include <string>
#include <vector>

#include "xplain/model.h"
#include "xplain/rational.h"

namespace xplain::testing {

inline Rational R(const std::string& text) { return ParseRational(text); }
inline BooleanInstance X(const std::string& bits) {
  return BooleanInstance::Parse(bits);
}
inline FeatureSubset S(std::vector<int> indices) {
  return FeatureSubset::Of(std::move(indices));
}
inline Perceptron P(std::vector<std::string> weights, const std::string& bias) {
  std::vector<Rational> w;
  for (const std::string& text : weights) w.push_back(R(text));
  return Perceptron(std::move(w), R(bias));
}

// Tree computing z_i over n features.
inline DecisionTree VarTree(int n, int i) {
  return DecisionTree(n, {TreeNode::Split(i, 1, 2), TreeNode::Leaf(false),
                          TreeNode::Leaf(true)});
}

inline DecisionTree AndTree(int n, int a, int b) {
  return DecisionTree(n, {TreeNode::Split(a, 1, 2), TreeNode::Leaf(false),
                          TreeNode::Split(b, 3, 4), TreeNode::Leaf(false),
                          TreeNode::Leaf(true)});
}

inline DecisionTree XorTree(int n, int a, int b) {
  return DecisionTree(
      n, {TreeNode::Split(a, 1, 4), TreeNode::Split(b, 2, 3),
          TreeNode::Leaf(false), TreeNode::Leaf(true),
          TreeNode::Split(b, 5, 6), TreeNode::Leaf(true),
          TreeNode::Leaf(false)});
}

inline Ensemble MajorityOfVars(int n, const std::vector<int>& features) {
  std::vector<BaseModel> members;
  for (int f : features) members.push_back(VarTree(n, f));
  return Ensemble(std::move(members));
}

inline std::vector<BooleanInstance> AllInputs(int n) {
  std::vector<BooleanInstance> out;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    out.push_back(BooleanInstance::FromMask(mask, n));
  }
  return out;
}

template <typename F, typename G>
bool SameTruthTable(int n, const F& f, const G& g) {
  for (const BooleanInstance& z : AllInputs(n)) {
    if (Evaluate(Model(f), z) != Evaluate(Model(g), z)) return false;
  }
  return true;
}

inline int CountAccepting(const Model& model) {
  int count = 0;
  for (const BooleanInstance& z : AllInputs(FeatureCount(model))) {
    count += Evaluate(model, z);
  }
  return count;
}

}  // namespace xplain::testing

#endif  // XPLAIN_TESTS_UNIT_TEST_UTIL_H_
