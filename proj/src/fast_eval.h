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

#ifndef XPLAIN_SRC_FAST_EVAL_H_
#define XPLAIN_SRC_FAST_EVAL_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "xplain/model.h"

namespace xplain::internal {

// Integer images of a rational vector after scaling by the common denominator,
// or nullopt when any scaled magnitude does not comfortably fit in int64.
std::optional<std::vector<int64_t>> ScaleToInt64(
    std::span<const Rational> values);

// Model compiled for repeated evaluation on bit-mask inputs (feature i is bit
// i). Perceptron and voting arithmetic runs on scaled integers; the result is
// identical to exact rational evaluation.
class CompiledModel {
 public:
  explicit CompiledModel(const Model& model);

  int feature_count() const { return feature_count_; }
  bool Evaluate(uint64_t mask) const;

 private:
  struct Tree {
    std::vector<int> feature;
    std::vector<int> if_zero;
    std::vector<int> if_one;
    std::vector<uint8_t> label;
    int root = 0;
  };
  struct Linear {
    std::vector<int64_t> weights;
    int64_t bias = 0;
    std::optional<Perceptron> exact;  // used when scaling overflowed
  };
  struct Member {
    bool is_tree = true;
    Tree tree;
    Linear linear;
  };

  bool EvaluateMember(const Member& m, uint64_t mask) const;

  int feature_count_ = 0;
  std::vector<Member> members_;
  bool majority_ = true;
  std::vector<int64_t> vote_weights_;
  int64_t vote_threshold_ = 0;
  std::optional<Ensemble> exact_voting_;
};

}  // namespace xplain::internal

#endif  // XPLAIN_SRC_FAST_EVAL_H_
