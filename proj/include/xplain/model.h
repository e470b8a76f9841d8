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

#ifndef XPLAIN_MODEL_H_
#define XPLAIN_MODEL_H_

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xplain/rational.h"

namespace xplain {

// A full assignment x in {0,1}^n.
class BooleanInstance {
 public:
  BooleanInstance() = default;
  explicit BooleanInstance(std::vector<uint8_t> bits);

  // Parses a string of '0'/'1' characters, feature 0 first.
  static BooleanInstance Parse(std::string_view text);
  // Bit i of `mask` becomes feature i.
  static BooleanInstance FromMask(uint64_t mask, int feature_count);
  static BooleanInstance Constant(int feature_count, bool value);

  int size() const { return static_cast<int>(bits_.size()); }
  bool operator[](int i) const { return bits_[i] != 0; }
  std::span<const uint8_t> bits() const { return bits_; }

  BooleanInstance WithBit(int i, bool value) const;
  uint64_t ToMask() const;
  std::string ToString() const;

  friend auto operator<=>(const BooleanInstance&,
                          const BooleanInstance&) = default;

 private:
  std::vector<uint8_t> bits_;
};

// A set of feature indices kept strictly increasing. Ordering is
// lexicographic on the index sequence, which is the tie-break rule used for
// every witness the library returns.
class FeatureSubset {
 public:
  FeatureSubset() = default;

  // Sorts `indices`; rejects negatives and duplicates.
  static FeatureSubset Of(std::vector<int> indices);
  static FeatureSubset All(int feature_count);
  static FeatureSubset FromMask(uint64_t mask);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int feature) const;
  // Throws kInputShape unless every index is below `feature_count`.
  void CheckWithin(int feature_count) const;

  FeatureSubset Complement(int feature_count) const;
  FeatureSubset Union(const FeatureSubset& other) const;
  FeatureSubset Without(int feature) const;
  bool IsSubsetOf(const FeatureSubset& other) const;
  uint64_t ToMask() const;
  std::string ToString() const;

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  friend auto operator<=>(const FeatureSubset&,
                          const FeatureSubset&) = default;

 private:
  std::vector<int> indices_;
};

struct Diagnostic {
  std::string message;
  std::string location;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  int if_zero = -1;
  int if_one = -1;
  bool label = false;

  bool is_leaf() const { return feature < 0; }
  static TreeNode Leaf(bool label) { return TreeNode{-1, -1, -1, label}; }
  static TreeNode Split(int feature, int if_zero, int if_one) {
    return TreeNode{feature, if_zero, if_one, false};
  }
};

// Binary decision tree over Boolean features stored as a node arena. A
// well-formed tree tests every feature at most once on each root-to-leaf path;
// call Validate() on anything built from untrusted input.
class DecisionTree {
 public:
  DecisionTree(int feature_count, std::vector<TreeNode> nodes, int root = 0);

  static DecisionTree Constant(int feature_count, bool label);

  int feature_count() const { return feature_count_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int id) const { return nodes_[id]; }
  int root() const { return root_; }

  bool Evaluate(const BooleanInstance& x) const;
  // Leaf id reached by x.
  int LeafFor(const BooleanInstance& x) const;

  // Ids of leaves reachable from the root, increasing.
  std::vector<int> LeafIds() const;
  int leaf_count() const { return static_cast<int>(LeafIds().size()); }
  int depth() const;

  std::vector<Diagnostic> Validate() const;

 private:
  int feature_count_;
  std::vector<TreeNode> nodes_;
  int root_;
};

// Outputs 1 iff w.x + b >= 0, evaluated exactly.
class Perceptron {
 public:
  Perceptron(std::vector<Rational> weights, Rational bias);

  static Perceptron Constant(int feature_count, bool label);

  int feature_count() const { return static_cast<int>(weights_.size()); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& bias() const { return bias_; }

  Rational Score(const BooleanInstance& x) const;
  bool Evaluate(const BooleanInstance& x) const;

  std::vector<Diagnostic> Validate() const;

 private:
  std::vector<Rational> weights_;
  Rational bias_;
};

using BaseModel = std::variant<DecisionTree, Perceptron>;

enum class VotingRule { kMajority, kWeighted };

struct Voting {
  VotingRule rule = VotingRule::kMajority;
  std::vector<Rational> weights;  // weighted only, one per base model
  Rational threshold;             // weighted only

  static Voting Majority() { return Voting{}; }
  static Voting Weighted(std::vector<Rational> weights, Rational threshold) {
    return Voting{VotingRule::kWeighted, std::move(weights),
                  std::move(threshold)};
  }
};

// k base models combined by majority (at least ceil(k/2) positive votes) or by
// weighted voting (sum of weights of positive voters >= threshold).
class Ensemble {
 public:
  Ensemble(std::vector<BaseModel> models, Voting voting = Voting::Majority());

  int size() const { return static_cast<int>(models_.size()); }
  int feature_count() const;
  const std::vector<BaseModel>& models() const { return models_; }
  const Voting& voting() const { return voting_; }

  // Weight and threshold as used for the decision; majority voting reports
  // unit weights and threshold ceil(k/2).
  Rational VoteWeight(int model_index) const;
  Rational VoteThreshold() const;

  bool Decide(std::span<const uint8_t> votes) const;
  bool Evaluate(const BooleanInstance& x) const;

  bool AllTrees() const;
  bool AllPerceptrons() const;

  std::vector<Diagnostic> Validate() const;

 private:
  std::vector<BaseModel> models_;
  Voting voting_;
};

using Model = std::variant<DecisionTree, Perceptron, Ensemble>;

enum class ModelKind {
  kTree,
  kPerceptron,
  kTreeEnsemble,
  kPerceptronEnsemble,
  kMixedEnsemble,
};

const char* ModelKindName(ModelKind kind);
ModelKind KindOf(const Model& model);

int FeatureCount(const BaseModel& model);
int FeatureCount(const Model& model);
bool Evaluate(const BaseModel& model, const BooleanInstance& x);
bool Evaluate(const Model& model, const BooleanInstance& x);
std::vector<Diagnostic> Validate(const Model& model);

// Wraps a single model as a one-member majority ensemble (same function).
Ensemble AsEnsemble(const Model& model);
// True for a tree or an all-tree ensemble.
bool IsTreeModel(const Model& model);

// Stable 64-bit structural hash (FNV-1a over a canonical encoding).
uint64_t Fingerprint(const Model& model);

// Independent Bernoulli parameters p(i) = Pr[z_i = 1].
class ProductDistribution {
 public:
  explicit ProductDistribution(std::vector<Rational> p);
  static ProductDistribution Uniform(int feature_count);

  int size() const { return static_cast<int>(p_.size()); }
  const Rational& p(int i) const { return p_[i]; }
  const std::vector<Rational>& values() const { return p_; }
  Rational Probability(int feature, bool value) const;
  // Product of per-feature probabilities of the full assignment.
  Rational Mass(const BooleanInstance& z) const;

  uint64_t Fingerprint() const;

 private:
  std::vector<Rational> p_;
};

void CheckInstance(const BooleanInstance& x, int feature_count);

}  // namespace xplain

#endif  // XPLAIN_MODEL_H_
