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

#include "xplain/model.h"

#include <algorithm>
#include <functional>
#include <sstream>

#include "xplain/error.h"

namespace xplain {

namespace {

std::string Where(const std::string& prefix, const std::string& location) {
  if (prefix.empty()) return location;
  if (location.empty()) return prefix;
  return prefix + "." + location;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class Fnv1a {
 public:
  void Add(std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash_ ^= c;
      hash_ *= 1099511628211ULL;
    }
    hash_ ^= 0xff;
    hash_ *= 1099511628211ULL;
  }
  void Add(int64_t value) { Add(std::to_string(value)); }
  void Add(const Rational& value) { Add(ToString(value)); }
  uint64_t value() const { return hash_; }

 private:
  uint64_t hash_ = 14695981039346656037ULL;
};

void HashBase(Fnv1a& h, const BaseModel& model) {
  std::visit(Overloaded{
                 [&](const DecisionTree& t) {
                   h.Add("tree");
                   h.Add(t.feature_count());
                   h.Add(t.root());
                   for (const TreeNode& n : t.nodes()) {
                     h.Add(n.feature);
                     h.Add(n.if_zero);
                     h.Add(n.if_one);
                     h.Add(n.label ? 1 : 0);
                   }
                 },
                 [&](const Perceptron& p) {
                   h.Add("perceptron");
                   for (const Rational& w : p.weights()) h.Add(w);
                   h.Add(p.bias());
                 },
             },
             model);
}

}  // namespace

void CheckInstance(const BooleanInstance& x, int feature_count) {
  if (x.size() != feature_count) {
    Fail(ErrorCode::kInputShape,
         "instance has " + std::to_string(x.size()) +
             " features, model expects " + std::to_string(feature_count));
  }
}

// ---------------------------------------------------------------------------
// BooleanInstance

BooleanInstance::BooleanInstance(std::vector<uint8_t> bits)
    : bits_(std::move(bits)) {
  for (uint8_t b : bits_) {
    if (b > 1) Fail(ErrorCode::kInvalidArgument, "instance bits must be 0/1");
  }
}

BooleanInstance BooleanInstance::Parse(std::string_view text) {
  std::vector<uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      Fail(ErrorCode::kParse,
           "instance must be a string of 0/1 characters, got '" +
               std::string(text) + "'");
    }
    bits.push_back(c == '1');
  }
  return BooleanInstance(std::move(bits));
}

BooleanInstance BooleanInstance::FromMask(uint64_t mask, int feature_count) {
  std::vector<uint8_t> bits(feature_count);
  for (int i = 0; i < feature_count; ++i) bits[i] = (mask >> i) & 1U;
  return BooleanInstance(std::move(bits));
}

BooleanInstance BooleanInstance::Constant(int feature_count, bool value) {
  return BooleanInstance(std::vector<uint8_t>(feature_count, value ? 1 : 0));
}

BooleanInstance BooleanInstance::WithBit(int i, bool value) const {
  BooleanInstance copy = *this;
  copy.bits_.at(i) = value;
  return copy;
}

uint64_t BooleanInstance::ToMask() const {
  if (size() > 64) Fail(ErrorCode::kResourceExceeded, "mask needs n <= 64");
  uint64_t mask = 0;
  for (int i = 0; i < size(); ++i) mask |= uint64_t{bits_[i]} << i;
  return mask;
}

std::string BooleanInstance::ToString() const {
  std::string s;
  s.reserve(bits_.size());
  for (uint8_t b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

// ---------------------------------------------------------------------------
// FeatureSubset

FeatureSubset FeatureSubset::Of(std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  for (size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0) {
      Fail(ErrorCode::kInvalidArgument, "negative feature index");
    }
    if (i > 0 && indices[i] == indices[i - 1]) {
      Fail(ErrorCode::kInvalidArgument,
           "duplicate feature index " + std::to_string(indices[i]));
    }
  }
  FeatureSubset s;
  s.indices_ = std::move(indices);
  return s;
}

FeatureSubset FeatureSubset::All(int feature_count) {
  FeatureSubset s;
  s.indices_.resize(feature_count);
  for (int i = 0; i < feature_count; ++i) s.indices_[i] = i;
  return s;
}

FeatureSubset FeatureSubset::FromMask(uint64_t mask) {
  FeatureSubset s;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) s.indices_.push_back(i);
  }
  return s;
}

bool FeatureSubset::contains(int feature) const {
  return std::binary_search(indices_.begin(), indices_.end(), feature);
}

void FeatureSubset::CheckWithin(int feature_count) const {
  if (!indices_.empty() && indices_.back() >= feature_count) {
    Fail(ErrorCode::kInputShape,
         "feature index " + std::to_string(indices_.back()) +
             " out of range for " + std::to_string(feature_count) +
             " features");
  }
}

FeatureSubset FeatureSubset::Complement(int feature_count) const {
  FeatureSubset s;
  for (int i = 0; i < feature_count; ++i) {
    if (!contains(i)) s.indices_.push_back(i);
  }
  return s;
}

FeatureSubset FeatureSubset::Union(const FeatureSubset& other) const {
  FeatureSubset s;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                 other.indices_.end(), std::back_inserter(s.indices_));
  return s;
}

FeatureSubset FeatureSubset::Without(int feature) const {
  FeatureSubset s = *this;
  std::erase(s.indices_, feature);
  return s;
}

bool FeatureSubset::IsSubsetOf(const FeatureSubset& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

uint64_t FeatureSubset::ToMask() const {
  uint64_t mask = 0;
  for (int i : indices_) {
    if (i >= 64) Fail(ErrorCode::kResourceExceeded, "mask needs indices < 64");
    mask |= uint64_t{1} << i;
  }
  return mask;
}

std::string FeatureSubset::ToString() const {
  std::ostringstream out;
  out << '{';
  for (size_t i = 0; i < indices_.size(); ++i) {
    if (i) out << ',';
    out << indices_[i];
  }
  out << '}';
  return out.str();
}

// ---------------------------------------------------------------------------
// DecisionTree

DecisionTree::DecisionTree(int feature_count, std::vector<TreeNode> nodes,
                           int root)
    : feature_count_(feature_count), nodes_(std::move(nodes)), root_(root) {
  if (feature_count_ < 0) {
    Fail(ErrorCode::kInvalidArgument, "negative feature count");
  }
  if (nodes_.empty() || root_ < 0 || root_ >= static_cast<int>(nodes_.size())) {
    Fail(ErrorCode::kInvalidArgument, "tree root out of range");
  }
}

DecisionTree DecisionTree::Constant(int feature_count, bool label) {
  return DecisionTree(feature_count, {TreeNode::Leaf(label)}, 0);
}

int DecisionTree::LeafFor(const BooleanInstance& x) const {
  CheckInstance(x, feature_count_);
  int id = root_;
  // Bounded walk so that malformed (cyclic) arenas cannot hang.
  for (size_t steps = 0; steps <= nodes_.size(); ++steps) {
    const TreeNode& n = nodes_[id];
    if (n.is_leaf()) return id;
    id = x[n.feature] ? n.if_one : n.if_zero;
  }
  Fail(ErrorCode::kInvalidArgument, "tree contains a cycle");
}

bool DecisionTree::Evaluate(const BooleanInstance& x) const {
  return nodes_[LeafFor(x)].label;
}

std::vector<int> DecisionTree::LeafIds() const {
  std::vector<int> leaves;
  std::vector<int> stack = {root_};
  std::vector<uint8_t> seen(nodes_.size(), 0);
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = 1;
    const TreeNode& n = nodes_[id];
    if (n.is_leaf()) {
      leaves.push_back(id);
    } else {
      stack.push_back(n.if_zero);
      stack.push_back(n.if_one);
    }
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

int DecisionTree::depth() const {
  std::function<int(int)> visit = [&](int id) -> int {
    const TreeNode& n = nodes_[id];
    if (n.is_leaf()) return 0;
    return 1 + std::max(visit(n.if_zero), visit(n.if_one));
  };
  return visit(root_);
}

std::vector<Diagnostic> DecisionTree::Validate() const {
  std::vector<Diagnostic> out;
  const int count = static_cast<int>(nodes_.size());
  bool structural_ok = true;
  for (int id = 0; id < count; ++id) {
    const TreeNode& n = nodes_[id];
    if (n.is_leaf()) continue;
    const std::string where = "nodes[" + std::to_string(id) + "]";
    if (n.feature >= feature_count_) {
      out.push_back({"feature index out of range", where});
    }
    if (n.if_zero < 0 || n.if_zero >= count || n.if_one < 0 ||
        n.if_one >= count) {
      out.push_back({"child index out of range", where});
      structural_ok = false;
    }
  }
  if (!structural_ok) return out;

  // Every reachable node must have exactly one parent and no node may be
  // revisited (which also rules out cycles).
  std::vector<int> parents(count, 0);
  std::vector<uint8_t> visited(count, 0);
  std::vector<int> stack = {root_};
  bool cycle = false;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (visited[id]) {
      cycle = true;
      continue;
    }
    visited[id] = 1;
    const TreeNode& n = nodes_[id];
    if (!n.is_leaf()) {
      for (int child : {n.if_zero, n.if_one}) {
        ++parents[child];
        if (child == root_) cycle = true;
        stack.push_back(child);
      }
    }
  }
  if (cycle) {
    out.push_back({"cycle", "nodes"});
    return out;
  }
  for (int id = 0; id < count; ++id) {
    if (visited[id] && parents[id] > 1) {
      out.push_back({"node has multiple parents",
                     "nodes[" + std::to_string(id) + "]"});
    }
  }
  if (!out.empty()) return out;

  std::vector<uint8_t> on_path(feature_count_, 0);
  bool repeated = false;
  std::function<void(int)> walk = [&](int id) {
    const TreeNode& n = nodes_[id];
    if (n.is_leaf()) return;
    if (n.feature < 0 || n.feature >= feature_count_) return;
    if (on_path[n.feature]) {
      repeated = true;
      return;
    }
    on_path[n.feature] = 1;
    walk(n.if_zero);
    walk(n.if_one);
    on_path[n.feature] = 0;
  };
  walk(root_);
  if (repeated) out.push_back({"repeated feature on path", "nodes"});
  return out;
}

// ---------------------------------------------------------------------------
// Perceptron

Perceptron::Perceptron(std::vector<Rational> weights, Rational bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {}

Perceptron Perceptron::Constant(int feature_count, bool label) {
  return Perceptron(std::vector<Rational>(feature_count, Rational(0)),
                    label ? MakeRational(1, 2) : MakeRational(-1, 2));
}

Rational Perceptron::Score(const BooleanInstance& x) const {
  CheckInstance(x, feature_count());
  Rational sum = bias_;
  for (int i = 0; i < feature_count(); ++i) {
    if (x[i]) sum += weights_[i];
  }
  return sum;
}

bool Perceptron::Evaluate(const BooleanInstance& x) const {
  return Score(x) >= 0;
}

std::vector<Diagnostic> Perceptron::Validate() const {
  std::vector<Diagnostic> out;
  for (size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i].get_den() == 0) {
      out.push_back({"denominator zero", "weights[" + std::to_string(i) + "]"});
    }
  }
  if (bias_.get_den() == 0) out.push_back({"denominator zero", "bias"});
  return out;
}

// ---------------------------------------------------------------------------
// Ensemble

Ensemble::Ensemble(std::vector<BaseModel> models, Voting voting)
    : models_(std::move(models)), voting_(std::move(voting)) {
  if (models_.empty()) {
    Fail(ErrorCode::kInvalidArgument, "ensemble needs at least one model");
  }
}

int Ensemble::feature_count() const { return FeatureCount(models_.front()); }

Rational Ensemble::VoteWeight(int model_index) const {
  if (voting_.rule == VotingRule::kMajority) return Rational(1);
  return voting_.weights.at(model_index);
}

Rational Ensemble::VoteThreshold() const {
  if (voting_.rule == VotingRule::kMajority) return Rational((size() + 1) / 2);
  return voting_.threshold;
}

bool Ensemble::Decide(std::span<const uint8_t> votes) const {
  if (static_cast<int>(votes.size()) != size()) {
    Fail(ErrorCode::kInputShape, "vote count does not match ensemble size");
  }
  if (voting_.rule == VotingRule::kMajority) {
    int positive = 0;
    for (uint8_t v : votes) positive += v ? 1 : 0;
    return positive >= (size() + 1) / 2;
  }
  if (static_cast<int>(voting_.weights.size()) != size()) {
    Fail(ErrorCode::kInputShape, "weight count mismatch");
  }
  Rational sum = 0;
  for (int i = 0; i < size(); ++i) {
    if (votes[i]) sum += voting_.weights[i];
  }
  return sum >= voting_.threshold;
}

bool Ensemble::Evaluate(const BooleanInstance& x) const {
  std::vector<uint8_t> votes(models_.size());
  for (size_t i = 0; i < models_.size(); ++i) {
    votes[i] = xplain::Evaluate(models_[i], x);
  }
  return Decide(votes);
}

bool Ensemble::AllTrees() const {
  return std::all_of(models_.begin(), models_.end(), [](const BaseModel& m) {
    return std::holds_alternative<DecisionTree>(m);
  });
}

bool Ensemble::AllPerceptrons() const {
  return std::all_of(models_.begin(), models_.end(), [](const BaseModel& m) {
    return std::holds_alternative<Perceptron>(m);
  });
}

std::vector<Diagnostic> Ensemble::Validate() const {
  std::vector<Diagnostic> out;
  const int n = feature_count();
  for (int i = 0; i < size(); ++i) {
    const std::string prefix = "models[" + std::to_string(i) + "]";
    if (FeatureCount(models_[i]) != n) {
      out.push_back({"feature count mismatch", prefix});
    }
    std::vector<Diagnostic> inner = std::visit(
        [](const auto& m) { return m.Validate(); }, models_[i]);
    for (Diagnostic& d : inner) {
      out.push_back({d.message, Where(prefix, d.location)});
    }
  }
  if (voting_.rule == VotingRule::kWeighted &&
      static_cast<int>(voting_.weights.size()) != size()) {
    out.push_back({"weight count mismatch", "voting.weights"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model helpers

const char* ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTree:
      return "tree";
    case ModelKind::kPerceptron:
      return "perceptron";
    case ModelKind::kTreeEnsemble:
      return "tree-ensemble";
    case ModelKind::kPerceptronEnsemble:
      return "perceptron-ensemble";
    case ModelKind::kMixedEnsemble:
      return "mixed-ensemble";
  }
  return "unknown";
}

ModelKind KindOf(const Model& model) {
  return std::visit(Overloaded{
                        [](const DecisionTree&) { return ModelKind::kTree; },
                        [](const Perceptron&) { return ModelKind::kPerceptron; },
                        [](const Ensemble& e) {
                          if (e.AllTrees()) return ModelKind::kTreeEnsemble;
                          if (e.AllPerceptrons()) {
                            return ModelKind::kPerceptronEnsemble;
                          }
                          return ModelKind::kMixedEnsemble;
                        },
                    },
                    model);
}

int FeatureCount(const BaseModel& model) {
  return std::visit([](const auto& m) { return m.feature_count(); }, model);
}

int FeatureCount(const Model& model) {
  return std::visit([](const auto& m) { return m.feature_count(); }, model);
}

bool Evaluate(const BaseModel& model, const BooleanInstance& x) {
  return std::visit([&](const auto& m) { return m.Evaluate(x); }, model);
}

bool Evaluate(const Model& model, const BooleanInstance& x) {
  return std::visit([&](const auto& m) { return m.Evaluate(x); }, model);
}

std::vector<Diagnostic> Validate(const Model& model) {
  return std::visit([](const auto& m) { return m.Validate(); }, model);
}

Ensemble AsEnsemble(const Model& model) {
  return std::visit(
      Overloaded{
          [](const DecisionTree& t) { return Ensemble({BaseModel(t)}); },
          [](const Perceptron& p) { return Ensemble({BaseModel(p)}); },
          [](const Ensemble& e) { return e; },
      },
      model);
}

bool IsTreeModel(const Model& model) {
  const ModelKind kind = KindOf(model);
  return kind == ModelKind::kTree || kind == ModelKind::kTreeEnsemble;
}

uint64_t Fingerprint(const Model& model) {
  Fnv1a h;
  std::visit(Overloaded{
                 [&](const DecisionTree& t) { HashBase(h, t); },
                 [&](const Perceptron& p) { HashBase(h, p); },
                 [&](const Ensemble& e) {
                   h.Add(e.voting().rule == VotingRule::kMajority
                             ? "majority"
                             : "weighted");
                   for (const Rational& w : e.voting().weights) h.Add(w);
                   h.Add(e.voting().threshold);
                   for (const BaseModel& m : e.models()) HashBase(h, m);
                 },
             },
             model);
  return h.value();
}

// ---------------------------------------------------------------------------
// ProductDistribution

ProductDistribution::ProductDistribution(std::vector<Rational> p)
    : p_(std::move(p)) {
  for (const Rational& v : p_) {
    if (v < 0 || v > 1) {
      Fail(ErrorCode::kInvalidArgument,
           "distribution parameter " + ToString(v) + " outside [0,1]");
    }
  }
}

ProductDistribution ProductDistribution::Uniform(int feature_count) {
  return ProductDistribution(
      std::vector<Rational>(feature_count, MakeRational(1, 2)));
}

Rational ProductDistribution::Probability(int feature, bool value) const {
  return value ? p_[feature] : Rational(1 - p_[feature]);
}

Rational ProductDistribution::Mass(const BooleanInstance& z) const {
  CheckInstance(z, size());
  Rational mass = 1;
  for (int i = 0; i < size(); ++i) mass *= Probability(i, z[i]);
  return mass;
}

uint64_t ProductDistribution::Fingerprint() const {
  Fnv1a h;
  h.Add("distribution");
  for (const Rational& v : p_) h.Add(v);
  return h.value();
}

}  // namespace xplain
