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

#include "fast_eval.h"

#include "xplain/error.h"

namespace xplain::internal {

namespace {

constexpr int64_t kMagnitudeLimit = int64_t{1} << 52;

}  // namespace

std::optional<std::vector<int64_t>> ScaleToInt64(
    std::span<const Rational> values) {
  const BigInt scale = CommonDenominator(values);
  std::vector<int64_t> out;
  out.reserve(values.size());
  BigInt total = 0;
  for (const Rational& v : values) {
    const BigInt scaled = v.get_num() * (scale / v.get_den());
    total += abs(scaled);
    if (total >= kMagnitudeLimit) return std::nullopt;
    out.push_back(scaled.get_si());
  }
  return out;
}

CompiledModel::CompiledModel(const Model& model)
    : feature_count_(FeatureCount(model)) {
  if (feature_count_ > 64) {
    Fail(ErrorCode::kResourceExceeded, "bit-mask evaluation needs n <= 64");
  }
  const Ensemble ensemble = AsEnsemble(model);
  for (const BaseModel& base : ensemble.models()) {
    Member m;
    if (const auto* t = std::get_if<DecisionTree>(&base)) {
      m.is_tree = true;
      for (const TreeNode& n : t->nodes()) {
        m.tree.feature.push_back(n.feature);
        m.tree.if_zero.push_back(n.if_zero);
        m.tree.if_one.push_back(n.if_one);
        m.tree.label.push_back(n.label);
      }
      m.tree.root = t->root();
    } else {
      const Perceptron& p = std::get<Perceptron>(base);
      m.is_tree = false;
      std::vector<Rational> all = p.weights();
      all.push_back(p.bias());
      if (auto scaled = ScaleToInt64(all)) {
        m.linear.bias = scaled->back();
        scaled->pop_back();
        m.linear.weights = std::move(*scaled);
      } else {
        m.linear.exact = p;
      }
    }
    members_.push_back(std::move(m));
  }
  majority_ = ensemble.voting().rule == VotingRule::kMajority;
  if (majority_) {
    vote_threshold_ = (ensemble.size() + 1) / 2;
  } else {
    if (static_cast<int>(ensemble.voting().weights.size()) != ensemble.size()) {
      Fail(ErrorCode::kInputShape, "weight count mismatch");
    }
    std::vector<Rational> all = ensemble.voting().weights;
    all.push_back(ensemble.voting().threshold);
    if (auto scaled = ScaleToInt64(all)) {
      vote_threshold_ = scaled->back();
      scaled->pop_back();
      vote_weights_ = std::move(*scaled);
    } else {
      exact_voting_ = ensemble;
    }
  }
}

bool CompiledModel::EvaluateMember(const Member& m, uint64_t mask) const {
  if (m.is_tree) {
    int id = m.tree.root;
    while (m.tree.feature[id] >= 0) {
      id = ((mask >> m.tree.feature[id]) & 1U) ? m.tree.if_one[id]
                                               : m.tree.if_zero[id];
    }
    return m.tree.label[id] != 0;
  }
  if (m.linear.exact) {
    return m.linear.exact->Evaluate(
        BooleanInstance::FromMask(mask, feature_count_));
  }
  int64_t sum = m.linear.bias;
  const size_t n = m.linear.weights.size();
  for (size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1U) sum += m.linear.weights[i];
  }
  return sum >= 0;
}

bool CompiledModel::Evaluate(uint64_t mask) const {
  if (members_.size() == 1 && majority_) return EvaluateMember(members_[0], mask);
  if (exact_voting_) {
    std::vector<uint8_t> votes(members_.size());
    for (size_t i = 0; i < members_.size(); ++i) {
      votes[i] = EvaluateMember(members_[i], mask);
    }
    return exact_voting_->Decide(votes);
  }
  int64_t sum = 0;
  for (size_t i = 0; i < members_.size(); ++i) {
    if (EvaluateMember(members_[i], mask)) {
      sum += majority_ ? 1 : vote_weights_[i];
    }
  }
  return sum >= vote_threshold_;
}

}  // namespace xplain::internal
