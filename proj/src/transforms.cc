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

#include "xplain/transforms.h"

#include <functional>

#include "xplain/error.h"

namespace xplain {

namespace {

Rational TieBreak(const BigInt& common_denominator) {
  return MakeRational(BigInt(1), 2 * common_denominator);
}

}  // namespace

DecisionTree ConditionTree(const DecisionTree& tree, const BooleanInstance& x,
                           const FeatureSubset& subset) {
  CheckInstance(x, tree.feature_count());
  subset.CheckWithin(tree.feature_count());
  std::vector<TreeNode> nodes;
  // Copies the sub-tree at `id`, short-circuiting conditioned splits.
  std::function<int(int)> copy = [&](int id) -> int {
    const TreeNode* n = &tree.node(id);
    while (!n->is_leaf() && subset.contains(n->feature)) {
      n = &tree.node(x[n->feature] ? n->if_one : n->if_zero);
    }
    const int out = static_cast<int>(nodes.size());
    nodes.push_back(*n);
    if (!n->is_leaf()) {
      const int zero = copy(n->if_zero);
      const int one = copy(n->if_one);
      nodes[out].if_zero = zero;
      nodes[out].if_one = one;
    }
    return out;
  };
  copy(tree.root());
  return DecisionTree(tree.feature_count(), std::move(nodes), 0);
}

Perceptron ConditionPerceptron(const Perceptron& perceptron,
                               const BooleanInstance& x,
                               const FeatureSubset& subset) {
  CheckInstance(x, perceptron.feature_count());
  subset.CheckWithin(perceptron.feature_count());
  std::vector<Rational> weights = perceptron.weights();
  Rational bias = perceptron.bias();
  for (int i : subset) {
    if (x[i]) bias += weights[i];
    weights[i] = 0;
  }
  return Perceptron(std::move(weights), std::move(bias));
}

Ensemble ConditionTreeEnsemble(const Ensemble& ensemble,
                               const BooleanInstance& x,
                               const FeatureSubset& subset) {
  if (!ensemble.AllTrees()) {
    Fail(ErrorCode::kUnsupportedModel,
         "tree-ensemble conditioning requires decision-tree members");
  }
  std::vector<BaseModel> models;
  models.reserve(ensemble.size());
  for (const BaseModel& m : ensemble.models()) {
    models.emplace_back(ConditionTree(std::get<DecisionTree>(m), x, subset));
  }
  return Ensemble(std::move(models), ensemble.voting());
}

Model Condition(const Model& model, const BooleanInstance& x,
                const FeatureSubset& subset) {
  if (const auto* t = std::get_if<DecisionTree>(&model)) {
    return ConditionTree(*t, x, subset);
  }
  if (const auto* p = std::get_if<Perceptron>(&model)) {
    return ConditionPerceptron(*p, x, subset);
  }
  const Ensemble& e = std::get<Ensemble>(model);
  std::vector<BaseModel> models;
  models.reserve(e.size());
  for (const BaseModel& m : e.models()) {
    if (const auto* t = std::get_if<DecisionTree>(&m)) {
      models.emplace_back(ConditionTree(*t, x, subset));
    } else {
      models.emplace_back(
          ConditionPerceptron(std::get<Perceptron>(m), x, subset));
    }
  }
  return Ensemble(std::move(models), e.voting());
}

DecisionTree NegateTree(const DecisionTree& tree) {
  std::vector<TreeNode> nodes = tree.nodes();
  for (TreeNode& n : nodes) {
    if (n.is_leaf()) n.label = !n.label;
  }
  return DecisionTree(tree.feature_count(), std::move(nodes), tree.root());
}

Perceptron NegatePerceptron(const Perceptron& perceptron) {
  // w.x + b < 0  <=>  -w.x - b > 0  <=>  -w.x - b - eps >= 0, where eps is
  // below the smallest nonzero gap |w.x + b| can take on bit vectors.
  std::vector<Rational> all = perceptron.weights();
  all.push_back(perceptron.bias());
  const Rational eps = TieBreak(CommonDenominator(all));
  std::vector<Rational> weights;
  weights.reserve(perceptron.weights().size());
  for (const Rational& w : perceptron.weights()) weights.emplace_back(-w);
  return Perceptron(std::move(weights), -perceptron.bias() - eps);
}

Ensemble NegateEnsemble(const Ensemble& ensemble) {
  std::vector<BaseModel> models;
  models.reserve(ensemble.size());
  for (const BaseModel& m : ensemble.models()) {
    if (const auto* t = std::get_if<DecisionTree>(&m)) {
      models.emplace_back(NegateTree(*t));
    } else {
      models.emplace_back(NegatePerceptron(std::get<Perceptron>(m)));
    }
  }
  const int k = ensemble.size();
  // With every member flipped, the positive voters of the negation are the
  // negative voters of the original: sum(phi*g) = sum(phi) - sum(phi*f), and
  // sum(phi*f) < theta  <=>  sum(phi*g) > sum(phi) - theta.
  if (ensemble.voting().rule == VotingRule::kMajority && k % 2 == 1) {
    // k - c >= floor(k/2) + 1 = ceil(k/2) for odd k: still a majority.
    return Ensemble(std::move(models), Voting::Majority());
  }
  std::vector<Rational> weights(k);
  Rational total = 0;
  for (int i = 0; i < k; ++i) {
    weights[i] = ensemble.VoteWeight(i);
    total += weights[i];
  }
  const Rational threshold = ensemble.VoteThreshold();
  std::vector<Rational> all = weights;
  all.push_back(threshold);
  const Rational eps = TieBreak(CommonDenominator(all));
  return Ensemble(std::move(models),
                  Voting::Weighted(std::move(weights), total - threshold + eps));
}

Model Negate(const Model& model) {
  if (const auto* t = std::get_if<DecisionTree>(&model)) return NegateTree(*t);
  if (const auto* p = std::get_if<Perceptron>(&model)) {
    return NegatePerceptron(*p);
  }
  return NegateEnsemble(std::get<Ensemble>(model));
}

DecisionTree IndicatorTree(const BooleanInstance& x,
                           const FeatureSubset& subset) {
  subset.CheckWithin(x.size());
  // A chain with a single accepting path; every off-path branch rejects.
  std::vector<TreeNode> nodes;
  for (int feature : subset) {
    const int split = static_cast<int>(nodes.size());
    nodes.push_back(TreeNode::Split(feature, -1, -1));
    nodes.push_back(TreeNode::Leaf(false));
    const int reject = split + 1;
    const int next = split + 2;
    nodes[split].if_zero = x[feature] ? reject : next;
    nodes[split].if_one = x[feature] ? next : reject;
  }
  nodes.push_back(TreeNode::Leaf(true));
  return DecisionTree(x.size(), std::move(nodes), 0);
}

Perceptron IndicatorPerceptron(const BooleanInstance& x,
                               const FeatureSubset& subset) {
  subset.CheckWithin(x.size());
  std::vector<Rational> h(x.size(), Rational(0));
  Rational agreement = 0;
  for (int i : subset) {
    h[i] = x[i] ? 1 : -1;
    if (x[i]) agreement += h[i];
  }
  return Perceptron(std::move(h), -agreement + MakeRational(1, 2));
}

bool NormalForm::Evaluate(const BooleanInstance& x) const {
  CheckInstance(x, feature_count);
  for (const std::vector<Literal>& term : terms) {
    bool term_value = !is_cnf;
    for (const Literal& lit : term) {
      const bool holds = x[lit.feature] == lit.positive;
      if (is_cnf && holds) {
        term_value = true;
        break;
      }
      if (!is_cnf && !holds) {
        term_value = false;
        break;
      }
    }
    if (is_cnf && !term_value) return false;
    if (!is_cnf && term_value) return true;
  }
  return is_cnf;
}

void NormalForm::Check() const {
  if (terms.empty()) {
    Fail(ErrorCode::kInvalidArgument, "formula needs at least one term");
  }
  for (const std::vector<Literal>& term : terms) {
    std::vector<uint8_t> seen(feature_count, 0);
    for (const Literal& lit : term) {
      if (lit.feature < 0 || lit.feature >= feature_count) {
        Fail(ErrorCode::kInvalidArgument,
             "literal index " + std::to_string(lit.feature) + " out of range");
      }
      if (seen[lit.feature]) {
        Fail(ErrorCode::kInvalidArgument,
             "feature " + std::to_string(lit.feature) +
                 " appears twice in one term");
      }
      seen[lit.feature] = 1;
    }
  }
}

Ensemble DnfToEnsemble(const NormalForm& dnf, BaseKind kind) {
  if (dnf.is_cnf) Fail(ErrorCode::kInvalidArgument, "expected a DNF");
  dnf.Check();
  const int n = dnf.feature_count;
  std::vector<BaseModel> models;
  for (const std::vector<Literal>& term : dnf.terms) {
    std::vector<uint8_t> bits(n, 0);
    std::vector<int> features;
    for (const Literal& lit : term) {
      bits[lit.feature] = lit.positive;
      features.push_back(lit.feature);
    }
    const BooleanInstance x(std::move(bits));
    const FeatureSubset s = FeatureSubset::Of(std::move(features));
    if (kind == BaseKind::kTree) {
      models.emplace_back(IndicatorTree(x, s));
    } else {
      models.emplace_back(IndicatorPerceptron(x, s));
    }
  }
  // t-1 always-true voters: the majority threshold t is then reached iff at
  // least one term indicator fires.
  for (size_t i = 1; i < dnf.terms.size(); ++i) {
    if (kind == BaseKind::kTree) {
      models.emplace_back(DecisionTree::Constant(n, true));
    } else {
      models.emplace_back(Perceptron::Constant(n, true));
    }
  }
  return Ensemble(std::move(models), Voting::Majority());
}

Ensemble CnfToEnsemble(const NormalForm& cnf, BaseKind kind) {
  if (!cnf.is_cnf) Fail(ErrorCode::kInvalidArgument, "expected a CNF");
  cnf.Check();
  NormalForm negated{cnf.feature_count, cnf.terms, false};
  for (std::vector<Literal>& term : negated.terms) {
    for (Literal& lit : term) lit.positive = !lit.positive;
  }
  return NegateEnsemble(DnfToEnsemble(negated, kind));
}

}  // namespace xplain
