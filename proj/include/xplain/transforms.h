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

#ifndef XPLAIN_TRANSFORMS_H_
#define XPLAIN_TRANSFORMS_H_

#include <vector>

#include "xplain/model.h"

namespace xplain {

// Conditioning: the returned model g satisfies g(z) = f(x_S; z_rest) for all
// z. Feature count is unchanged; conditioned features are simply never read.
DecisionTree ConditionTree(const DecisionTree& tree, const BooleanInstance& x,
                           const FeatureSubset& subset);
Perceptron ConditionPerceptron(const Perceptron& perceptron,
                               const BooleanInstance& x,
                               const FeatureSubset& subset);
// Trees only; raises kUnsupportedModel for any perceptron member.
Ensemble ConditionTreeEnsemble(const Ensemble& ensemble,
                               const BooleanInstance& x,
                               const FeatureSubset& subset);
// Any model class, member by member.
Model Condition(const Model& model, const BooleanInstance& x,
                const FeatureSubset& subset);

// (not f)(x) = 1 - f(x) for every x, exact ties included.
DecisionTree NegateTree(const DecisionTree& tree);
Perceptron NegatePerceptron(const Perceptron& perceptron);
Ensemble NegateEnsemble(const Ensemble& ensemble);
Model Negate(const Model& model);

// Accepts exactly the inputs that agree with x on `subset`.
DecisionTree IndicatorTree(const BooleanInstance& x,
                           const FeatureSubset& subset);
Perceptron IndicatorPerceptron(const BooleanInstance& x,
                               const FeatureSubset& subset);

enum class BaseKind { kTree, kPerceptron };

struct Literal {
  int feature = 0;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

// A DNF (disjunction of terms) or, with `is_cnf`, a CNF read as a conjunction
// of clauses over the same literal lists.
struct NormalForm {
  int feature_count = 0;
  std::vector<std::vector<Literal>> terms;
  bool is_cnf = false;

  bool Evaluate(const BooleanInstance& x) const;
  // Throws kInvalidArgument on an empty formula, an out-of-range index or a
  // feature repeated inside one term.
  void Check() const;
};

// One indicator per term plus |terms|-1 constant-true members under majority
// voting: 2*|terms|-1 models in total.
Ensemble DnfToEnsemble(const NormalForm& dnf, BaseKind kind);
// Negates clause-wise into a DNF, compiles it, then negates the ensemble.
Ensemble CnfToEnsemble(const NormalForm& cnf, BaseKind kind);

}  // namespace xplain

#endif  // XPLAIN_TRANSFORMS_H_
