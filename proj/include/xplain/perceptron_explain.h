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

#ifndef XPLAIN_PERCEPTRON_EXPLAIN_H_
#define XPLAIN_PERCEPTRON_EXPLAIN_H_

#include <optional>
#include <vector>

#include "xplain/config.h"
#include "xplain/model.h"
#include "xplain/rational.h"
#include "xplain/reason.h"

namespace xplain {

// Sufficient iff the score interval reachable by the free features stays on
// the side of zero that f(x) is on.
bool CsrPerceptron(const Perceptron& perceptron, const BooleanInstance& x,
                   const FeatureSubset& subset);

// Smallest set of flips that changes the output, taking the largest score
// movements first. Among optimal sets the lexicographically first one is
// returned. nullopt when no flip set changes the output.
std::optional<Reason> MinContrastivePerceptron(const Perceptron& perceptron,
                                               const BooleanInstance& x);
bool McrPerceptron(const Perceptron& perceptron, const BooleanInstance& x,
                   int bound);

// Smallest sufficient set, ranking features by how much fixing them protects
// the worst case. Lexicographically first among optimal sets.
Reason MsrPerceptron(const Perceptron& perceptron, const BooleanInstance& x);

// Completion count by a subset-sum counting table over the free features.
// Weights are scaled to integers first; raises kResourceExceeded when their
// total magnitude exceeds the pseudo-polynomial budget.
Rational CcPerceptronPseudopoly(const Perceptron& perceptron,
                                const BooleanInstance& x,
                                const FeatureSubset& subset,
                                const Limits& limits = {});

// H(k) = sum over |S| = k of E[f(z) | z_S = x_S], for k = 0..n.
std::vector<Rational> HSumPerceptron(const Perceptron& perceptron,
                                     const BooleanInstance& x,
                                     const ProductDistribution& distribution,
                                     const Limits& limits = {});
Rational HSumPerceptron(const Perceptron& perceptron, const BooleanInstance& x,
                        const ProductDistribution& distribution, int k,
                        const Limits& limits = {});

// Shapley value of `feature` from the H tables of f and of f with the feature
// fixed to x.
Rational ShapPerceptronPseudopoly(const Perceptron& perceptron,
                                  const BooleanInstance& x, int feature,
                                  const ProductDistribution& distribution,
                                  const Limits& limits = {});
std::vector<Rational> ShapPerceptronPseudopolyAll(
    const Perceptron& perceptron, const BooleanInstance& x,
    const ProductDistribution& distribution, const Limits& limits = {});

}  // namespace xplain

#endif  // XPLAIN_PERCEPTRON_EXPLAIN_H_
