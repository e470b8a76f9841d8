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

#ifndef XPLAIN_ORACLE_H_
#define XPLAIN_ORACLE_H_

#include <optional>
#include <vector>

#include "xplain/config.h"
#include "xplain/model.h"
#include "xplain/rational.h"
#include "xplain/reason.h"

namespace xplain {

// Exhaustive reference implementations. Every routine enumerates the whole
// feature cube (2^n points), so each one refuses models with more than
// `limits.oracle_max_features` features (kResourceExceeded). They accept any
// model class and share no code with the fast explainers beyond evaluation.

bool OracleIsSufficient(const Model& model, const BooleanInstance& x,
                        const FeatureSubset& subset, const Limits& limits = {});

// Some completion of `subset` (keeping x elsewhere) changes the prediction.
bool OracleIsContrastive(const Model& model, const BooleanInstance& x,
                         const FeatureSubset& subset,
                         const Limits& limits = {});

Reason OracleMinSufficient(const Model& model, const BooleanInstance& x,
                           const Limits& limits = {});

// nullopt when the model is constant (no contrastive reason exists).
std::optional<Reason> OracleMinContrastive(const Model& model,
                                           const BooleanInstance& x,
                                           const Limits& limits = {});

// Every subset-minimal contrastive reason, in lexicographic order.
std::vector<FeatureSubset> OracleMinimalContrastive(const Model& model,
                                                    const BooleanInstance& x,
                                                    const Limits& limits = {});

// Fraction of completions of the free features that keep f(x).
Rational OracleCompletionCount(const Model& model, const BooleanInstance& x,
                               const FeatureSubset& subset,
                               const Limits& limits = {});

Rational OracleExpectedValue(const Model& model,
                             const ProductDistribution& distribution,
                             const Limits& limits = {});

BigInt OracleModelCount(const Model& model, const Limits& limits = {});

// v(S) = E[f(z) | z_S = x_S] for every coalition S, indexed by bit mask.
// Capped by `limits.shap_oracle_max_features`.
std::vector<Rational> OracleCoalitionValues(
    const Model& model, const BooleanInstance& x,
    const ProductDistribution& distribution, const Limits& limits = {});

// Shapley value of `feature` with the conditional-expectation value function.
Rational OracleShap(const Model& model, const BooleanInstance& x, int feature,
                    const ProductDistribution& distribution,
                    const Limits& limits = {});
std::vector<Rational> OracleShapAll(const Model& model,
                                    const BooleanInstance& x,
                                    const ProductDistribution& distribution,
                                    const Limits& limits = {});

// H(k) = sum over |S| = k of v(S), k = 0..n, by direct summation.
std::vector<Rational> OracleSizeStratifiedSums(
    const Model& model, const BooleanInstance& x,
    const ProductDistribution& distribution, const Limits& limits = {});

}  // namespace xplain

#endif  // XPLAIN_ORACLE_H_
