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

#ifndef XPLAIN_ATTRIBUTION_H_
#define XPLAIN_ATTRIBUTION_H_

#include <cstdint>
#include <vector>

#include "xplain/config.h"
#include "xplain/model.h"
#include "xplain/rational.h"

namespace xplain {

// Engine used for E_{z~D}[f(z)].
enum class ExpectationBackend {
  kAuto,          // cylinders for tree models, the oracle otherwise
  kOracle,        // exhaustive, capped
  kTreeCylinder,  // cylinder decomposition, tree models only
};

const char* ExpectationBackendName(ExpectationBackend backend);

Rational Expectation(const Model& model,
                     const ProductDistribution& distribution,
                     ExpectationBackend backend, const Limits& limits = {});

// Shapley value with v(S) = E[f(z) | z_S = x_S], summed over all coalitions.
Rational ShapEnum(const Model& model, const BooleanInstance& x, int feature,
                  const ProductDistribution& distribution,
                  ExpectationBackend backend = ExpectationBackend::kAuto,
                  const Limits& limits = {});
// All features at once from one table of coalition values.
std::vector<Rational> ShapEnumAll(
    const Model& model, const BooleanInstance& x,
    const ProductDistribution& distribution,
    ExpectationBackend backend = ExpectationBackend::kAuto,
    const Limits& limits = {});

struct HTable {
  std::vector<Rational> values;  // H(0..n)
  uint64_t model_fingerprint = 0;
  uint64_t distribution_fingerprint = 0;
};

// H(k) = sum over |S| = k of E[f | z_S = x_S], recovered from n+1
// expectations under the mixtures lambda*x + (1-lambda)*p by an exact
// polynomial solve. The default grid is lambda_j = j / (n + 2).
HTable SizeStratifiedSums(const Model& model, const BooleanInstance& x,
                          const ProductDistribution& distribution,
                          ExpectationBackend backend = ExpectationBackend::kAuto,
                          const Limits& limits = {});
// Same with a caller-chosen grid of n+1 distinct values in [0, 1).
HTable SizeStratifiedSums(const Model& model, const BooleanInstance& x,
                          const ProductDistribution& distribution,
                          const std::vector<Rational>& lambdas,
                          ExpectationBackend backend = ExpectationBackend::kAuto,
                          const Limits& limits = {});

// Shapley value from the H tables of f and of f with `feature` fixed to x_i
// and removed.
Rational ShapInterpolation(
    const Model& model, const BooleanInstance& x, int feature,
    const ProductDistribution& distribution,
    ExpectationBackend backend = ExpectationBackend::kAuto,
    const Limits& limits = {});
std::vector<Rational> ShapInterpolationAll(
    const Model& model, const BooleanInstance& x,
    const ProductDistribution& distribution,
    ExpectationBackend backend = ExpectationBackend::kAuto,
    const Limits& limits = {});

// Drops `feature` after fixing it to x; remaining features shift down by one.
Model RemoveFeature(const Model& model, const BooleanInstance& x, int feature);

struct ShapReport {
  std::vector<Rational> values;
  bool prediction = false;
  Rational expected;
  Rational efficiency_residual;  // f(x) - E[f] - sum(values)
};

ShapReport MakeShapReport(const Model& model, const BooleanInstance& x,
                          const ProductDistribution& distribution,
                          std::vector<Rational> values,
                          ExpectationBackend backend = ExpectationBackend::kAuto,
                          const Limits& limits = {});

bool CheckEfficiency(const ShapReport& report);

// #f == 2^n (f(x) - sum(values)); values must be uniform-distribution SHAP.
bool CheckModelCountIdentity(const Model& model, const BooleanInstance& x,
                             const std::vector<Rational>& shap_values,
                             const Limits& limits = {});

}  // namespace xplain

#endif  // XPLAIN_ATTRIBUTION_H_
