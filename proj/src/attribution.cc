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

#include "xplain/attribution.h"

#include <bit>
#include <optional>

#include "xplain/error.h"
#include "xplain/oracle.h"
#include "xplain/transforms.h"
#include "xplain/tree_explain.h"

namespace xplain {

namespace {

ExpectationBackend Resolve(const Model& model, ExpectationBackend backend) {
  if (backend == ExpectationBackend::kAuto) {
    return IsTreeModel(model) ? ExpectationBackend::kTreeCylinder
                              : ExpectationBackend::kOracle;
  }
  if (backend == ExpectationBackend::kTreeCylinder && !IsTreeModel(model)) {
    Fail(ErrorCode::kUnsupportedModel,
         "cylinder expectation requires a tree model");
  }
  return backend;
}

// Evaluates E[f] under many distributions; the cylinder decomposition does
// not depend on the distribution and is built once.
class ExpectationEngine {
 public:
  ExpectationEngine(const Model& model, ExpectationBackend backend,
                    const Limits& limits)
      : model_(model), backend_(Resolve(model, backend)), limits_(limits) {
    if (backend_ == ExpectationBackend::kTreeCylinder) {
      cylinders_ = CylinderDecomposition(AsEnsemble(model), limits);
    }
  }

  Rational operator()(const ProductDistribution& distribution) const {
    if (backend_ == ExpectationBackend::kOracle) {
      return OracleExpectedValue(model_, distribution, limits_);
    }
    if (distribution.size() != FeatureCount(model_)) {
      Fail(ErrorCode::kInputShape, "distribution length differs from n");
    }
    Rational total = 0;
    for (const Cylinder& c : cylinders_) total += c.Mass(distribution);
    return total;
  }

 private:
  const Model& model_;
  ExpectationBackend backend_;
  const Limits& limits_;
  std::vector<Cylinder> cylinders_;
};

void CheckShapInputs(const Model& model, const BooleanInstance& x,
                     const ProductDistribution& distribution) {
  const int n = FeatureCount(model);
  CheckInstance(x, n);
  if (distribution.size() != n) {
    Fail(ErrorCode::kInputShape, "distribution length differs from n");
  }
}

void CheckFeature(int feature, int n) {
  if (feature < 0 || feature >= n) {
    Fail(ErrorCode::kInputShape, "feature index out of range");
  }
}

std::vector<Rational> CoalitionValues(const Model& model,
                                      const BooleanInstance& x,
                                      const ProductDistribution& distribution,
                                      ExpectationBackend backend,
                                      const Limits& limits) {
  const int n = FeatureCount(model);
  if (n > limits.shap_enum_max_features) {
    Fail(ErrorCode::kResourceExceeded,
         "coalition enumeration: " + std::to_string(n) +
             " features exceed the cap of " +
             std::to_string(limits.shap_enum_max_features));
  }
  backend = Resolve(model, backend);
  std::vector<Rational> values(uint64_t{1} << n);
  for (uint64_t mask = 0; mask < values.size(); ++mask) {
    const Model conditioned =
        Condition(model, x, FeatureSubset::FromMask(mask));
    values[mask] = Expectation(conditioned, distribution, backend, limits);
  }
  return values;
}

Rational ShapFromCoalitions(const std::vector<Rational>& values, int n,
                            int feature) {
  const uint64_t bit = uint64_t{1} << feature;
  Rational phi = 0;
  for (uint64_t mask = 0; mask < values.size(); ++mask) {
    if (mask & bit) continue;
    phi += ShapleyWeight(std::popcount(mask), n) *
           (values[mask | bit] - values[mask]);
  }
  return phi;
}

// Solves sum_k t_j^k h_k = rhs_j exactly.
std::vector<Rational> SolveVandermonde(const std::vector<Rational>& t,
                                       std::vector<Rational> rhs) {
  const size_t m = t.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
  for (size_t j = 0; j < m; ++j) {
    Rational power = 1;
    for (size_t k = 0; k < m; ++k) {
      a[j][k] = power;
      power *= t[j];
    }
  }
  for (size_t col = 0; col < m; ++col) {
    size_t pivot = col;
    while (pivot < m && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == m) Fail(ErrorCode::kInvalidArgument, "singular system");
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (size_t r = 0; r < m; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational factor = a[r][col] / a[col][col];
      for (size_t k = col; k < m; ++k) a[r][k] -= factor * a[col][k];
      rhs[r] -= factor * rhs[col];
    }
  }
  for (size_t k = 0; k < m; ++k) rhs[k] /= a[k][k];
  return rhs;
}

std::vector<Rational> DefaultGrid(int n) {
  std::vector<Rational> grid;
  for (int j = 0; j <= n; ++j) grid.push_back(MakeRational(j, n + 2));
  return grid;
}

DecisionTree RemoveTreeFeature(const DecisionTree& tree,
                               const BooleanInstance& x, int feature) {
  const DecisionTree conditioned =
      ConditionTree(tree, x, FeatureSubset::Of({feature}));
  std::vector<TreeNode> nodes = conditioned.nodes();
  for (TreeNode& node : nodes) {
    if (!node.is_leaf() && node.feature > feature) --node.feature;
  }
  return DecisionTree(tree.feature_count() - 1, std::move(nodes),
                      conditioned.root());
}

Perceptron RemovePerceptronFeature(const Perceptron& perceptron,
                                   const BooleanInstance& x, int feature) {
  std::vector<Rational> weights;
  for (int i = 0; i < perceptron.feature_count(); ++i) {
    if (i != feature) weights.push_back(perceptron.weights()[i]);
  }
  Rational bias = perceptron.bias();
  if (x[feature]) bias += perceptron.weights()[feature];
  return Perceptron(std::move(weights), bias);
}

BaseModel RemoveBaseFeature(const BaseModel& model, const BooleanInstance& x,
                            int feature) {
  if (const auto* t = std::get_if<DecisionTree>(&model)) {
    return RemoveTreeFeature(*t, x, feature);
  }
  return RemovePerceptronFeature(std::get<Perceptron>(model), x, feature);
}

struct Reduced {
  BooleanInstance x;
  ProductDistribution distribution;
};

Reduced ReduceInputs(const BooleanInstance& x,
                     const ProductDistribution& distribution, int feature) {
  std::vector<uint8_t> bits;
  std::vector<Rational> p;
  for (int i = 0; i < x.size(); ++i) {
    if (i == feature) continue;
    bits.push_back(x[i]);
    p.push_back(distribution.p(i));
  }
  return Reduced{BooleanInstance(std::move(bits)),
                 ProductDistribution(std::move(p))};
}

Rational ShapFromTables(const std::vector<Rational>& hf,
                        const std::vector<Rational>& hg, int n) {
  Rational phi = 0;
  for (int k = 0; k < n; ++k) {
    Rational term = hg[k] - hf[k];
    if (k > 0) term += hg[k - 1];
    phi += ShapleyWeight(k, n) * term;
  }
  return phi;
}

}  // namespace

const char* ExpectationBackendName(ExpectationBackend backend) {
  switch (backend) {
    case ExpectationBackend::kAuto:
      return "auto";
    case ExpectationBackend::kOracle:
      return "oracle";
    case ExpectationBackend::kTreeCylinder:
      return "tree-cylinder";
  }
  return "unknown";
}

Rational Expectation(const Model& model,
                     const ProductDistribution& distribution,
                     ExpectationBackend backend, const Limits& limits) {
  return ExpectationEngine(model, backend, limits)(distribution);
}

Rational ShapEnum(const Model& model, const BooleanInstance& x, int feature,
                  const ProductDistribution& distribution,
                  ExpectationBackend backend, const Limits& limits) {
  CheckShapInputs(model, x, distribution);
  const int n = FeatureCount(model);
  CheckFeature(feature, n);
  return ShapFromCoalitions(
      CoalitionValues(model, x, distribution, backend, limits), n, feature);
}

std::vector<Rational> ShapEnumAll(const Model& model, const BooleanInstance& x,
                                  const ProductDistribution& distribution,
                                  ExpectationBackend backend,
                                  const Limits& limits) {
  CheckShapInputs(model, x, distribution);
  const int n = FeatureCount(model);
  const std::vector<Rational> values =
      CoalitionValues(model, x, distribution, backend, limits);
  std::vector<Rational> phi;
  for (int i = 0; i < n; ++i) phi.push_back(ShapFromCoalitions(values, n, i));
  return phi;
}

HTable SizeStratifiedSums(const Model& model, const BooleanInstance& x,
                          const ProductDistribution& distribution,
                          ExpectationBackend backend, const Limits& limits) {
  return SizeStratifiedSums(model, x, distribution,
                            DefaultGrid(FeatureCount(model)), backend, limits);
}

HTable SizeStratifiedSums(const Model& model, const BooleanInstance& x,
                          const ProductDistribution& distribution,
                          const std::vector<Rational>& lambdas,
                          ExpectationBackend backend, const Limits& limits) {
  CheckShapInputs(model, x, distribution);
  const int n = FeatureCount(model);
  if (static_cast<int>(lambdas.size()) != n + 1) {
    Fail(ErrorCode::kInvalidArgument, "grid must hold n+1 values");
  }
  for (size_t j = 0; j < lambdas.size(); ++j) {
    if (sgn(lambdas[j]) < 0 || lambdas[j] >= 1) {
      Fail(ErrorCode::kInvalidArgument, "grid values must lie in [0, 1)");
    }
    for (size_t l = 0; l < j; ++l) {
      if (lambdas[l] == lambdas[j]) {
        Fail(ErrorCode::kInvalidArgument, "grid values must be distinct");
      }
    }
  }
  const ExpectationEngine expectation(model, backend, limits);
  std::vector<Rational> t;
  std::vector<Rational> rhs;
  for (const Rational& lambda : lambdas) {
    std::vector<Rational> mixed(n);
    for (int i = 0; i < n; ++i) {
      mixed[i] = lambda * (x[i] ? 1 : 0) + (1 - lambda) * distribution.p(i);
    }
    const Rational rest = 1 - lambda;
    Rational scale = 1;
    for (int i = 0; i < n; ++i) scale *= rest;
    t.push_back(lambda / rest);
    rhs.push_back(expectation(ProductDistribution(std::move(mixed))) / scale);
  }
  HTable table;
  table.values = SolveVandermonde(t, std::move(rhs));
  table.model_fingerprint = Fingerprint(model);
  table.distribution_fingerprint = distribution.Fingerprint();
  return table;
}

Model RemoveFeature(const Model& model, const BooleanInstance& x,
                    int feature) {
  const int n = FeatureCount(model);
  CheckInstance(x, n);
  CheckFeature(feature, n);
  if (const auto* e = std::get_if<Ensemble>(&model)) {
    std::vector<BaseModel> members;
    for (const BaseModel& m : e->models()) {
      members.push_back(RemoveBaseFeature(m, x, feature));
    }
    return Ensemble(std::move(members), e->voting());
  }
  if (const auto* t = std::get_if<DecisionTree>(&model)) {
    return RemoveTreeFeature(*t, x, feature);
  }
  return RemovePerceptronFeature(std::get<Perceptron>(model), x, feature);
}

Rational ShapInterpolation(const Model& model, const BooleanInstance& x,
                           int feature,
                           const ProductDistribution& distribution,
                           ExpectationBackend backend, const Limits& limits) {
  CheckShapInputs(model, x, distribution);
  const int n = FeatureCount(model);
  CheckFeature(feature, n);
  const HTable hf = SizeStratifiedSums(model, x, distribution, backend, limits);
  const Reduced reduced = ReduceInputs(x, distribution, feature);
  const HTable hg =
      SizeStratifiedSums(RemoveFeature(model, x, feature), reduced.x,
                         reduced.distribution, backend, limits);
  return ShapFromTables(hf.values, hg.values, n);
}

std::vector<Rational> ShapInterpolationAll(
    const Model& model, const BooleanInstance& x,
    const ProductDistribution& distribution, ExpectationBackend backend,
    const Limits& limits) {
  CheckShapInputs(model, x, distribution);
  const int n = FeatureCount(model);
  const HTable hf = SizeStratifiedSums(model, x, distribution, backend, limits);
  std::vector<Rational> phi;
  for (int i = 0; i < n; ++i) {
    const Reduced reduced = ReduceInputs(x, distribution, i);
    const HTable hg =
        SizeStratifiedSums(RemoveFeature(model, x, i), reduced.x,
                           reduced.distribution, backend, limits);
    phi.push_back(ShapFromTables(hf.values, hg.values, n));
  }
  return phi;
}

ShapReport MakeShapReport(const Model& model, const BooleanInstance& x,
                          const ProductDistribution& distribution,
                          std::vector<Rational> values,
                          ExpectationBackend backend, const Limits& limits) {
  CheckShapInputs(model, x, distribution);
  ShapReport report;
  report.prediction = Evaluate(model, x);
  report.expected = Expectation(model, distribution, backend, limits);
  report.values = std::move(values);
  report.efficiency_residual =
      Rational(report.prediction ? 1 : 0) - report.expected;
  for (const Rational& v : report.values) report.efficiency_residual -= v;
  return report;
}

bool CheckEfficiency(const ShapReport& report) {
  return sgn(report.efficiency_residual) == 0;
}

bool CheckModelCountIdentity(const Model& model, const BooleanInstance& x,
                             const std::vector<Rational>& shap_values,
                             const Limits& limits) {
  const int n = FeatureCount(model);
  Rational rest = Evaluate(model, x) ? 1 : 0;
  for (const Rational& v : shap_values) rest -= v;
  BigInt cube = 1;
  cube <<= n;
  return Rational(OracleModelCount(model, limits)) == cube * rest;
}

}  // namespace xplain
