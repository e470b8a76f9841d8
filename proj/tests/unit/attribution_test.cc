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

#include <gtest/gtest.h>

#include "test_util.h"
#include "xplain/error.h"
#include "xplain/generator.h"
#include "xplain/oracle.h"

namespace xplain {
namespace {

using testing::AndTree;
using testing::MajorityOfVars;
using testing::P;
using testing::R;
using testing::VarTree;
using testing::X;

TEST(ShapEnum, DummyFeature) {
  const auto uniform = ProductDistribution::Uniform(3);
  EXPECT_EQ(ShapEnum(AndTree(3, 0, 1), X("111"), 2, uniform), 0);
}

TEST(ShapEnum, SingleVariable) {
  EXPECT_EQ(ShapEnum(VarTree(2, 0), X("11"), 0, ProductDistribution::Uniform(2)),
            R("1/2"));
}

TEST(ShapEnum, MajorityOfThreeIsSymmetric) {
  const auto values = ShapEnumAll(MajorityOfVars(3, {0, 1, 2}), X("111"),
                                  ProductDistribution::Uniform(3));
  EXPECT_EQ(values, (std::vector<Rational>(3, R("1/6"))));
}

TEST(ShapEnum, BackendsAgree) {
  const Model m = MajorityOfVars(3, {0, 1, 2});
  const auto d = ProductDistribution({R("1/3"), R("1/2"), R("3/4")});
  EXPECT_EQ(ShapEnumAll(m, X("101"), d, ExpectationBackend::kOracle),
            ShapEnumAll(m, X("101"), d, ExpectationBackend::kTreeCylinder));
}

TEST(ShapEnum, CylinderBackendRejectsPerceptrons) {
  EXPECT_THROW(ShapEnum(P({"1"}, "0"), X("1"), 0,
                        ProductDistribution::Uniform(1),
                        ExpectationBackend::kTreeCylinder),
               Error);
}

TEST(ShapEnum, CapIsEnforced) {
  Limits limits;
  limits.shap_enum_max_features = 3;
  try {
    ShapEnum(AndTree(4, 0, 1), X("1111"), 0, ProductDistribution::Uniform(4),
             ExpectationBackend::kAuto, limits);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kResourceExceeded);
  }
}

TEST(SizeStratifiedSums, ConstantOne) {
  const HTable h = SizeStratifiedSums(DecisionTree::Constant(4, true), X("0110"),
                                      ProductDistribution::Uniform(4));
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(h.values[k], Rational(Binomial(4, k)));
}

TEST(SizeStratifiedSums, SingleVariable) {
  const HTable h =
      SizeStratifiedSums(VarTree(1, 0), X("1"), ProductDistribution::Uniform(1));
  EXPECT_EQ(h.values, (std::vector<Rational>{R("1/2"), R("1")}));
}

TEST(SizeStratifiedSums, Conjunction) {
  const HTable h = SizeStratifiedSums(AndTree(2, 0, 1), X("11"),
                                      ProductDistribution::Uniform(2));
  EXPECT_EQ(h.values, (std::vector<Rational>{R("1/4"), R("1"), R("1")}));
}

TEST(SizeStratifiedSums, IndependentOfLambdaGrid) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorParams params;
    params.seed = seed;
    params.n = 6;
    const GeneratedInstance inst = GenerateRandomInstance(params);
    const auto d = ProductDistribution::Uniform(params.n);
    std::vector<Rational> other;
    for (int j = 0; j <= params.n; ++j) other.push_back(MakeRational(j, 2 * params.n + 5));
    EXPECT_EQ(SizeStratifiedSums(inst.document.model, inst.x, d).values,
              SizeStratifiedSums(inst.document.model, inst.x, d, other).values);
    EXPECT_EQ(SizeStratifiedSums(inst.document.model, inst.x, d).values,
              OracleSizeStratifiedSums(inst.document.model, inst.x, d));
  }
}

TEST(SizeStratifiedSums, RejectsRepeatedLambda) {
  EXPECT_THROW(SizeStratifiedSums(VarTree(1, 0), X("1"),
                                  ProductDistribution::Uniform(1),
                                  {R("1/3"), R("1/3")}),
               Error);
}

TEST(ShapInterpolation, Examples) {
  const auto uniform2 = ProductDistribution::Uniform(2);
  EXPECT_EQ(ShapInterpolation(AndTree(3, 0, 1), X("110"), 2,
                              ProductDistribution::Uniform(3)),
            0);
  EXPECT_EQ(ShapInterpolation(AndTree(2, 0, 1), X("11"), 0, uniform2), R("3/8"));
  const auto dup = ShapInterpolationAll(MajorityOfVars(2, {0, 0}), X("10"),
                                        uniform2);
  EXPECT_EQ(dup, (std::vector<Rational>{R("1/2"), R("0")}));
}

TEST(Efficiency, Checks) {
  const Model conj = AndTree(2, 0, 1);
  const auto uniform = ProductDistribution::Uniform(2);
  const auto values = ShapInterpolationAll(conj, X("11"), uniform);
  EXPECT_TRUE(CheckEfficiency(MakeShapReport(conj, X("11"), uniform, values)));
  EXPECT_TRUE(CheckModelCountIdentity(conj, X("11"), values));
  EXPECT_FALSE(CheckModelCountIdentity(conj, X("11"), {R("1/2"), R("3/8")}));
  const Model one = DecisionTree::Constant(3, true);
  const auto zero = ShapInterpolationAll(one, X("010"),
                                         ProductDistribution::Uniform(3));
  EXPECT_EQ(zero, std::vector<Rational>(3));
  EXPECT_TRUE(CheckModelCountIdentity(one, X("010"), zero));
}

TEST(RemoveFeature, DropsOneFeature) {
  const Model g = RemoveFeature(AndTree(3, 0, 2), X("101"), 0);
  EXPECT_EQ(FeatureCount(g), 2);
  EXPECT_TRUE(Evaluate(g, X("01")));
  EXPECT_FALSE(Evaluate(g, X("10")));
}

class AttributionProperties : public ::testing::TestWithParam<int> {};

TEST_P(AttributionProperties, RoutesAgree) {
  GeneratorParams params;
  params.seed = 300 + GetParam();
  params.cls = static_cast<InstanceClass>(GetParam() % 4);
  params.n = 1 + GetParam() % 7;
  params.weighted_voting = GetParam() % 3 == 0;
  const GeneratedInstance inst = GenerateRandomInstance(params);
  Rng rng(GetParam());
  std::vector<Rational> p;
  for (int i = 0; i < params.n; ++i) p.push_back(MakeRational(rng.Between(0, 3), 3));
  const ProductDistribution d(p);
  const Model& f = inst.document.model;
  const auto oracle = OracleShapAll(f, inst.x, d);
  EXPECT_EQ(ShapEnumAll(f, inst.x, d), oracle);
  EXPECT_EQ(ShapInterpolationAll(f, inst.x, d), oracle);
  EXPECT_TRUE(CheckEfficiency(MakeShapReport(f, inst.x, d, oracle)));
}

TEST_P(AttributionProperties, SwappingSymmetricFeaturesSwapsValues) {
  // Two identical subtrees over features 0 and 1 make them interchangeable.
  const int n = 3;
  const Ensemble e({AndTree(n, 0, 2), AndTree(n, 1, 2), VarTree(n, 2)});
  const auto x = BooleanInstance::FromMask(GetParam() % 8, n);
  const auto values = ShapInterpolationAll(e, x, ProductDistribution::Uniform(n));
  if (x[0] == x[1]) EXPECT_EQ(values[0], values[1]);
  const auto swapped = ShapInterpolationAll(
      e, x.WithBit(0, x[1]).WithBit(1, x[0]), ProductDistribution::Uniform(n));
  EXPECT_EQ(values[0], swapped[1]);
  EXPECT_EQ(values[1], swapped[0]);
}

INSTANTIATE_TEST_SUITE_P(Seeds, AttributionProperties, ::testing::Range(0, 40));

}  // namespace
}  // namespace xplain
