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

#include <gtest/gtest.h>

#include "test_util.h"
#include "xplain/error.h"
#include "xplain/generator.h"
#include "xplain/oracle.h"

namespace xplain {
namespace {

using testing::AllInputs;
using testing::AndTree;
using testing::P;
using testing::R;
using testing::S;
using testing::SameTruthTable;
using testing::VarTree;
using testing::X;

Literal Pos(int f) { return {f, true}; }
Literal Neg(int f) { return {f, false}; }

// f'(z) = f(x_S; z_rest) for all z.
void ExpectConditioned(const Model& f, const Model& conditioned,
                       const BooleanInstance& x, const FeatureSubset& subset) {
  const int n = FeatureCount(f);
  for (const BooleanInstance& z : AllInputs(n)) {
    BooleanInstance mixed = z;
    for (int i : subset) mixed = mixed.WithBit(i, x[i]);
    ASSERT_EQ(Evaluate(conditioned, z), Evaluate(f, mixed));
  }
}

TEST(ConditionTreeEnsemble, EmptySubsetKeepsFunction) {
  const Ensemble e({AndTree(3, 0, 1), VarTree(3, 2), VarTree(3, 0)});
  EXPECT_TRUE(SameTruthTable(3, e, ConditionTreeEnsemble(e, X("101"), S({}))));
}

TEST(ConditionTreeEnsemble, ConjunctionBecomesSecondVariable) {
  const Ensemble e({AndTree(2, 0, 1)});
  EXPECT_TRUE(SameTruthTable(2, ConditionTreeEnsemble(e, X("11"), S({0})),
                             VarTree(2, 1)));
}

TEST(ConditionTreeEnsemble, ConjunctionBecomesConstantZero) {
  const Ensemble e({AndTree(2, 0, 1)});
  EXPECT_TRUE(SameTruthTable(2, ConditionTreeEnsemble(e, X("01"), S({0})),
                             DecisionTree::Constant(2, false)));
}

TEST(ConditionTreeEnsemble, RejectsPerceptronMembers) {
  const Ensemble e({P({"1"}, "0")});
  try {
    ConditionTreeEnsemble(e, X("1"), S({0}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kUnsupportedModel);
  }
}

TEST(ConditionPerceptron, EmptySubsetUnchanged) {
  const Perceptron p = P({"1", "-3/2"}, "1/3");
  const Perceptron c = ConditionPerceptron(p, X("11"), S({}));
  EXPECT_EQ(c.weights(), p.weights());
  EXPECT_EQ(c.bias(), p.bias());
}

TEST(ConditionPerceptron, ZeroesFixedWeightsAndShiftsBias) {
  const Perceptron c = ConditionPerceptron(P({"1", "1"}, "-2"), X("11"), S({0}));
  EXPECT_EQ(c.weights(), (std::vector<Rational>{R("0"), R("1")}));
  EXPECT_EQ(c.bias(), R("-1"));
}

TEST(ConditionPerceptron, FullyFixedIsConstant) {
  const Perceptron p = P({"3", "-2"}, "0");
  const Perceptron c = ConditionPerceptron(p, X("01"), S({0, 1}));
  EXPECT_EQ(c.weights(), (std::vector<Rational>{R("0"), R("0")}));
  EXPECT_EQ(c.bias(), R("-2"));
  for (const BooleanInstance& z : AllInputs(2)) {
    EXPECT_EQ(c.Evaluate(z), p.Evaluate(X("01")));
  }
}

TEST(ConditionProperty, RandomModelsAllClasses) {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    GeneratorParams params;
    params.seed = seed;
    params.cls = static_cast<InstanceClass>(seed % 4);
    params.n = 7;
    params.weighted_voting = seed % 3 == 0;
    const GeneratedInstance inst = GenerateRandomInstance(params);
    Rng rng(seed * 7);
    std::vector<int> subset;
    for (int i = 0; i < params.n; ++i) {
      if (rng.Bit()) subset.push_back(i);
    }
    const Model& f = inst.document.model;
    ExpectConditioned(f, Condition(f, inst.x, S(subset)), inst.x, S(subset));
  }
}

TEST(ConditionProperty, ComposesAsUnion) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    GeneratorParams params;
    params.seed = seed;
    params.n = 7;
    const GeneratedInstance inst = GenerateRandomInstance(params);
    const Model& f = inst.document.model;
    const FeatureSubset a = S({0, 3}), b = S({3, 5, 6});
    const Model twice = Condition(Condition(f, inst.x, a), inst.x, b);
    const Model once = Condition(f, inst.x, a.Union(b));
    for (const BooleanInstance& z : AllInputs(params.n)) {
      ASSERT_EQ(Evaluate(twice, z), Evaluate(once, z));
    }
  }
}

TEST(ConditionProperty, ConditionedTreesNeverTestFixedFeatures) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    GeneratorParams params;
    params.seed = seed;
    params.n = 6;
    const GeneratedInstance inst = GenerateRandomInstance(params);
    const Model c = Condition(inst.document.model, inst.x, S({1, 4}));
    for (const BaseModel& member : std::get<Ensemble>(c).models()) {
      const DecisionTree& t = std::get<DecisionTree>(member);
      EXPECT_TRUE(t.Validate().empty());
      for (const TreeNode& node : t.nodes()) {
        EXPECT_NE(node.feature, 1);
        EXPECT_NE(node.feature, 4);
      }
    }
  }
}

TEST(Negate, Involution) {
  const Ensemble e({AndTree(3, 0, 1), P({"1", "-1/2", "2"}, "-1"),
                    VarTree(3, 2)},
                   Voting::Weighted({R("1/3"), R("-2"), R("5/7")}, R("-1")));
  EXPECT_TRUE(SameTruthTable(3, e, NegateEnsemble(NegateEnsemble(e))));
}

TEST(Negate, SingleTreeFlipsLeaves) {
  const Ensemble e({VarTree(1, 0)});
  const Ensemble neg = NegateEnsemble(e);
  EXPECT_TRUE(neg.Evaluate(X("0")));
  EXPECT_FALSE(neg.Evaluate(X("1")));
}

TEST(Negate, WeightedExactTie) {
  const Ensemble e({VarTree(2, 0), VarTree(2, 1)},
                   Voting::Weighted({R("1"), R("-1")}, R("0")));
  const Ensemble neg = NegateEnsemble(e);
  for (const BooleanInstance& z : AllInputs(2)) {
    EXPECT_NE(neg.Evaluate(z), e.Evaluate(z)) << z.ToString();
  }
  EXPECT_FALSE(neg.Evaluate(X("11")));
  EXPECT_FALSE(neg.Evaluate(X("00")));
}

TEST(Negate, PerceptronOnTheBoundary) {
  const Perceptron p = P({"1/2", "1/3"}, "-5/6");
  const Perceptron neg = NegatePerceptron(p);
  for (const BooleanInstance& z : AllInputs(2)) {
    EXPECT_NE(neg.Evaluate(z), p.Evaluate(z));
  }
}

TEST(NegateProperty, RandomEnsembles) {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    GeneratorParams params;
    params.seed = seed;
    params.cls = static_cast<InstanceClass>(seed % 4);
    params.n = 6;
    params.weighted_voting = seed % 2 == 0;
    const Model& f = GenerateRandomInstance(params).document.model;
    const Model neg = Negate(f);
    for (const BooleanInstance& z : AllInputs(params.n)) {
      ASSERT_NE(Evaluate(neg, z), Evaluate(f, z)) << "seed " << seed;
    }
  }
}

TEST(IndicatorTree, EmptySubsetIsConstantOne) {
  const DecisionTree t = IndicatorTree(X("101"), S({}));
  EXPECT_EQ(testing::CountAccepting(t), 8);
}

TEST(IndicatorTree, FullSubsetAcceptsOnlyX) {
  const DecisionTree t = IndicatorTree(X("101"), S({0, 1, 2}));
  for (const BooleanInstance& z : AllInputs(3)) {
    EXPECT_EQ(t.Evaluate(z), z == X("101"));
  }
  EXPECT_EQ(t.depth(), 3);
  int positive = 0;
  for (int id : t.LeafIds()) positive += t.node(id).label;
  EXPECT_EQ(positive, 1);
}

TEST(IndicatorTree, SingleFixedFeature) {
  const DecisionTree t = IndicatorTree(X("10"), S({1}));
  EXPECT_TRUE(t.Evaluate(X("00")));
  EXPECT_TRUE(t.Evaluate(X("10")));
  EXPECT_FALSE(t.Evaluate(X("01")));
  EXPECT_FALSE(t.Evaluate(X("11")));
}

TEST(IndicatorPerceptron, FullSubsetWeights) {
  const Perceptron p = IndicatorPerceptron(X("101"), S({0, 1, 2}));
  EXPECT_EQ(p.weights(), (std::vector<Rational>{R("1"), R("-1"), R("1")}));
  EXPECT_EQ(p.bias(), R("-3/2"));
  for (const BooleanInstance& z : AllInputs(3)) {
    EXPECT_EQ(p.Evaluate(z), z == X("101"));
  }
}

TEST(IndicatorPerceptron, EmptySubset) {
  const Perceptron p = IndicatorPerceptron(X("01"), S({}));
  EXPECT_EQ(p.weights(), (std::vector<Rational>{R("0"), R("0")}));
  EXPECT_EQ(p.bias(), R("1/2"));
  EXPECT_EQ(testing::CountAccepting(p), 4);
}

TEST(IndicatorPerceptron, NegativeLiteral) {
  const Perceptron p = IndicatorPerceptron(X("00"), S({0}));
  EXPECT_EQ(p.weights(), (std::vector<Rational>{R("-1"), R("0")}));
  EXPECT_EQ(p.bias(), R("1/2"));
  EXPECT_TRUE(p.Evaluate(X("00")));
  EXPECT_TRUE(p.Evaluate(X("01")));
  EXPECT_FALSE(p.Evaluate(X("10")));
}

TEST(IndicatorProperty, AcceptingCount) {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(8));
    const BooleanInstance x = RandomInstance(rng, n);
    std::vector<int> subset;
    for (int i = 0; i < n; ++i) {
      if (rng.Bit()) subset.push_back(i);
    }
    const int expected = 1 << (n - static_cast<int>(subset.size()));
    EXPECT_EQ(testing::CountAccepting(IndicatorTree(x, S(subset))), expected);
    EXPECT_EQ(testing::CountAccepting(IndicatorPerceptron(x, S(subset))),
              expected);
  }
}

TEST(DnfCompiler, SizeIsTwiceTermsMinusOne) {
  NormalForm dnf{3, {{Pos(0)}, {Pos(1)}, {Neg(2)}}, false};
  EXPECT_EQ(DnfToEnsemble(dnf, BaseKind::kTree).size(), 5);
  EXPECT_EQ(DnfToEnsemble(dnf, BaseKind::kPerceptron).size(), 5);
}

TEST(DnfCompiler, SingleTerm) {
  NormalForm dnf{1, {{Pos(0)}}, false};
  const Ensemble e = DnfToEnsemble(dnf, BaseKind::kTree);
  EXPECT_EQ(e.size(), 1);
  EXPECT_TRUE(SameTruthTable(1, e, VarTree(1, 0)));
}

TEST(DnfCompiler, TwoTermsMatchFormula) {
  NormalForm dnf{3, {{Pos(0), Pos(1)}, {Neg(0), Pos(2)}}, false};
  for (BaseKind kind : {BaseKind::kTree, BaseKind::kPerceptron}) {
    const Ensemble e = DnfToEnsemble(dnf, kind);
    for (const BooleanInstance& z : AllInputs(3)) {
      EXPECT_EQ(e.Evaluate(z), (z[0] && z[1]) || (!z[0] && z[2]));
    }
    EXPECT_EQ(OracleModelCount(e), testing::CountAccepting(e));
  }
}

TEST(CnfCompiler, SingleClause) {
  NormalForm cnf{2, {{Pos(0), Pos(1)}}, true};
  for (BaseKind kind : {BaseKind::kTree, BaseKind::kPerceptron}) {
    const Ensemble e = CnfToEnsemble(cnf, kind);
    for (const BooleanInstance& z : AllInputs(2)) {
      EXPECT_EQ(e.Evaluate(z), z[0] || z[1]);
    }
  }
}

TEST(CnfCompiler, UnitClause) {
  NormalForm cnf{1, {{Pos(0)}}, true};
  EXPECT_TRUE(SameTruthTable(1, CnfToEnsemble(cnf, BaseKind::kTree),
                             VarTree(1, 0)));
}

TEST(CnfCompiler, TriangleVertexCover) {
  NormalForm cnf{3,
                 {{Pos(0), Pos(1)}, {Pos(1), Pos(2)}, {Pos(0), Pos(2)}},
                 true};
  for (BaseKind kind : {BaseKind::kTree, BaseKind::kPerceptron}) {
    const Ensemble e = CnfToEnsemble(cnf, kind);
    for (const BooleanInstance& z : AllInputs(3)) {
      EXPECT_EQ(e.Evaluate(z),
                (z[0] || z[1]) && (z[1] || z[2]) && (z[0] || z[2]));
    }
  }
}

TEST(NormalFormCheck, RejectsMalformed) {
  EXPECT_THROW((NormalForm{2, {}, false}.Check()), Error);
  EXPECT_THROW((NormalForm{2, {{Pos(0), Neg(0)}}, false}.Check()), Error);
  EXPECT_THROW((NormalForm{2, {{Pos(2)}}, false}.Check()), Error);
}

}  // namespace
}  // namespace xplain
