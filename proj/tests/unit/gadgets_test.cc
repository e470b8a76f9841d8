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

#include "xplain/gadgets.h"

#include <gtest/gtest.h>

#include "test_util.h"
#include "xplain/error.h"
#include "xplain/generator.h"
#include "xplain/oracle.h"
#include "xplain/tree_explain.h"

namespace xplain {
namespace {

using testing::S;

bool CsrNo(const CsrGadget& g) {
  return !OracleIsSufficient(g.ensemble, g.x, g.subset);
}

bool McrYes(const BoundGadget& g) {
  const auto r = OracleMinContrastive(g.ensemble, g.x);
  return r.has_value() && r->size <= g.bound;
}

bool MsrYes(const BoundGadget& g) {
  return OracleMinSufficient(g.ensemble, g.x).size <= g.bound;
}

TEST(SspGadget, Examples) {
  const CsrGadget yes = SspCsrGadget({{1, 2}, 2});
  EXPECT_EQ(yes.ensemble.size(), 2);
  EXPECT_TRUE(yes.ensemble.Evaluate(yes.x));
  EXPECT_TRUE(yes.subset.empty());
  EXPECT_TRUE(CsrNo(yes));
  EXPECT_FALSE(CsrNo(SspCsrGadget({{2, 4}, 3})));
  EXPECT_TRUE(CsrNo(SspCsrGadget({{1}, 1})));
}

TEST(SspGadget, RejectsNonPositive) {
  try {
    SspCsrGadget({{1, 0}, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInstance);
  }
}

TEST(KSspGadget, Examples) {
  EXPECT_TRUE(McrYes(KSspMcrGadget({{1, 2, 3}, 2, 5})));
  EXPECT_FALSE(McrYes(KSspMcrGadget({{2, 2}, 1, 3})));
  EXPECT_TRUE(McrYes(KSspMcrGadget({{1, 1}, 2, 2})));
  EXPECT_EQ(KSspMcrGadget({{1, 1}, 2, 2}).bound, 2);
}

// The bound-d query accepts any smaller flip, so exact-k subset sum and the
// gadget disagree here: {2} alone hits the target.
TEST(KSspGadget, BoundReadsAsAtMostK) {
  const KSspInstance inst{{2, 5}, 2, 2};
  EXPECT_FALSE(SolveKSspBrute(inst));
  EXPECT_TRUE(SolveKSspBrute(inst, /*at_most=*/true));
  EXPECT_TRUE(McrYes(KSspMcrGadget(inst)));
}

TEST(KGsspStarGadget, FiveMembers) {
  const KGsspStarInstance inst{{1, 2, 4}, S({0, 1}), 1, 4};
  const BoundGadget g = KGsspStarMsrGadget(inst);
  EXPECT_EQ(g.ensemble.size(), 5);
  EXPECT_EQ(g.x, BooleanInstance::Constant(3, true));
  EXPECT_TRUE(g.ensemble.Evaluate(g.x));
  EXPECT_EQ(MsrYes(g), SolveKGsspStarBrute(inst, true));
}

TEST(KGsspStarGadget, DegenerateIsAllTrue) {
  const BoundGadget g = KGsspStarMsrGadget({{1, 2}, S({0, 1}), 1, 3});
  for (const BaseModel& member : g.ensemble.models()) {
    for (const BooleanInstance& z : testing::AllInputs(2)) {
      EXPECT_TRUE(Evaluate(member, z));
    }
  }
}

TEST(KGsspStarGadget, ChainFromSmallGssp) {
  for (int64_t target : {2, 3}) {
    const GsspInstance inst{{1}, {1}, target};
    const KGsspStarInstance star = KGsspToKGsspStar(GsspToKGssp(inst));
    EXPECT_EQ(SolveGsspBrute(inst), SolveKGsspStarBrute(star));
    EXPECT_EQ(SolveGsspBrute(inst), MsrYes(KGsspStarMsrGadget(star)));
  }
}

TEST(GsspChain, RewritesPreserveAnswers) {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    GsspInstance inst;
    const int l = 1 + static_cast<int>(rng.Below(2));
    const int m = 1 + static_cast<int>(rng.Below(3));
    for (int i = 0; i < l; ++i) inst.u.push_back(rng.Between(1, 5));
    for (int i = 0; i < m; ++i) inst.v.push_back(rng.Between(1, 5));
    inst.target = rng.Between(1, 12);
    const KGsspInstance k = GsspToKGssp(inst);
    const KGsspStarInstance star = KGsspToKGsspStar(k);
    ASSERT_EQ(SolveGsspBrute(inst), SolveKGsspBrute(k));
    ASSERT_EQ(SolveKGsspBrute(k), SolveKGsspStarBrute(star));
  }
}

TEST(CliqueGadget, CountsAndDepth) {
  ColoredGraph g;
  g.colors = 3;
  g.color_of = {0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2};
  g.edges = {{0, 4}, {4, 8}};
  EXPECT_EQ(CliqueClassSize(g), 4);
  const CsrGadget gadget = MulticoloredCliqueCsrGadget(g);
  EXPECT_EQ(gadget.ensemble.size(), 6);
  for (const BaseModel& member : gadget.ensemble.models()) {
    const DecisionTree& t = std::get<DecisionTree>(member);
    EXPECT_TRUE(t.depth() == 4 || t.depth() == 0);
  }
  EXPECT_FALSE(gadget.ensemble.Evaluate(gadget.x));
}

TEST(CliqueGadget, Triangle) {
  ColoredGraph g;
  g.colors = 3;
  g.color_of = {0, 1, 2};
  g.edges = {{0, 1}, {1, 2}, {0, 2}};
  EXPECT_TRUE(SolveMulticoloredCliqueBrute(g));
  const CsrGadget gadget = MulticoloredCliqueCsrGadget(g);
  EXPECT_FALSE(CsrTreeEnsemble(gadget.ensemble, gadget.x, gadget.subset));
}

TEST(CliqueGadget, NoEdges) {
  ColoredGraph g;
  g.colors = 2;
  g.color_of = {0, 1, 1};
  EXPECT_FALSE(SolveMulticoloredCliqueBrute(g));
  const CsrGadget gadget = MulticoloredCliqueCsrGadget(g);
  EXPECT_TRUE(CsrTreeEnsemble(gadget.ensemble, gadget.x, gadget.subset));
}

TEST(CliqueGadget, RejectsIntraColorEdge) {
  ColoredGraph g;
  g.colors = 2;
  g.color_of = {0, 0, 1};
  g.edges = {{0, 1}};
  try {
    MulticoloredCliqueCsrGadget(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInstance);
  }
}

TEST(BruteSolvers, Examples) {
  EXPECT_TRUE(SolveSspBrute({{1, 2}, 2}));
  EXPECT_FALSE(SolveSspBrute({{2}, 1}));
  EXPECT_TRUE(SolveGsspBrute({{2}, {1}, 2}));
}

TEST(BruteSolvers, CapIsEnforced) {
  SspInstance big;
  big.z.assign(21, 1);
  EXPECT_THROW(SolveSspBrute(big), Error);
}

}  // namespace
}  // namespace xplain
