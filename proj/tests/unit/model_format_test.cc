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

#include "xplain/model_format.h"

#include <gtest/gtest.h>

#include "test_util.h"
#include "xplain/error.h"
#include "xplain/generator.h"

namespace xplain {
namespace {

using testing::R;

std::string ParseError(const std::string& text) {
  try {
    ParseModel(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    return e.what();
  }
  ADD_FAILURE() << "parsed without error";
  return "";
}

bool Contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(ModelFormat, ParsesPerceptron) {
  const ModelDocument doc = ParseModel(
      "xplain-model 1\n"
      "features 2\n"
      "name conj  # trailing comment\n"
      "perceptron\n"
      "  weights 2/2 1\n"
      "  bias -4/2\n"
      "end\n");
  EXPECT_EQ(doc.feature_count(), 2);
  EXPECT_EQ(doc.name, "conj");
  const Perceptron& p = std::get<Perceptron>(doc.model);
  EXPECT_EQ(p.weights(), (std::vector<Rational>{R("1"), R("1")}));
  EXPECT_EQ(p.bias(), R("-2"));
}

TEST(ModelFormat, CanonicalFormReducesAndRenumbers) {
  const std::string messy =
      "xplain-model 1\n"
      "features 2\n"
      "tree\n"
      "node 0 split 1 2 1\n"
      "node 2 leaf 0\n"
      "node 1 leaf 1\n"
      "end\n";
  const std::string canonical = SerializeModel(ParseModel(messy));
  EXPECT_EQ(canonical,
            "xplain-model 1\n"
            "features 2\n"
            "tree\n"
            "  node 0 split 1 1 2\n"
            "  node 1 leaf 0\n"
            "  node 2 leaf 1\n"
            "end\n");
  EXPECT_EQ(SerializeModel(ParseModel(canonical)), canonical);
}

TEST(ModelFormat, RoundTripOnGeneratedCorpus) {
  for (uint64_t seed = 1; seed <= 80; ++seed) {
    GeneratorParams params;
    params.seed = seed;
    params.cls = static_cast<InstanceClass>(seed % 4);
    params.n = 1 + seed % 9;
    params.weighted_voting = seed % 2 == 0;
    const GeneratedInstance inst = GenerateRandomInstance(params);
    const std::string text = SerializeModel(inst.document);
    const ModelDocument back = ParseModel(text);
    EXPECT_EQ(SerializeModel(back), text);
    EXPECT_EQ(back.provenance, inst.document.provenance);
    for (const BooleanInstance& z : testing::AllInputs(params.n)) {
      ASSERT_EQ(Evaluate(back.model, z), Evaluate(inst.document.model, z));
    }
  }
}

TEST(ModelFormat, ZeroDenominator) {
  const std::string what = ParseError(
      "xplain-model 1\nfeatures 1\nperceptron\n  weights 1/0\n  bias 0\nend\n");
  EXPECT_TRUE(Contains(what, "line 4")) << what;
  EXPECT_TRUE(Contains(what, "zero denominator")) << what;
}

TEST(ModelFormat, WeightCountMismatch) {
  const std::string what = ParseError(
      "xplain-model 1\nfeatures 1\n"
      "ensemble weighted 3\n"
      "  weights 1 1\n"
      "  threshold 1\n"
      "  tree\n    node 0 leaf 1\n  end\n"
      "  tree\n    node 0 leaf 1\n  end\n"
      "  tree\n    node 0 leaf 1\n  end\n"
      "end\n");
  EXPECT_TRUE(Contains(what, "line 4")) << what;
  EXPECT_TRUE(Contains(what, "expected 3 voting weights, found 2")) << what;
}

TEST(ModelFormat, RepeatedFeatureIsLineAnchored) {
  const std::string what = ParseError(
      "xplain-model 1\nfeatures 2\ntree\n"
      "  node 0 split 1 1 2\n"
      "  node 1 leaf 0\n"
      "  node 2 split 1 3 4\n"
      "  node 3 leaf 0\n"
      "  node 4 leaf 1\n"
      "end\n");
  EXPECT_TRUE(Contains(what, "repeated feature on path")) << what;
}

TEST(ModelFormat, OtherDiagnostics) {
  EXPECT_TRUE(Contains(ParseError(""), "empty model file"));
  EXPECT_TRUE(Contains(ParseError("xplain-model 2\nfeatures 1\n"),
                       "unsupported schema version"));
  EXPECT_TRUE(Contains(
      ParseError("xplain-model 1\nfeatures 1\nperceptron\n  weights 1 2\n"
                 "  bias 0\nend\n"),
      "line 4"));
  EXPECT_TRUE(Contains(
      ParseError("xplain-model 1\nfeatures 1\nensemble majority 2\n"
                 "  tree\n    node 0 leaf 1\n  end\nend\n"),
      "ensemble declares 2 models, found 1"));
  EXPECT_TRUE(Contains(
      ParseError("xplain-model 1\nfeatures 1\ntree\n  node 0 leaf 1\n"),
      "unterminated tree block"));
  EXPECT_TRUE(Contains(
      ParseError("xplain-model 1\nfeatures 1\ntree\n  node 0 split 4 1 2\n"
                 "  node 1 leaf 0\n  node 2 leaf 1\nend\n"),
      "line 4"));
}

TEST(NormalFormFormat, RoundTrip) {
  const std::string text = "features 3\n0 1\n-0 2\n";
  const NormalForm f = ParseNormalForm(text, false);
  ASSERT_EQ(f.terms.size(), 2u);
  EXPECT_FALSE(f.terms[1][0].positive);
  EXPECT_EQ(SerializeNormalForm(f), text);
  EXPECT_THROW(ParseNormalForm("features 2\n0 -0\n", true), Error);
  EXPECT_THROW(ParseNormalForm("features 2\n3\n", true), Error);
}

TEST(GraphFormat, RoundTrip) {
  const std::string text = "colors 2\nv 0 0\nv 1 1\ne 0 1\n";
  const ColoredGraph g = ParseGraph(text);
  EXPECT_EQ(g.colors, 2);
  EXPECT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(SerializeGraph(g), text);
  EXPECT_THROW(ParseGraph("v 0 0\ne 0 5\n"), Error);
}

TEST(DistributionFormat, ParsesListsAndUniform) {
  EXPECT_EQ(ParseDistribution("uniform", 3).values(),
            ProductDistribution::Uniform(3).values());
  EXPECT_EQ(ParseDistribution("1/3, 1", 2).values(),
            (std::vector<Rational>{R("1/3"), R("1")}));
  EXPECT_EQ(SerializeDistribution(ParseDistribution("2/6 0", 2)), "1/3 0");
  EXPECT_THROW(ParseDistribution("1/2", 2), Error);
  EXPECT_THROW(ParseDistribution("3/2", 1), Error);
}

}  // namespace
}  // namespace xplain
