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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <string>
#include <thread>
#include <vector>

#include "xplain/xplain.h"

namespace {

using nlohmann::json;

constexpr const char* kConjunction =
    "xplain-model 1\n"
    "features 2\n"
    "tree\n"
    "  node 0 split 0 1 2\n"
    "  node 1 leaf 0\n"
    "  node 2 split 1 3 4\n"
    "  node 3 leaf 0\n"
    "  node 4 leaf 1\n"
    "end\n";

std::string Take(char* text) {
  std::string out = text;
  xpl_string_free(text);
  return out;
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(xpl_model_parse(kConjunction, &model_), XPL_OK);
  }
  void TearDown() override { xpl_model_free(model_); }

  json Query(const json& request, int* affirmative = nullptr) {
    char* out = nullptr;
    EXPECT_EQ(xpl_query(model_, request.dump().c_str(), nullptr, &out,
                        affirmative),
              XPL_OK)
        << xpl_last_error();
    return out ? json::parse(Take(out)) : json();
  }

  xpl_model* model_ = nullptr;
};

TEST_F(CApi, SerializeRoundTrip) {
  char* text = nullptr;
  ASSERT_EQ(xpl_model_serialize(model_, &text), XPL_OK);
  EXPECT_EQ(Take(text), kConjunction);
  int n = 0;
  ASSERT_EQ(xpl_model_feature_count(model_, &n), XPL_OK);
  EXPECT_EQ(n, 2);
  const char* kind = nullptr;
  ASSERT_EQ(xpl_model_kind(model_, &kind), XPL_OK);
  EXPECT_STREQ(kind, "tree");
}

TEST_F(CApi, Evaluate) {
  int out = -1;
  ASSERT_EQ(xpl_model_evaluate(model_, "11", &out), XPL_OK);
  EXPECT_EQ(out, 1);
  ASSERT_EQ(xpl_model_evaluate(model_, "10", &out), XPL_OK);
  EXPECT_EQ(out, 0);
  EXPECT_EQ(xpl_model_evaluate(model_, "1", &out), XPL_ERR_INPUT_SHAPE);
  EXPECT_EQ(xpl_model_evaluate(model_, "1x", &out), XPL_ERR_PARSE);
}

TEST_F(CApi, Queries) {
  int affirmative = -1;
  json r = Query({{"query", "csr"}, {"instance", "11"}, {"subset", {0}}},
                 &affirmative);
  EXPECT_EQ(r["answer"]["sufficient"], false);
  EXPECT_EQ(affirmative, 0);
  r = Query({{"query", "shap"}, {"instance", "11"}, {"feature", 0}});
  EXPECT_EQ(r["answer"]["value"], "3/8");
  EXPECT_EQ(r["algorithm"], "interpolation");
  r = Query({{"query", "cc"}, {"instance", "11"}, {"subset", {0}}});
  EXPECT_EQ(r["answer"]["value"], "1/2");
}

TEST_F(CApi, LimitsAreHonored) {
  xpl_limits limits;
  xpl_limits_default(&limits);
  EXPECT_EQ(limits.oracle_max_features, 20);
  limits.oracle_max_features = 1;
  char* out = nullptr;
  const std::string request =
      R"({"query": "csr", "instance": "11", "algorithm": "oracle"})";
  EXPECT_EQ(xpl_query(model_, request.c_str(), &limits, &out, nullptr),
            XPL_ERR_RESOURCE_EXCEEDED);
  EXPECT_EQ(out, nullptr);
  EXPECT_NE(std::string(xpl_last_error()), "");
}

TEST_F(CApi, ErrorsAreReported) {
  xpl_model* bad = nullptr;
  EXPECT_EQ(xpl_model_parse("xplain-model 1\nfeatures 1\nperceptron\n"
                            "  weights 1/0\n  bias 0\nend\n",
                            &bad),
            XPL_ERR_PARSE);
  EXPECT_EQ(bad, nullptr);
  EXPECT_NE(std::string(xpl_last_error()).find("zero denominator"),
            std::string::npos);
  EXPECT_EQ(xpl_model_parse(nullptr, &bad), XPL_ERR_INVALID_ARGUMENT);
  char* out = nullptr;
  EXPECT_EQ(xpl_query(model_, "{", nullptr, &out, nullptr), XPL_ERR_PARSE);
  EXPECT_STREQ(xpl_status_name(XPL_ERR_RESOURCE_EXCEEDED), "resource-exceeded");
  // A successful call clears the message.
  int n = 0;
  ASSERT_EQ(xpl_model_feature_count(model_, &n), XPL_OK);
  EXPECT_STREQ(xpl_last_error(), "");
}

TEST_F(CApi, ErrorMessagesAreThreadLocal) {
  xpl_model* bad = nullptr;
  ASSERT_EQ(xpl_model_parse("garbage", &bad), XPL_ERR_PARSE);
  std::string other;
  std::thread([&] { other = xpl_last_error(); }).join();
  EXPECT_EQ(other, "");
  EXPECT_NE(std::string(xpl_last_error()), "");
}

TEST_F(CApi, Transforms) {
  xpl_model* conditioned = nullptr;
  const int subset[] = {0};
  ASSERT_EQ(xpl_condition(model_, "11", subset, 1, &conditioned), XPL_OK);
  int out = -1;
  xpl_model_evaluate(conditioned, "01", &out);
  EXPECT_EQ(out, 1);
  xpl_model_free(conditioned);

  xpl_model* negated = nullptr;
  ASSERT_EQ(xpl_negate(model_, &negated), XPL_OK);
  xpl_model_evaluate(negated, "11", &out);
  EXPECT_EQ(out, 0);
  xpl_model_free(negated);

  xpl_model* indicator = nullptr;
  const int all[] = {0, 1, 2};
  ASSERT_EQ(xpl_indicator("101", all, 3, XPL_BASE_PERCEPTRON, &indicator),
            XPL_OK);
  xpl_model_evaluate(indicator, "101", &out);
  EXPECT_EQ(out, 1);
  xpl_model_evaluate(indicator, "100", &out);
  EXPECT_EQ(out, 0);
  xpl_model_free(indicator);

  xpl_model* compiled = nullptr;
  ASSERT_EQ(xpl_compile_normal_form("features 2\n0 1\n", 1, XPL_BASE_TREE,
                                    &compiled),
            XPL_OK);
  xpl_model_evaluate(compiled, "00", &out);
  EXPECT_EQ(out, 0);
  xpl_model_evaluate(compiled, "01", &out);
  EXPECT_EQ(out, 1);
  xpl_model_free(compiled);

  EXPECT_EQ(xpl_condition(model_, "11", subset, -1, &conditioned),
            XPL_ERR_INVALID_ARGUMENT);
  const int far[] = {7};
  EXPECT_NE(xpl_condition(model_, "11", far, 1, &conditioned), XPL_OK);
}

TEST(CApiGadgets, SspAnswerMatchesQuery) {
  char* out = nullptr;
  ASSERT_EQ(xpl_gadget("ssp", R"({"z": [1, 2], "target": 2})", &out), XPL_OK);
  const json g = json::parse(Take(out));
  EXPECT_EQ(g["source_answer"], true);
  xpl_model* model = nullptr;
  ASSERT_EQ(xpl_model_parse(g["model"].get<std::string>().c_str(), &model),
            XPL_OK);
  const json request = {{"query", "csr"}, {"instance", g["instance"]}};
  int affirmative = -1;
  ASSERT_EQ(xpl_query(model, request.dump().c_str(), nullptr, &out,
                      &affirmative),
            XPL_OK);
  xpl_string_free(out);
  EXPECT_EQ(affirmative, 0);
  xpl_model_free(model);
}

TEST(CApiGadgets, AllKinds) {
  const std::vector<std::pair<const char*, const char*>> cases = {
      {"kssp", R"({"z": [2, 5], "k": 2, "target": 2})"},
      {"kgssp-star", R"({"z": [1, 2, 4], "allowed": [0, 1], "k": 1, "target": 4})"},
      {"gssp", R"({"u": [2], "v": [1], "target": 2})"},
      {"clique", R"({"graph": "colors 3\nv 0 0\nv 1 1\nv 2 2\ne 0 1\ne 1 2\ne 0 2\n"})"},
  };
  for (const auto& [kind, params] : cases) {
    char* out = nullptr;
    ASSERT_EQ(xpl_gadget(kind, params, &out), XPL_OK) << xpl_last_error();
    const json g = json::parse(Take(out));
    EXPECT_TRUE(g.contains("model"));
    EXPECT_TRUE(g["source_answer"].is_boolean()) << kind;
  }
  char* out = nullptr;
  EXPECT_EQ(xpl_gadget("nope", "{}", &out), XPL_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(xpl_gadget("ssp", R"({"z": [0], "target": 1})", &out),
            XPL_ERR_INVALID_INSTANCE);
  EXPECT_EQ(xpl_gadget("ssp", R"({"target": 1})", &out), XPL_ERR_PARSE);
}

TEST(CApiGenerate, Deterministic) {
  const char* params = R"({"seed": 9, "class": "perceptron-ensemble", "n": 5})";
  char* a = nullptr;
  char* b = nullptr;
  ASSERT_EQ(xpl_generate(params, &a), XPL_OK);
  ASSERT_EQ(xpl_generate(params, &b), XPL_OK);
  const std::string first = Take(a);
  EXPECT_EQ(first, Take(b));
  EXPECT_EQ(json::parse(first)["instance"].get<std::string>().size(), 5u);
  EXPECT_EQ(xpl_generate(R"({"class": "mlp"})", &a), XPL_ERR_INVALID_ARGUMENT);
}

TEST(CApiBench, Csv) {
  char* csv = nullptr;
  ASSERT_EQ(xpl_bench(R"({"suite": "pseudopoly-in-W", "repeats": 1})", nullptr,
                      &csv),
            XPL_OK);
  const std::string text = Take(csv);
  EXPECT_EQ(text.rfind("suite,n,k,m,W,query,algorithm,wall_seconds,answer_digest",
                       0),
            0u);
  EXPECT_EQ(xpl_bench(R"({"suite": "nope"})", nullptr, &csv),
            XPL_ERR_INVALID_ARGUMENT);
}

}  // namespace
