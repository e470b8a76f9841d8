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

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "xplain/bench.h"
#include "xplain/config.h"
#include "xplain/error.h"
#include "xplain/gadgets.h"
#include "xplain/generator.h"
#include "xplain/model.h"
#include "xplain/model_format.h"
#include "xplain/query.h"
#include "xplain/transforms.h"
#include "xplain/xplain.h"

struct xpl_model {
  xplain::ModelDocument document;
};

namespace {

using nlohmann::json;
using xplain::ErrorCode;

thread_local std::string last_error;

xpl_status Record(xpl_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
xpl_status Guard(Body&& body) {
  try {
    last_error.clear();
    body();
    return XPL_OK;
  } catch (const xplain::Error& e) {
    return Record(static_cast<xpl_status>(e.code()), e.what());
  } catch (const json::exception& e) {
    return Record(XPL_ERR_PARSE, std::string("json: ") + e.what());
  } catch (const std::bad_alloc&) {
    return Record(XPL_ERR_RESOURCE_EXCEEDED, "out of memory");
  } catch (const std::exception& e) {
    return Record(XPL_ERR_INTERNAL, e.what());
  }
}

void Require(const void* pointer, const char* name) {
  if (pointer == nullptr) {
    xplain::Fail(ErrorCode::kInvalidArgument,
                 std::string(name) + " must not be null");
  }
}

char* Duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

xplain::Limits ToLimits(const xpl_limits* limits) {
  if (limits == nullptr) return xplain::Limits::FromEnvironment();
  xplain::Limits out;
  out.oracle_max_features = limits->oracle_max_features;
  out.shap_oracle_max_features = limits->shap_oracle_max_features;
  out.pseudopoly_budget = limits->pseudopoly_budget;
  out.shap_enum_max_features = limits->shap_enum_max_features;
  out.threads = limits->threads < 1 ? 1 : limits->threads;
  return out;
}

xpl_model* Wrap(xplain::Model model) {
  return new xpl_model{xplain::ModelDocument{std::move(model), "", "",
                                             xplain::kModelSchemaVersion}};
}

xplain::FeatureSubset Subset(const int* subset, int size) {
  if (size < 0) xplain::Fail(ErrorCode::kInvalidArgument, "negative size");
  if (size > 0) Require(subset, "subset");
  return xplain::FeatureSubset::Of(std::vector<int>(subset, subset + size));
}

xplain::BaseKind ToBaseKind(xpl_base_kind kind) {
  if (kind == XPL_BASE_TREE) return xplain::BaseKind::kTree;
  if (kind == XPL_BASE_PERCEPTRON) return xplain::BaseKind::kPerceptron;
  xplain::Fail(ErrorCode::kInvalidArgument, "unknown base kind");
}

std::vector<int64_t> Numbers(const json& params, const char* key) {
  return params.at(key).get<std::vector<int64_t>>();
}

// The source answer is reported as null when the brute-force solver refuses.
template <typename Solve>
json SourceAnswer(Solve&& solve) {
  try {
    return solve();
  } catch (const xplain::Error& e) {
    if (e.code() != ErrorCode::kResourceExceeded) throw;
    return nullptr;
  }
}

json CsrGadgetJson(const xplain::CsrGadget& g) {
  return {{"model", xplain::SerializeModel(xplain::Model(g.ensemble))},
          {"instance", g.x.ToString()},
          {"query", "csr"},
          {"subset", g.subset.indices()}};
}

json BoundGadgetJson(const xplain::BoundGadget& g, const char* query) {
  return {{"model", xplain::SerializeModel(xplain::Model(g.ensemble))},
          {"instance", g.x.ToString()},
          {"query", query},
          {"bound", g.bound}};
}

json BuildGadget(const std::string& kind, const json& params) {
  if (kind == "ssp") {
    const xplain::SspInstance inst{Numbers(params, "z"),
                                   params.at("target").get<int64_t>()};
    json out = CsrGadgetJson(xplain::SspCsrGadget(inst));
    // Yes-instances are exactly those where the empty set is not sufficient.
    out["source_answer"] =
        SourceAnswer([&] { return xplain::SolveSspBrute(inst); });
    return out;
  }
  if (kind == "kssp") {
    const xplain::KSspInstance inst{Numbers(params, "z"),
                                    params.at("k").get<int>(),
                                    params.at("target").get<int64_t>()};
    json out = BoundGadgetJson(xplain::KSspMcrGadget(inst), "mcr");
    out["source_answer"] =
        SourceAnswer([&] { return xplain::SolveKSspBrute(inst, true); });
    out["exact_k_answer"] =
        SourceAnswer([&] { return xplain::SolveKSspBrute(inst, false); });
    return out;
  }
  if (kind == "kgssp-star") {
    const xplain::KGsspStarInstance inst{
        Numbers(params, "z"),
        xplain::FeatureSubset::Of(params.at("allowed").get<std::vector<int>>()),
        params.at("k").get<int>(), params.at("target").get<int64_t>()};
    json out = BoundGadgetJson(xplain::KGsspStarMsrGadget(inst), "msr");
    out["source_answer"] = SourceAnswer(
        [&] { return xplain::SolveKGsspStarBrute(inst, true); });
    return out;
  }
  if (kind == "gssp") {
    const xplain::GsspInstance inst{Numbers(params, "u"), Numbers(params, "v"),
                                    params.at("target").get<int64_t>()};
    const xplain::KGsspStarInstance star =
        xplain::KGsspToKGsspStar(xplain::GsspToKGssp(inst));
    json out = BoundGadgetJson(xplain::KGsspStarMsrGadget(star), "msr");
    out["source_answer"] =
        SourceAnswer([&] { return xplain::SolveGsspBrute(inst); });
    return out;
  }
  if (kind == "clique") {
    const xplain::ColoredGraph graph =
        xplain::ParseGraph(params.at("graph").get<std::string>());
    json out = CsrGadgetJson(xplain::MulticoloredCliqueCsrGadget(graph));
    out["source_answer"] = SourceAnswer(
        [&] { return xplain::SolveMulticoloredCliqueBrute(graph); });
    return out;
  }
  xplain::Fail(ErrorCode::kInvalidArgument, "unknown gadget '" + kind + "'");
}

template <typename T>
void Read(const json& params, const char* key, T& field) {
  if (params.contains(key)) field = params.at(key).get<T>();
}

}  // namespace

extern "C" {

const char* xpl_version(void) { return "1.0.0"; }

const char* xpl_status_name(xpl_status status) {
  switch (status) {
    case XPL_OK:
      return "ok";
    case XPL_ERR_INTERNAL:
      return "internal";
    default:
      return xplain::ErrorCodeName(static_cast<ErrorCode>(status));
  }
}

const char* xpl_last_error(void) { return last_error.c_str(); }

void xpl_string_free(char* text) { std::free(text); }

void xpl_limits_default(xpl_limits* out) {
  if (out == nullptr) return;
  const xplain::Limits limits = xplain::Limits::FromEnvironment();
  out->oracle_max_features = limits.oracle_max_features;
  out->shap_oracle_max_features = limits.shap_oracle_max_features;
  out->pseudopoly_budget = limits.pseudopoly_budget;
  out->shap_enum_max_features = limits.shap_enum_max_features;
  out->threads = limits.threads;
}

xpl_status xpl_model_parse(const char* text, xpl_model** out) {
  return Guard([&] {
    Require(text, "text");
    Require(out, "out");
    *out = new xpl_model{xplain::ParseModel(text)};
  });
}

void xpl_model_free(xpl_model* model) { delete model; }

xpl_status xpl_model_serialize(const xpl_model* model, char** out) {
  return Guard([&] {
    Require(model, "model");
    Require(out, "out");
    *out = Duplicate(xplain::SerializeModel(model->document));
  });
}

xpl_status xpl_model_feature_count(const xpl_model* model, int* out) {
  return Guard([&] {
    Require(model, "model");
    Require(out, "out");
    *out = model->document.feature_count();
  });
}

xpl_status xpl_model_kind(const xpl_model* model, const char** out) {
  return Guard([&] {
    Require(model, "model");
    Require(out, "out");
    *out = xplain::ModelKindName(xplain::KindOf(model->document.model));
  });
}

xpl_status xpl_model_validate(const xpl_model* model, char** out) {
  return Guard([&] {
    Require(model, "model");
    Require(out, "out");
    json diagnostics = json::array();
    for (const xplain::Diagnostic& d : xplain::Validate(model->document.model)) {
      diagnostics.push_back({{"message", d.message}, {"location", d.location}});
    }
    *out = Duplicate(diagnostics.dump());
  });
}

xpl_status xpl_model_evaluate(const xpl_model* model, const char* instance,
                              int* out) {
  return Guard([&] {
    Require(model, "model");
    Require(instance, "instance");
    Require(out, "out");
    *out = xplain::Evaluate(model->document.model,
                            xplain::BooleanInstance::Parse(instance));
  });
}

xpl_status xpl_query(const xpl_model* model, const char* request_json,
                     const xpl_limits* limits, char** result_json,
                     int* affirmative) {
  return Guard([&] {
    Require(model, "model");
    Require(request_json, "request_json");
    Require(result_json, "result_json");
    const xplain::QueryResult result =
        xplain::RunQuery(model->document.model,
                         xplain::ParseQueryRequest(request_json),
                         ToLimits(limits));
    *result_json = Duplicate(result.ToJson());
    if (affirmative != nullptr) *affirmative = result.affirmative;
  });
}

xpl_status xpl_condition(const xpl_model* model, const char* instance,
                         const int* subset, int subset_size, xpl_model** out) {
  return Guard([&] {
    Require(model, "model");
    Require(instance, "instance");
    Require(out, "out");
    const auto x = xplain::BooleanInstance::Parse(instance);
    xplain::CheckInstance(x, model->document.feature_count());
    const xplain::FeatureSubset s = Subset(subset, subset_size);
    s.CheckWithin(x.size());
    *out = Wrap(xplain::Condition(model->document.model, x, s));
  });
}

xpl_status xpl_negate(const xpl_model* model, xpl_model** out) {
  return Guard([&] {
    Require(model, "model");
    Require(out, "out");
    *out = Wrap(xplain::Negate(model->document.model));
  });
}

xpl_status xpl_indicator(const char* instance, const int* subset,
                         int subset_size, xpl_base_kind kind,
                         xpl_model** out) {
  return Guard([&] {
    Require(instance, "instance");
    Require(out, "out");
    const auto x = xplain::BooleanInstance::Parse(instance);
    const xplain::FeatureSubset s = Subset(subset, subset_size);
    s.CheckWithin(x.size());
    if (ToBaseKind(kind) == xplain::BaseKind::kTree) {
      *out = Wrap(xplain::IndicatorTree(x, s));
    } else {
      *out = Wrap(xplain::IndicatorPerceptron(x, s));
    }
  });
}

xpl_status xpl_compile_normal_form(const char* text, int is_cnf,
                                   xpl_base_kind kind, xpl_model** out) {
  return Guard([&] {
    Require(text, "text");
    Require(out, "out");
    const xplain::NormalForm form = xplain::ParseNormalForm(text, is_cnf != 0);
    *out = Wrap(is_cnf ? xplain::CnfToEnsemble(form, ToBaseKind(kind))
                       : xplain::DnfToEnsemble(form, ToBaseKind(kind)));
  });
}

xpl_status xpl_gadget(const char* kind, const char* params_json,
                      char** result_json) {
  return Guard([&] {
    Require(kind, "kind");
    Require(params_json, "params_json");
    Require(result_json, "result_json");
    *result_json =
        Duplicate(BuildGadget(kind, json::parse(params_json)).dump(2));
  });
}

xpl_status xpl_generate(const char* params_json, char** result_json) {
  return Guard([&] {
    Require(params_json, "params_json");
    Require(result_json, "result_json");
    const json params = json::parse(params_json);
    xplain::GeneratorParams gen;
    Read(params, "seed", gen.seed);
    if (params.contains("class")) {
      gen.cls = xplain::ParseInstanceClass(params.at("class").get<std::string>());
    }
    Read(params, "n", gen.n);
    Read(params, "k", gen.k);
    Read(params, "m", gen.m);
    Read(params, "weight_bound", gen.weight_bound);
    Read(params, "weighted_voting", gen.weighted_voting);
    const xplain::GeneratedInstance inst = xplain::GenerateRandomInstance(gen);
    const json out = {{"model", xplain::SerializeModel(inst.document)},
                      {"instance", inst.x.ToString()}};
    *result_json = Duplicate(out.dump(2));
  });
}

xpl_status xpl_bench(const char* params_json, const xpl_limits* limits,
                     char** csv) {
  return Guard([&] {
    Require(params_json, "params_json");
    Require(csv, "csv");
    const json params = json::parse(params_json);
    xplain::BenchParams bench;
    Read(params, "suite", bench.suite);
    Read(params, "seed", bench.seed);
    Read(params, "values", bench.values);
    Read(params, "n", bench.n);
    Read(params, "k", bench.k);
    Read(params, "m", bench.m);
    Read(params, "repeats", bench.repeats);
    Read(params, "budget_seconds", bench.budget_seconds);
    bench.limits = ToLimits(limits);
    *csv = Duplicate(xplain::BenchCsv(xplain::RunBench(bench)));
  });
}

}  // extern "C"
