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

#include "xplain/query.h"

#include <chrono>
#include <nlohmann/json.hpp>
#include <numeric>

#include "xplain/attribution.h"
#include "xplain/error.h"
#include "xplain/oracle.h"
#include "xplain/perceptron_explain.h"
#include "xplain/tree_explain.h"

namespace xplain {

namespace {

using nlohmann::json;

enum class Route {
  kTreePtime,
  kTreeFpt,
  kPerceptronPtime,
  kPseudopoly,
  kInterpolation,
  kEnumeration,
  kOracle,
};

const char* RouteName(Route route) {
  switch (route) {
    case Route::kTreePtime:
      return "tree-ptime";
    case Route::kTreeFpt:
      return "tree-fpt";
    case Route::kPerceptronPtime:
      return "perceptron-ptime";
    case Route::kPseudopoly:
      return "pseudopoly";
    case Route::kInterpolation:
      return "interpolation";
    case Route::kEnumeration:
      return "enumeration";
    case Route::kOracle:
      return "oracle";
  }
  return "unknown";
}

[[noreturn]] void Incompatible(const std::string& selector, QueryKind kind,
                               ModelKind model) {
  Fail(ErrorCode::kInvalidArgument,
       "algorithm '" + selector + "' does not support " + QueryKindName(kind) +
           " on a " + ModelKindName(model));
}

Route AutoRoute(QueryKind kind, ModelKind model) {
  switch (model) {
    case ModelKind::kTree:
      return kind == QueryKind::kShap ? Route::kInterpolation
                                      : Route::kTreePtime;
    case ModelKind::kTreeEnsemble:
      return kind == QueryKind::kShap ? Route::kInterpolation
                                      : Route::kTreeFpt;
    case ModelKind::kPerceptron:
      switch (kind) {
        case QueryKind::kCc:
        case QueryKind::kShap:
        case QueryKind::kExpect:
          return Route::kPseudopoly;
        case QueryKind::kEnumerateContrastive:
          return Route::kOracle;
        default:
          return Route::kPerceptronPtime;
      }
    default:
      return Route::kOracle;
  }
}

Route SelectRoute(const std::string& selector, QueryKind kind,
                  ModelKind model) {
  const bool tree = model == ModelKind::kTree ||
                    model == ModelKind::kTreeEnsemble;
  if (selector == "auto") return AutoRoute(kind, model);
  if (selector == "oracle") return Route::kOracle;
  if (selector == "fpt") {
    if (!tree || kind == QueryKind::kShap) Incompatible(selector, kind, model);
    return Route::kTreeFpt;
  }
  if (selector == "pseudopoly") {
    if (model != ModelKind::kPerceptron ||
        (kind != QueryKind::kCc && kind != QueryKind::kShap &&
         kind != QueryKind::kExpect)) {
      Incompatible(selector, kind, model);
    }
    return Route::kPseudopoly;
  }
  if (selector == "interpolation" || selector == "enumeration") {
    if (kind != QueryKind::kShap) Incompatible(selector, kind, model);
    return selector == "interpolation" ? Route::kInterpolation
                                       : Route::kEnumeration;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown algorithm '" + selector + "'");
}

json SubsetJson(const FeatureSubset& s) { return json(s.indices()); }

json ReasonJson(const std::optional<Reason>& reason) {
  json out;
  if (reason) {
    out["size"] = reason->size;
    out["witness"] = SubsetJson(reason->witness);
  } else {
    out["size"] = nullptr;
    out["witness"] = nullptr;
  }
  return out;
}

class Runner {
 public:
  Runner(const Model& model, const QueryRequest& request, const Limits& limits)
      : model_(model),
        request_(request),
        limits_(limits),
        n_(FeatureCount(model)),
        model_kind_(KindOf(model)) {}

  QueryResult Run() {
    const Route route = SelectRoute(request_.algorithm, request_.kind,
                                    model_kind_);
    result_.kind = request_.kind;
    result_.algorithm = RouteName(route);
    if (route == Route::kOracle && request_.algorithm == "auto") {
      result_.warnings.push_back(
          std::string("no tractable route for ") +
          ModelKindName(model_kind_) +
          "; using the exhaustive oracle (cap " +
          std::to_string(limits_.oracle_max_features) + " features)");
    }
    x_ = BooleanInstance::Parse(request_.instance);
    CheckInstance(x_, n_);
    json answer;
    switch (request_.kind) {
      case QueryKind::kCsr:
        answer = Csr(route);
        break;
      case QueryKind::kMcr:
        answer = Mcr(route);
        break;
      case QueryKind::kMsr:
        answer = Msr(route);
        break;
      case QueryKind::kCc:
        answer = Cc(route);
        break;
      case QueryKind::kShap:
        answer = Shap(route);
        break;
      case QueryKind::kExpect:
        answer = Expect(route);
        break;
      case QueryKind::kEnumerateContrastive:
        answer = Enumerate(route);
        break;
      case QueryKind::kGreedy:
        answer = Greedy(route);
        break;
    }
    result_.answer_json = answer.dump();
    return result_;
  }

 private:
  FeatureSubset Subset() const {
    FeatureSubset s = FeatureSubset::Of(request_.subset);
    s.CheckWithin(n_);
    return s;
  }

  ProductDistribution Distribution() const {
    if (request_.distribution.empty()) return ProductDistribution::Uniform(n_);
    if (static_cast<int>(request_.distribution.size()) != n_) {
      Fail(ErrorCode::kInputShape, "distribution length differs from n");
    }
    std::vector<Rational> p;
    for (const std::string& v : request_.distribution) {
      p.push_back(ParseRational(v));
    }
    return ProductDistribution(std::move(p));
  }

  const Ensemble& Trees() {
    if (!ensemble_) ensemble_ = AsEnsemble(model_);
    return *ensemble_;
  }

  const Perceptron& Linear() const { return std::get<Perceptron>(model_); }

  bool IsSufficient(Route route, const FeatureSubset& s) {
    switch (route) {
      case Route::kTreePtime:
        if (const auto* t = std::get_if<DecisionTree>(&model_)) {
          return CsrSingleTree(*t, x_, s);
        }
        return CsrTreeEnsemble(Trees(), x_, s, limits_);
      case Route::kTreeFpt:
        return CsrTreeEnsemble(Trees(), x_, s, limits_);
      case Route::kPerceptronPtime:
        return CsrPerceptron(Linear(), x_, s);
      default:
        return OracleIsSufficient(model_, x_, s, limits_);
    }
  }

  json Csr(Route route) {
    const bool sufficient = IsSufficient(route, Subset());
    result_.affirmative = sufficient;
    return json{{"sufficient", sufficient}};
  }

  void ApplyBound(json& answer, const std::optional<Reason>& reason) {
    if (!request_.bound) return;
    const bool within = reason.has_value() && reason->size <= *request_.bound;
    answer["bound"] = *request_.bound;
    answer["within_bound"] = within;
    result_.affirmative = within;
  }

  json Mcr(Route route) {
    std::optional<Reason> reason;
    if (route == Route::kOracle) {
      reason = OracleMinContrastive(model_, x_, limits_);
    } else if (route == Route::kPerceptronPtime) {
      reason = MinContrastivePerceptron(Linear(), x_);
    } else {
      reason = MinContrastiveTreeEnsemble(Trees(), x_, limits_);
    }
    json answer = ReasonJson(reason);
    ApplyBound(answer, reason);
    return answer;
  }

  json Msr(Route route) {
    Reason reason;
    if (route == Route::kOracle) {
      reason = OracleMinSufficient(model_, x_, limits_);
    } else if (route == Route::kPerceptronPtime) {
      reason = MsrPerceptron(Linear(), x_);
    } else {
      reason = MsrTreeEnsemble(Trees(), x_, limits_);
    }
    json answer = ReasonJson(reason);
    ApplyBound(answer, reason);
    return answer;
  }

  json Cc(Route route) {
    Rational value;
    if (route == Route::kOracle) {
      value = OracleCompletionCount(model_, x_, Subset(), limits_);
    } else if (route == Route::kPseudopoly) {
      value = CcPerceptronPseudopoly(Linear(), x_, Subset(), limits_);
    } else {
      value = CcTreeEnsemble(Trees(), x_, Subset(), limits_);
    }
    return json{{"value", ToString(value)}};
  }

  Rational ExpectedValue(Route route, const ProductDistribution& d) {
    switch (route) {
      case Route::kOracle:
        return OracleExpectedValue(model_, d, limits_);
      case Route::kPseudopoly:
        return HSumPerceptron(Linear(), x_, d, limits_)[0];
      case Route::kTreePtime:
      case Route::kTreeFpt:
        return ExpectedValueTreeEnsemble(Trees(), d, limits_);
      default:
        return Expectation(model_, d, ExpectationBackend::kAuto, limits_);
    }
  }

  json Expect(Route route) {
    return json{{"value", ToString(ExpectedValue(route, Distribution()))}};
  }

  json Shap(Route route) {
    const ProductDistribution d = Distribution();
    if (request_.feature) {
      const int i = *request_.feature;
      Rational value;
      switch (route) {
        case Route::kOracle:
          value = OracleShap(model_, x_, i, d, limits_);
          break;
        case Route::kPseudopoly:
          value = ShapPerceptronPseudopoly(Linear(), x_, i, d, limits_);
          break;
        case Route::kEnumeration:
          value = ShapEnum(model_, x_, i, d, ExpectationBackend::kAuto,
                           limits_);
          break;
        default:
          value = ShapInterpolation(model_, x_, i, d,
                                    ExpectationBackend::kAuto, limits_);
      }
      return json{{"feature", i}, {"value", ToString(value)}};
    }
    std::vector<Rational> values;
    switch (route) {
      case Route::kOracle:
        values = OracleShapAll(model_, x_, d, limits_);
        break;
      case Route::kPseudopoly:
        values = ShapPerceptronPseudopolyAll(Linear(), x_, d, limits_);
        break;
      case Route::kEnumeration:
        values = ShapEnumAll(model_, x_, d, ExpectationBackend::kAuto, limits_);
        break;
      default:
        values = ShapInterpolationAll(model_, x_, d, ExpectationBackend::kAuto,
                                      limits_);
    }
    const Rational expected = ExpectedValue(route, d);
    Rational residual = Rational(Evaluate(model_, x_) ? 1 : 0) - expected;
    json list = json::array();
    for (const Rational& v : values) {
      residual -= v;
      list.push_back(ToString(v));
    }
    return json{{"values", list},
                {"expected", ToString(expected)},
                {"prediction", Evaluate(model_, x_) ? 1 : 0},
                {"efficiency_residual", ToString(residual)}};
  }

  json Enumerate(Route route) {
    std::vector<FeatureSubset> sets;
    if (route == Route::kOracle) {
      sets = OracleMinimalContrastive(model_, x_, limits_);
    } else if (route == Route::kTreePtime || route == Route::kTreeFpt) {
      sets = EnumerateCandidateContrastive(Trees(), x_, request_.minimal_only,
                                           limits_);
    } else {
      Incompatible(request_.algorithm, request_.kind, model_kind_);
    }
    json list = json::array();
    for (const FeatureSubset& s : sets) list.push_back(SubsetJson(s));
    return json{{"count", sets.size()}, {"sets", list}};
  }

  json Greedy(Route route) {
    std::vector<int> order = request_.order;
    if (order.empty()) {
      order.resize(n_);
      std::iota(order.begin(), order.end(), 0);
    }
    int calls = 0;
    const FeatureSubset witness = GreedySubsetMinimalSufficient(
        n_, order, [&](const FeatureSubset& s) {
          ++calls;
          return IsSufficient(route, s);
        });
    return json{{"witness", SubsetJson(witness)}, {"csr_calls", calls}};
  }

  const Model& model_;
  const QueryRequest& request_;
  const Limits& limits_;
  int n_;
  ModelKind model_kind_;
  BooleanInstance x_;
  std::optional<Ensemble> ensemble_;
  QueryResult result_;
};

json PayloadObject(const QueryResult& result) {
  return json{{"query", QueryKindName(result.kind)},
              {"algorithm", result.algorithm},
              {"answer", json::parse(result.answer_json)},
              {"affirmative", result.affirmative},
              {"warnings", result.warnings}};
}

}  // namespace

const char* QueryKindName(QueryKind kind) {
  switch (kind) {
    case QueryKind::kCsr:
      return "csr";
    case QueryKind::kMcr:
      return "mcr";
    case QueryKind::kMsr:
      return "msr";
    case QueryKind::kCc:
      return "cc";
    case QueryKind::kShap:
      return "shap";
    case QueryKind::kExpect:
      return "expect";
    case QueryKind::kEnumerateContrastive:
      return "enumerate-contrastive";
    case QueryKind::kGreedy:
      return "greedy";
  }
  return "unknown";
}

QueryKind ParseQueryKind(const std::string& name) {
  for (QueryKind kind :
       {QueryKind::kCsr, QueryKind::kMcr, QueryKind::kMsr, QueryKind::kCc,
        QueryKind::kShap, QueryKind::kExpect,
        QueryKind::kEnumerateContrastive, QueryKind::kGreedy}) {
    if (name == QueryKindName(kind)) return kind;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown query '" + name + "'");
}

std::string QueryResult::PayloadJson() const {
  return PayloadObject(*this).dump();
}

std::string QueryResult::ToJson() const {
  json out = PayloadObject(*this);
  out["wall_seconds"] = wall_seconds;
  return out.dump();
}

QueryRequest ParseQueryRequest(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("request: ") + e.what());
  }
  if (!in.is_object()) Fail(ErrorCode::kParse, "request must be an object");
  QueryRequest request;
  try {
    for (auto& [key, value] : in.items()) {
      if (key == "query") {
        request.kind = ParseQueryKind(value.get<std::string>());
      } else if (key == "instance") {
        request.instance = value.get<std::string>();
      } else if (key == "subset") {
        request.subset = value.get<std::vector<int>>();
      } else if (key == "bound") {
        if (!value.is_null()) request.bound = value.get<int>();
      } else if (key == "feature") {
        if (!value.is_null()) request.feature = value.get<int>();
      } else if (key == "distribution") {
        if (value.is_string()) {
          if (value.get<std::string>() != "uniform") {
            Fail(ErrorCode::kParse, "distribution must be 'uniform' or a list");
          }
        } else {
          for (const json& p : value) {
            request.distribution.push_back(
                p.is_string() ? p.get<std::string>() : p.dump());
          }
        }
      } else if (key == "order") {
        request.order = value.get<std::vector<int>>();
      } else if (key == "minimal_only") {
        request.minimal_only = value.get<bool>();
      } else if (key == "algorithm") {
        request.algorithm = value.get<std::string>();
      } else {
        Fail(ErrorCode::kParse, "request: unknown field '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("request: ") + e.what());
  }
  if (!in.contains("query")) Fail(ErrorCode::kParse, "request: missing query");
  return request;
}

std::string SerializeQueryRequest(const QueryRequest& request) {
  json out{{"query", QueryKindName(request.kind)},
           {"instance", request.instance},
           {"algorithm", request.algorithm}};
  if (!request.subset.empty()) out["subset"] = request.subset;
  if (request.bound) out["bound"] = *request.bound;
  if (request.feature) out["feature"] = *request.feature;
  if (!request.distribution.empty()) out["distribution"] = request.distribution;
  if (!request.order.empty()) out["order"] = request.order;
  if (request.minimal_only) out["minimal_only"] = true;
  return out.dump();
}

QueryResult RunQuery(const Model& model, const QueryRequest& request,
                     const Limits& limits) {
  const auto start = std::chrono::steady_clock::now();
  QueryResult result = Runner(model, request, limits).Run();
  result.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return result;
}

}  // namespace xplain
