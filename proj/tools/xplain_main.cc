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

// Command-line front end. Links only the C interface.
//
// Exit status: 0 when the query was answered affirmatively (or the command
// succeeded), 1 when the answer is "No" or a model is invalid, 2 on errors.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "xplain/xplain.h"

namespace {

using nlohmann::json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct Failure {
  std::string message;
};

struct ModelDeleter {
  void operator()(xpl_model* m) const { xpl_model_free(m); }
};
using ModelPtr = std::unique_ptr<xpl_model, ModelDeleter>;

struct StringDeleter {
  void operator()(char* s) const { xpl_string_free(s); }
};

void Check(xpl_status status) {
  if (status != XPL_OK) {
    throw Failure{std::string(xpl_status_name(status)) + ": " +
                  xpl_last_error()};
  }
}

std::string Take(char* text) {
  std::unique_ptr<char, StringDeleter> owned(text);
  return owned ? std::string(owned.get()) : std::string();
}

std::string ReadFile(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw Failure{"cannot read " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Failure{"cannot write " + path};
  out << text;
}

ModelPtr LoadModel(const std::string& path) {
  xpl_model* raw = nullptr;
  Check(xpl_model_parse(ReadFile(path).c_str(), &raw));
  return ModelPtr(raw);
}

std::string Serialize(const xpl_model* model) {
  char* text = nullptr;
  Check(xpl_model_serialize(model, &text));
  return Take(text);
}

xpl_base_kind BaseKind(const std::string& name) {
  if (name == "tree") return XPL_BASE_TREE;
  if (name == "perceptron") return XPL_BASE_PERCEPTRON;
  throw Failure{"base kind must be 'tree' or 'perceptron'"};
}

xpl_limits Limits(int threads) {
  xpl_limits limits;
  xpl_limits_default(&limits);
  if (threads > 0) limits.threads = threads;
  return limits;
}

// Options shared by the query subcommand.
struct QueryOptions {
  std::string model;
  std::string request_file;
  std::string kind;
  std::string instance;
  std::vector<int> subset;
  std::optional<int> bound;
  std::optional<int> feature;
  std::string distribution;
  std::vector<int> order;
  bool minimal_only = false;
  std::string algorithm = "auto";
  int threads = 0;
  bool pretty = false;
};

int RunQueryCommand(const QueryOptions& o) {
  ModelPtr model = LoadModel(o.model);
  json request;
  if (!o.request_file.empty()) {
    request = json::parse(ReadFile(o.request_file));
  } else {
    if (o.kind.empty() || o.instance.empty()) {
      throw Failure{"--kind and --instance are required without --request"};
    }
    request = {{"query", o.kind},
               {"instance", o.instance},
               {"algorithm", o.algorithm}};
    if (!o.subset.empty()) request["subset"] = o.subset;
    if (o.bound) request["bound"] = *o.bound;
    if (o.feature) request["feature"] = *o.feature;
    if (!o.distribution.empty() && o.distribution != "uniform") {
      std::string cleaned = o.distribution;
      for (char& c : cleaned) {
        if (c == ',') c = ' ';
      }
      std::istringstream in(cleaned);
      std::vector<std::string> values;
      for (std::string v; in >> v;) values.push_back(v);
      request["distribution"] = values;
    }
    if (!o.order.empty()) request["order"] = o.order;
    if (o.minimal_only) request["minimal_only"] = true;
  }
  const xpl_limits limits = Limits(o.threads);
  char* result = nullptr;
  int affirmative = 0;
  Check(xpl_query(model.get(), request.dump().c_str(), &limits, &result,
                  &affirmative));
  const json parsed = json::parse(Take(result));
  for (const auto& warning : parsed.value("warnings", json::array())) {
    std::cerr << "warning: " << warning.get<std::string>() << "\n";
  }
  std::cout << parsed.dump(o.pretty ? 2 : -1) << "\n";
  return affirmative ? kExitYes : kExitNo;
}

int RunValidate(const std::string& path) {
  xpl_model* raw = nullptr;
  const xpl_status status = xpl_model_parse(ReadFile(path).c_str(), &raw);
  if (status == XPL_ERR_PARSE || status == XPL_ERR_INPUT_SHAPE ||
      status == XPL_ERR_INVALID_ARGUMENT) {
    std::cout << "invalid: " << xpl_last_error() << "\n";
    return kExitNo;
  }
  Check(status);
  ModelPtr model(raw);
  char* text = nullptr;
  Check(xpl_model_validate(model.get(), &text));
  const json diagnostics = json::parse(Take(text));
  if (!diagnostics.empty()) {
    for (const auto& d : diagnostics) {
      std::cout << "invalid: " << d["location"].get<std::string>() << ": "
                << d["message"].get<std::string>() << "\n";
    }
    return kExitNo;
  }
  int n = 0;
  const char* kind = nullptr;
  Check(xpl_model_feature_count(model.get(), &n));
  Check(xpl_model_kind(model.get(), &kind));
  std::cout << "valid: " << kind << " over " << n << " features\n";
  return kExitYes;
}

json Numbers(const std::vector<long long>& values) { return values; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact explanations for decision trees, perceptrons and their "
               "voting ensembles"};
  app.set_version_flag("--version", std::string(xpl_version()));
  app.require_subcommand(1);

  // query
  QueryOptions q;
  auto* query = app.add_subcommand("query", "Answer an explanation query");
  query->add_option("-m,--model", q.model, "Model file ('-' for stdin)")
      ->required();
  query->add_option("-r,--request", q.request_file, "JSON request file");
  query->add_option("-q,--kind", q.kind,
                    "csr|mcr|msr|cc|shap|expect|enumerate-contrastive|greedy");
  query->add_option("-x,--instance", q.instance, "Instance as a 0/1 string");
  query->add_option("-s,--subset", q.subset, "Feature subset, e.g. 0,2,5")
      ->delimiter(',');
  query->add_option("-d,--bound", q.bound, "Size bound for mcr/msr");
  query->add_option("-i,--feature", q.feature, "Feature for shap");
  query->add_option("-p,--distribution", q.distribution,
                    "'uniform' or one rational per feature");
  query->add_option("--order", q.order, "Feature order for greedy")
      ->delimiter(',');
  query->add_flag("--minimal-only", q.minimal_only,
                  "Keep only subset-minimal contrastive sets");
  query->add_option("-a,--algorithm", q.algorithm,
                    "auto|oracle|fpt|pseudopoly|interpolation|enumeration");
  query->add_option("-t,--threads", q.threads, "Worker threads");
  query->add_flag("--pretty", q.pretty, "Indent the JSON result");

  // validate
  std::string validate_model;
  auto* validate = app.add_subcommand("validate", "Check a model file");
  validate->add_option("model", validate_model, "Model file")->required();

  // eval
  std::string eval_model, eval_instance;
  auto* eval = app.add_subcommand("eval", "Evaluate a model on one instance");
  eval->add_option("-m,--model", eval_model, "Model file")->required();
  eval->add_option("-x,--instance", eval_instance, "Instance")->required();

  // transform
  auto* transform = app.add_subcommand("transform", "Build derived models");
  transform->require_subcommand(1);
  std::string t_model, t_instance, t_output, t_base = "tree", t_formula;
  std::vector<int> t_subset;
  auto* condition = transform->add_subcommand("condition", "Fix x on a subset");
  condition->add_option("-m,--model", t_model, "Model file")->required();
  condition->add_option("-x,--instance", t_instance, "Instance")->required();
  condition->add_option("-s,--subset", t_subset, "Subset")->delimiter(',');
  auto* negate = transform->add_subcommand("negate", "Complement a model");
  negate->add_option("-m,--model", t_model, "Model file")->required();
  auto* indicator =
      transform->add_subcommand("indicator", "Model accepting y with y_S = x_S");
  indicator->add_option("-x,--instance", t_instance, "Instance")->required();
  indicator->add_option("-s,--subset", t_subset, "Subset")->delimiter(',');
  indicator->add_option("-b,--base", t_base, "tree|perceptron");
  auto* dnf = transform->add_subcommand("dnf", "Compile a DNF file");
  dnf->add_option("formula", t_formula, "DNF file")->required();
  dnf->add_option("-b,--base", t_base, "tree|perceptron");
  auto* cnf = transform->add_subcommand("cnf", "Compile a CNF file");
  cnf->add_option("formula", t_formula, "CNF file")->required();
  cnf->add_option("-b,--base", t_base, "tree|perceptron");
  for (auto* sub : {condition, negate, indicator, dnf, cnf}) {
    sub->add_option("-o,--output", t_output, "Output file (default stdout)");
  }

  // gadget
  auto* gadget = app.add_subcommand("gadget", "Build a reduction gadget");
  gadget->require_subcommand(1);
  std::vector<long long> g_z, g_u, g_v;
  std::vector<int> g_allowed;
  long long g_target = 1;
  int g_k = 0;
  std::string g_graph, g_output;
  auto* ssp = gadget->add_subcommand("ssp", "Subset sum to sufficiency");
  ssp->add_option("-z", g_z, "Positive integers")->delimiter(',')->required();
  ssp->add_option("-T,--target", g_target, "Target")->required();
  auto* kssp = gadget->add_subcommand("kssp", "k-subset sum to MCR");
  kssp->add_option("-z", g_z, "Positive integers")->delimiter(',')->required();
  kssp->add_option("-k", g_k, "Subset size")->required();
  kssp->add_option("-T,--target", g_target, "Target")->required();
  auto* kgssp = gadget->add_subcommand("kgssp-star", "Constrained GSSP to MSR");
  kgssp->add_option("-z", g_z, "Positive integers")->delimiter(',')->required();
  kgssp->add_option("--allowed", g_allowed, "Allowed set S0")
      ->delimiter(',')
      ->required();
  kgssp->add_option("-k", g_k, "Size")->required();
  kgssp->add_option("-T,--target", g_target, "Target")->required();
  auto* gssp = gadget->add_subcommand("gssp", "Generalized subset sum to MSR");
  gssp->add_option("-u", g_u, "Chosen values")->delimiter(',')->required();
  gssp->add_option("-v", g_v, "Adversary values")->delimiter(',')->required();
  gssp->add_option("-T,--target", g_target, "Target")->required();
  auto* clique = gadget->add_subcommand("clique", "Multicolored clique to CSR");
  clique->add_option("graph", g_graph, "Graph file")->required();
  for (auto* sub : {ssp, kssp, kgssp, gssp, clique}) {
    sub->add_option("-o,--output", g_output, "Output file (default stdout)");
  }

  // gen
  json gen_params = json::object();
  unsigned long long gen_seed = 1;
  std::string gen_class = "tree-ensemble", gen_model_out;
  int gen_n = 8, gen_k = 3, gen_m = 8, gen_w = 8;
  bool gen_weighted = false;
  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--class", gen_class,
                  "tree|tree-ensemble|perceptron|perceptron-ensemble");
  gen->add_option("-n", gen_n, "Features");
  gen->add_option("-k", gen_k, "Ensemble size");
  gen->add_option("-m", gen_m, "Leaves per tree (upper bound)");
  gen->add_option("-W,--weight-bound", gen_w, "Perceptron weight bound");
  gen->add_flag("--weighted", gen_weighted, "Weighted voting");
  gen->add_option("-o,--model-out", gen_model_out,
                  "Write the model here and print only the instance");

  // bench
  std::string b_suite, b_output;
  unsigned long long b_seed = 1;
  std::vector<int> b_values;
  int b_n = 30, b_k = 2, b_m = 8, b_repeats = 3, b_threads = 0;
  double b_budget = 120;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite (CSV)");
  bench->add_option("suite", b_suite,
                    "scaling-in-m|scaling-in-k|pseudopoly-in-W|oracle-vs-fpt")
      ->required();
  bench->add_option("--seed", b_seed, "Seed");
  bench->add_option("--values", b_values, "Sweep values")->delimiter(',');
  bench->add_option("-n", b_n, "Features");
  bench->add_option("-k", b_k, "Ensemble size");
  bench->add_option("-m", b_m, "Leaves per tree");
  bench->add_option("--repeats", b_repeats, "Repeats (fastest is kept)");
  bench->add_option("--budget", b_budget, "Wall-clock budget in seconds");
  bench->add_option("-t,--threads", b_threads, "Worker threads");
  bench->add_option("-o,--output", b_output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitYes : kExitError;
  }

  try {
    if (*query) return RunQueryCommand(q);
    if (*validate) return RunValidate(validate_model);
    if (*eval) {
      ModelPtr model = LoadModel(eval_model);
      int out = 0;
      Check(xpl_model_evaluate(model.get(), eval_instance.c_str(), &out));
      std::cout << out << "\n";
      return kExitYes;
    }
    if (*transform) {
      xpl_model* raw = nullptr;
      if (*condition) {
        ModelPtr model = LoadModel(t_model);
        Check(xpl_condition(model.get(), t_instance.c_str(), t_subset.data(),
                            static_cast<int>(t_subset.size()), &raw));
      } else if (*negate) {
        ModelPtr model = LoadModel(t_model);
        Check(xpl_negate(model.get(), &raw));
      } else if (*indicator) {
        Check(xpl_indicator(t_instance.c_str(), t_subset.data(),
                            static_cast<int>(t_subset.size()),
                            BaseKind(t_base), &raw));
      } else {
        Check(xpl_compile_normal_form(ReadFile(t_formula).c_str(),
                                      *cnf ? 1 : 0, BaseKind(t_base), &raw));
      }
      ModelPtr result(raw);
      WriteOutput(t_output, Serialize(result.get()));
      return kExitYes;
    }
    if (*gadget) {
      json params;
      std::string kind;
      if (*ssp) {
        kind = "ssp";
        params = {{"z", Numbers(g_z)}, {"target", g_target}};
      } else if (*kssp) {
        kind = "kssp";
        params = {{"z", Numbers(g_z)}, {"k", g_k}, {"target", g_target}};
      } else if (*kgssp) {
        kind = "kgssp-star";
        params = {{"z", Numbers(g_z)},
                  {"allowed", g_allowed},
                  {"k", g_k},
                  {"target", g_target}};
      } else if (*gssp) {
        kind = "gssp";
        params = {{"u", Numbers(g_u)}, {"v", Numbers(g_v)}, {"target", g_target}};
      } else {
        kind = "clique";
        params = {{"graph", ReadFile(g_graph)}};
      }
      char* out = nullptr;
      Check(xpl_gadget(kind.c_str(), params.dump().c_str(), &out));
      WriteOutput(g_output, Take(out));
      return kExitYes;
    }
    if (*gen) {
      gen_params = {{"seed", gen_seed},   {"class", gen_class},
                    {"n", gen_n},         {"k", gen_k},
                    {"m", gen_m},         {"weight_bound", gen_w},
                    {"weighted_voting", gen_weighted}};
      char* out = nullptr;
      Check(xpl_generate(gen_params.dump().c_str(), &out));
      const std::string text = Take(out);
      if (gen_model_out.empty()) {
        std::cout << text << "\n";
      } else {
        const json parsed = json::parse(text);
        WriteOutput(gen_model_out, parsed["model"].get<std::string>());
        std::cout << parsed["instance"].get<std::string>() << "\n";
      }
      return kExitYes;
    }
    if (*bench) {
      json params = {{"suite", b_suite}, {"seed", b_seed}, {"n", b_n},
                     {"k", b_k},         {"m", b_m},       {"repeats", b_repeats},
                     {"budget_seconds", b_budget}};
      if (!b_values.empty()) params["values"] = b_values;
      const xpl_limits limits = Limits(b_threads);
      char* csv = nullptr;
      Check(xpl_bench(params.dump().c_str(), &limits, &csv));
      WriteOutput(b_output, Take(csv));
      return kExitYes;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
