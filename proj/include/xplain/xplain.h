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

// C interface to the explanation library.
//
// Models are opaque handles. Every fallible call returns an xpl_status and,
// on failure, records a message readable through xpl_last_error() on the
// same thread. Strings returned through char** out-parameters are owned by
// the caller and released with xpl_string_free().

#ifndef XPLAIN_XPLAIN_H_
#define XPLAIN_XPLAIN_H_

#include <stdint.h>

#if defined(_WIN32)
#define XPL_API __declspec(dllexport)
#else
#define XPL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xpl_status {
  XPL_OK = 0,
  XPL_ERR_INPUT_SHAPE = 1,
  XPL_ERR_INVALID_ARGUMENT = 2,
  XPL_ERR_UNSUPPORTED_MODEL = 3,
  XPL_ERR_RESOURCE_EXCEEDED = 4,
  XPL_ERR_INFEASIBLE = 5,
  XPL_ERR_PARSE = 6,
  XPL_ERR_INVALID_INSTANCE = 7,
  XPL_ERR_INTERNAL = 8,
} xpl_status;

typedef enum xpl_base_kind {
  XPL_BASE_TREE = 0,
  XPL_BASE_PERCEPTRON = 1,
} xpl_base_kind;

typedef struct xpl_model xpl_model;

typedef struct xpl_limits {
  int oracle_max_features;
  int shap_oracle_max_features;
  int64_t pseudopoly_budget;
  int shap_enum_max_features;
  int threads;
} xpl_limits;

XPL_API const char* xpl_version(void);
XPL_API const char* xpl_status_name(xpl_status status);
// Message of the last failed call on this thread; "" when none.
XPL_API const char* xpl_last_error(void);
XPL_API void xpl_string_free(char* text);

// Built-in defaults overridden by XPLAIN_* environment variables.
XPL_API void xpl_limits_default(xpl_limits* out);

XPL_API xpl_status xpl_model_parse(const char* text, xpl_model** out);
XPL_API void xpl_model_free(xpl_model* model);
XPL_API xpl_status xpl_model_serialize(const xpl_model* model, char** out);
XPL_API xpl_status xpl_model_feature_count(const xpl_model* model, int* out);
// "tree", "perceptron", "tree-ensemble", "perceptron-ensemble" or
// "mixed-ensemble"; the pointer is static.
XPL_API xpl_status xpl_model_kind(const xpl_model* model, const char** out);
// JSON array of {"message", "location"} objects; "[]" for a valid model.
XPL_API xpl_status xpl_model_validate(const xpl_model* model, char** out);
// instance is a string of '0'/'1' characters.
XPL_API xpl_status xpl_model_evaluate(const xpl_model* model,
                                      const char* instance, int* out);

// Runs a JSON query request and writes the JSON result. affirmative may be
// NULL; otherwise it receives 1 for a positive answer and 0 for "No".
XPL_API xpl_status xpl_query(const xpl_model* model, const char* request_json,
                             const xpl_limits* limits, char** result_json,
                             int* affirmative);

XPL_API xpl_status xpl_condition(const xpl_model* model, const char* instance,
                                 const int* subset, int subset_size,
                                 xpl_model** out);
XPL_API xpl_status xpl_negate(const xpl_model* model, xpl_model** out);
XPL_API xpl_status xpl_indicator(const char* instance, const int* subset,
                                 int subset_size, xpl_base_kind kind,
                                 xpl_model** out);
// Compiles a DNF (is_cnf = 0) or CNF text into a majority ensemble.
XPL_API xpl_status xpl_compile_normal_form(const char* text, int is_cnf,
                                           xpl_base_kind kind,
                                           xpl_model** out);

// Builds a reduction gadget. kind is "ssp", "kssp", "kgssp-star", "gssp" or
// "clique"; params_json carries the source instance. The JSON result holds
// the model text, the instance, the subset or bound, and the brute-force
// answer of the source problem.
XPL_API xpl_status xpl_gadget(const char* kind, const char* params_json,
                              char** result_json);

// Seeded instance generation; result is {"model": text, "instance": bits}.
XPL_API xpl_status xpl_generate(const char* params_json, char** result_json);

// Runs a benchmark suite and writes CSV.
XPL_API xpl_status xpl_bench(const char* params_json, const xpl_limits* limits,
                             char** csv);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // XPLAIN_XPLAIN_H_
