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

/* Compiles the public header as C and exercises a few calls. */
#include <stdio.h>
#include <string.h>

#include "xplain/xplain.h"

int main(void) {
  xpl_model* model = NULL;
  char* text = NULL;
  int out = -1;
  const char* source =
      "xplain-model 1\nfeatures 1\nperceptron\n  weights 1\n  bias -1/2\nend\n";
  if (xpl_model_parse(source, &model) != XPL_OK) return 1;
  if (xpl_model_evaluate(model, "1", &out) != XPL_OK || out != 1) return 1;
  if (xpl_model_serialize(model, &text) != XPL_OK) return 1;
  if (strcmp(text, source) != 0) return 1;
  xpl_string_free(text);
  xpl_model_free(model);
  printf("ok %s\n", xpl_version());
  return 0;
}
