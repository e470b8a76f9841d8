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

#ifndef XPLAIN_MODEL_FORMAT_H_
#define XPLAIN_MODEL_FORMAT_H_

#include <string>
#include <string_view>

#include "xplain/gadgets.h"
#include "xplain/model.h"
#include "xplain/transforms.h"

namespace xplain {

inline constexpr int kModelSchemaVersion = 1;

struct ModelDocument {
  Model model;
  std::string name;
  std::string provenance;
  int schema_version = kModelSchemaVersion;

  int feature_count() const { return FeatureCount(model); }
};

// Line-oriented model text; see docs/formats.md. Errors are kParse with
// messages of the form "line N: ...", including structural problems found
// by Validate().
ModelDocument ParseModel(std::string_view text);

// Canonical text: fixed directive order, reduced rationals, tree nodes
// renumbered in preorder from the root.
std::string SerializeModel(const ModelDocument& document);
std::string SerializeModel(const Model& model);

// "features N" followed by one term (or clause) per line of signed 0-based
// literals; "-0" negates feature 0. '#' starts a comment.
NormalForm ParseNormalForm(std::string_view text, bool is_cnf);
std::string SerializeNormalForm(const NormalForm& form);

// "colors K" (optional), "v <id> <color>" and "e <u> <v>" lines. Vertex ids
// must be 0..V-1.
ColoredGraph ParseGraph(std::string_view text);
std::string SerializeGraph(const ColoredGraph& graph);

// "uniform" or n whitespace- or comma-separated rationals.
ProductDistribution ParseDistribution(std::string_view text,
                                      int feature_count);
std::string SerializeDistribution(const ProductDistribution& distribution);

}  // namespace xplain

#endif  // XPLAIN_MODEL_FORMAT_H_
