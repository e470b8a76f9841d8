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

#include <algorithm>

#include "harness.h"
#include "xplain/oracle.h"
#include "xplain/transforms.h"
#include "xplain/tree_explain.h"

namespace xplain::acceptance {

Outcome Duality() {
  Tally tally;
  int instances = 0;
  long members = 0;
  for (const Case& c : Corpus()) {
    const auto* e = std::get_if<Ensemble>(&c.model);
    if (!e) continue;
    ++instances;
    const std::string id = Describe(c);
    const std::vector<FeatureSubset> family =
        EnumerateCandidateContrastive(*e, c.x);
    members += family.size();
    const FeatureSubset hitting =
        MinimumHittingSet(family, c.x.size());
    tally.Check(hitting.size() == OracleMinSufficient(c.model, c.x).size,
                "hitting set size " + id);
    tally.Check(CsrTreeEnsemble(*e, c.x, hitting), "hitting set csr " + id);
    for (const FeatureSubset& s : family) {
      tally.Check(OracleIsContrastive(c.model, c.x, s), "contrastive " + id);
    }
    const std::vector<FeatureSubset> minimal =
        EnumerateCandidateContrastive(*e, c.x, /*minimal_only=*/true);
    const bool label = e->Evaluate(c.x);
    for (const FeatureSubset& s : minimal) {
      BooleanInstance flipped = c.x;
      for (int i : s) flipped = flipped.WithBit(i, !c.x[i]);
      tally.Check(e->Evaluate(flipped) != label, "flip witness " + id);
    }
    tally.Check(minimal == OracleMinimalContrastive(c.model, c.x),
                "minimal members " + id);
  }
  return tally.Result(std::to_string(instances) + " tree ensembles, " +
                      std::to_string(members) + " candidate sets");
}

}  // namespace xplain::acceptance
