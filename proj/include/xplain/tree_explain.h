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

#ifndef XPLAIN_TREE_EXPLAIN_H_
#define XPLAIN_TREE_EXPLAIN_H_

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "xplain/config.h"
#include "xplain/model.h"
#include "xplain/rational.h"
#include "xplain/reason.h"

namespace xplain {

// A root-to-leaf path: the partial assignment it tests (sorted by feature)
// and the label it ends in.
struct PathDescriptor {
  int tree_index = 0;
  int leaf = 0;
  std::vector<std::pair<int, bool>> assignment;
  bool label = false;
};

// Paths of every reachable leaf, in leaf-id order.
std::vector<PathDescriptor> TreePaths(const DecisionTree& tree,
                                      int tree_index = 0);

// Two paths match when no feature is fixed to 0 by one and to 1 by the other.
bool PathsMatch(const PathDescriptor& a, const PathDescriptor& b);

// A partial assignment standing for all of its completions.
struct Cylinder {
  FeatureSubset features;
  std::vector<uint8_t> values;  // parallel to features.indices()
  bool label = true;

  // Probability of the cylinder; free features contribute a factor of one.
  Rational Mass(const ProductDistribution& distribution) const;
  bool Contains(const BooleanInstance& z) const;
};

// Checks whether fixing x on `subset` forces f(x). Conditions f on x_S,
// negates it when f(x) = 1 so the search target is always a positive point,
// then looks for one matching leaf per tree whose votes reach the threshold.
// Worst case O(m^k) leaf tuples; search stops at the first hit.
bool CsrTreeEnsemble(const Ensemble& ensemble, const BooleanInstance& x,
                     const FeatureSubset& subset, const Limits& limits = {});

// Linear-time check for a single tree: every leaf reachable after
// conditioning must carry the label of x.
bool CsrSingleTree(const DecisionTree& tree, const BooleanInstance& x,
                   const FeatureSubset& subset);

// For every matching leaf tuple whose votes produce the opposite of f(x),
// emits the features on which the merged assignment disagrees with x. The
// result contains every subset-minimal contrastive reason and only
// contrastive sets. With `minimal_only`, members that strictly contain
// another member are dropped, leaving exactly the subset-minimal ones.
std::vector<FeatureSubset> EnumerateCandidateContrastive(
    const Ensemble& ensemble, const BooleanInstance& x,
    bool minimal_only = false, const Limits& limits = {});

// nullopt when f is constant.
std::optional<Reason> MinContrastiveTreeEnsemble(const Ensemble& ensemble,
                                                 const BooleanInstance& x,
                                                 const Limits& limits = {});
bool McrTreeEnsemble(const Ensemble& ensemble, const BooleanInstance& x,
                     int bound, const Limits& limits = {});

// Exact minimum-cardinality hitting set by branch and bound; among optimal
// sets the lexicographically-first one is returned. Raises kInfeasible when
// the family contains the empty set.
FeatureSubset MinimumHittingSet(const std::vector<FeatureSubset>& family,
                                int universe);

// Minimum hitting set of the candidate contrastive family.
Reason MsrTreeEnsemble(const Ensemble& ensemble, const BooleanInstance& x,
                       const Limits& limits = {});

using SufficiencyCheck = std::function<bool(const FeatureSubset&)>;

// Starts from all features and drops each feature in `order` whenever the
// remainder stays sufficient. Exactly n calls to `is_sufficient`.
FeatureSubset GreedySubsetMinimalSufficient(int feature_count,
                                            std::span<const int> order,
                                            const SufficiencyCheck& is_sufficient);
FeatureSubset GreedySubsetMinimalSufficient(const Ensemble& ensemble,
                                            const BooleanInstance& x,
                                            std::span<const int> order,
                                            const Limits& limits = {});

// Disjoint cylinders covering exactly f^-1(1): one per matching full leaf
// tuple whose votes give 1.
std::vector<Cylinder> CylinderDecomposition(const Ensemble& ensemble,
                                            const Limits& limits = {});

Rational ExpectedValueTreeEnsemble(const Ensemble& ensemble,
                                   const ProductDistribution& distribution,
                                   const Limits& limits = {});

// Fraction of completions of the free features that keep f(x), by cylinder
// decomposition of the conditioned ensemble. Polynomial in (n, m) for fixed k.
Rational CcTreeEnsemble(const Ensemble& ensemble, const BooleanInstance& x,
                        const FeatureSubset& subset, const Limits& limits = {});

}  // namespace xplain

#endif  // XPLAIN_TREE_EXPLAIN_H_
