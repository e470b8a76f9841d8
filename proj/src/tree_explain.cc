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

#include "xplain/tree_explain.h"

#include <algorithm>
#include <set>

#include "leaf_tuples.h"
#include "xplain/error.h"
#include "xplain/transforms.h"

namespace xplain {

namespace {

void RequireTrees(const Ensemble& ensemble) {
  if (!ensemble.AllTrees()) {
    Fail(ErrorCode::kUnsupportedModel,
         "operation requires an ensemble of decision trees");
  }
}

void CollectPaths(const DecisionTree& tree, int node,
                  std::vector<std::pair<int, bool>>& prefix, int tree_index,
                  std::vector<PathDescriptor>& out) {
  const TreeNode& current = tree.node(node);
  if (current.is_leaf()) {
    PathDescriptor path;
    path.tree_index = tree_index;
    path.leaf = node;
    path.assignment = prefix;
    std::sort(path.assignment.begin(), path.assignment.end());
    path.label = current.label;
    out.push_back(std::move(path));
    return;
  }
  prefix.emplace_back(current.feature, false);
  CollectPaths(tree, current.if_zero, prefix, tree_index, out);
  prefix.back().second = true;
  CollectPaths(tree, current.if_one, prefix, tree_index, out);
  prefix.pop_back();
}

// Dense bitset over the hitting-set universe.
class Bits {
 public:
  explicit Bits(int universe) : words_((universe + 63) / 64, 0) {}
  void Set(int i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  bool Test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  bool IsSubsetOf(const Bits& other) const {
    for (size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & ~other.words_[w]) return false;
    }
    return true;
  }

 private:
  std::vector<uint64_t> words_;
};

class HittingSetSolver {
 public:
  HittingSetSolver(std::vector<std::vector<int>> sets, int universe)
      : sets_(std::move(sets)), universe_(universe) {}

  // True if `chosen` can be extended by at most `budget` elements, none of
  // them forbidden, into a hitting set.
  bool Feasible(const std::vector<int>& chosen,
                const std::vector<uint8_t>& forbidden, int budget) {
    std::vector<uint8_t> in(universe_, 0);
    for (int e : chosen) in[e] = 1;
    std::vector<int> unhit;
    for (int s = 0; s < static_cast<int>(sets_.size()); ++s) {
      bool hit = false;
      for (int e : sets_[s]) hit = hit || in[e];
      if (!hit) unhit.push_back(s);
    }
    std::vector<uint8_t> banned = forbidden;
    return Search(unhit, banned, budget);
  }

 private:
  bool Search(const std::vector<int>& unhit, std::vector<uint8_t>& banned,
              int budget) {
    if (unhit.empty()) return true;
    if (budget == 0) return false;
    // Pick the unhit set with fewest usable elements; bound by a greedy
    // packing of pairwise disjoint unhit sets.
    int pick = -1;
    int pick_size = INT32_MAX;
    std::vector<uint8_t> used(universe_, 0);
    int packing = 0;
    for (int s : unhit) {
      int usable = 0;
      bool disjoint = true;
      for (int e : sets_[s]) {
        if (banned[e]) continue;
        ++usable;
        if (used[e]) disjoint = false;
      }
      if (usable == 0) return false;
      if (usable < pick_size) {
        pick_size = usable;
        pick = s;
      }
      if (disjoint) {
        ++packing;
        for (int e : sets_[s]) {
          if (!banned[e]) used[e] = 1;
        }
      }
    }
    if (packing > budget) return false;
    std::vector<int> newly_banned;
    bool found = false;
    for (int e : sets_[pick]) {
      if (banned[e]) continue;
      std::vector<int> rest;
      for (int s : unhit) {
        if (!std::binary_search(sets_[s].begin(), sets_[s].end(), e)) {
          rest.push_back(s);
        }
      }
      if (Search(rest, banned, budget - 1)) {
        found = true;
        break;
      }
      banned[e] = 1;
      newly_banned.push_back(e);
    }
    for (int e : newly_banned) banned[e] = 0;
    return found;
  }

  std::vector<std::vector<int>> sets_;
  int universe_;
};

std::vector<FeatureSubset> KeepMinimal(std::vector<FeatureSubset> family,
                                       int universe) {
  std::sort(family.begin(), family.end(),
            [](const FeatureSubset& a, const FeatureSubset& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::vector<FeatureSubset> kept;
  std::vector<Bits> kept_bits;
  for (const FeatureSubset& s : family) {
    Bits bits(universe);
    for (int e : s) bits.Set(e);
    bool dominated = false;
    for (const Bits& k : kept_bits) {
      if (k.IsSubsetOf(bits)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      kept.push_back(s);
      kept_bits.push_back(std::move(bits));
    }
  }
  return kept;
}

int UniverseOf(const std::vector<FeatureSubset>& family, int universe) {
  for (const FeatureSubset& s : family) {
    if (!s.empty()) universe = std::max(universe, s.indices().back() + 1);
  }
  return universe;
}

}  // namespace

std::vector<PathDescriptor> TreePaths(const DecisionTree& tree,
                                      int tree_index) {
  std::vector<PathDescriptor> paths;
  std::vector<std::pair<int, bool>> prefix;
  CollectPaths(tree, tree.root(), prefix, tree_index, paths);
  std::sort(paths.begin(), paths.end(),
            [](const PathDescriptor& a, const PathDescriptor& b) {
              return a.leaf < b.leaf;
            });
  return paths;
}

bool PathsMatch(const PathDescriptor& a, const PathDescriptor& b) {
  auto i = a.assignment.begin();
  auto j = b.assignment.begin();
  while (i != a.assignment.end() && j != b.assignment.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      if (i->second != j->second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

Rational Cylinder::Mass(const ProductDistribution& distribution) const {
  Rational mass = 1;
  for (int idx = 0; idx < features.size(); ++idx) {
    mass *= distribution.Probability(features.indices()[idx], values[idx] != 0);
  }
  return mass;
}

bool Cylinder::Contains(const BooleanInstance& z) const {
  for (int idx = 0; idx < features.size(); ++idx) {
    if (z[features.indices()[idx]] != (values[idx] != 0)) return false;
  }
  return true;
}

bool CsrTreeEnsemble(const Ensemble& ensemble, const BooleanInstance& x,
                     const FeatureSubset& subset, const Limits& limits) {
  RequireTrees(ensemble);
  CheckInstance(x, ensemble.feature_count());
  subset.CheckWithin(ensemble.feature_count());
  Ensemble conditioned = ConditionTreeEnsemble(ensemble, x, subset);
  if (ensemble.Evaluate(x)) conditioned = NegateEnsemble(conditioned);
  return internal::MatchingLeafTuples(conditioned, true, true, limits)
      .empty();
}

bool CsrSingleTree(const DecisionTree& tree, const BooleanInstance& x,
                   const FeatureSubset& subset) {
  CheckInstance(x, tree.feature_count());
  subset.CheckWithin(tree.feature_count());
  const bool label = tree.Evaluate(x);
  const DecisionTree conditioned = ConditionTree(tree, x, subset);
  for (int leaf : conditioned.LeafIds()) {
    if (conditioned.node(leaf).label != label) return false;
  }
  return true;
}

std::vector<FeatureSubset> EnumerateCandidateContrastive(
    const Ensemble& ensemble, const BooleanInstance& x, bool minimal_only,
    const Limits& limits) {
  RequireTrees(ensemble);
  const int n = ensemble.feature_count();
  CheckInstance(x, n);
  const bool label = ensemble.Evaluate(x);
  std::set<FeatureSubset> found;
  for (const auto& merged :
       internal::MatchingLeafTuples(ensemble, !label, false, limits)) {
    std::vector<int> flips;
    for (int i = 0; i < n; ++i) {
      if (merged[i] != -1 && (merged[i] != 0) != x[i]) flips.push_back(i);
    }
    found.insert(FeatureSubset::Of(std::move(flips)));
  }
  std::vector<FeatureSubset> family(found.begin(), found.end());
  if (!minimal_only) return family;
  std::vector<FeatureSubset> minimal = KeepMinimal(std::move(family), n);
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

std::optional<Reason> MinContrastiveTreeEnsemble(const Ensemble& ensemble,
                                                 const BooleanInstance& x,
                                                 const Limits& limits) {
  std::optional<Reason> best;
  for (const FeatureSubset& s :
       EnumerateCandidateContrastive(ensemble, x, false, limits)) {
    if (!best || s.size() < best->size) best = Reason{s.size(), s};
  }
  return best;
}

bool McrTreeEnsemble(const Ensemble& ensemble, const BooleanInstance& x,
                     int bound, const Limits& limits) {
  const auto best = MinContrastiveTreeEnsemble(ensemble, x, limits);
  return best.has_value() && best->size <= bound;
}

FeatureSubset MinimumHittingSet(const std::vector<FeatureSubset>& family,
                                int universe) {
  for (const FeatureSubset& s : family) {
    if (s.empty()) {
      Fail(ErrorCode::kInfeasible, "family contains the empty set");
    }
  }
  if (family.empty()) return {};
  universe = UniverseOf(family, universe);
  std::vector<std::vector<int>> sets;
  for (const FeatureSubset& s : KeepMinimal(family, universe)) {
    sets.push_back(s.indices());
  }
  HittingSetSolver solver(std::move(sets), universe);
  std::vector<uint8_t> none(universe, 0);
  int optimum = 1;
  while (!solver.Feasible({}, none, optimum)) ++optimum;

  // Lexicographically first optimum: fix positions one at a time, trying the
  // smallest element that still admits a completion using larger elements.
  std::vector<int> chosen;
  std::vector<uint8_t> forbidden(universe, 0);
  while (static_cast<int>(chosen.size()) < optimum) {
    const int start = chosen.empty() ? 0 : chosen.back() + 1;
    bool placed = false;
    for (int e = start; e < universe; ++e) {
      chosen.push_back(e);
      std::vector<uint8_t> banned = forbidden;
      for (int f = 0; f <= e; ++f) banned[f] = 1;
      const int left = optimum - static_cast<int>(chosen.size());
      if (solver.Feasible(chosen, banned, left)) {
        forbidden = std::move(banned);
        placed = true;
        break;
      }
      chosen.pop_back();
    }
    if (!placed) Fail(ErrorCode::kInfeasible, "hitting set search failed");
  }
  return FeatureSubset::Of(chosen);
}

Reason MsrTreeEnsemble(const Ensemble& ensemble, const BooleanInstance& x,
                       const Limits& limits) {
  const FeatureSubset hitting = MinimumHittingSet(
      EnumerateCandidateContrastive(ensemble, x, false, limits),
      ensemble.feature_count());
  return Reason{hitting.size(), hitting};
}

FeatureSubset GreedySubsetMinimalSufficient(
    int feature_count, std::span<const int> order,
    const SufficiencyCheck& is_sufficient) {
  std::vector<uint8_t> seen(feature_count, 0);
  if (static_cast<int>(order.size()) != feature_count) {
    Fail(ErrorCode::kInvalidArgument, "order must be a permutation of [n]");
  }
  for (int i : order) {
    if (i < 0 || i >= feature_count || seen[i]) {
      Fail(ErrorCode::kInvalidArgument, "order must be a permutation of [n]");
    }
    seen[i] = 1;
  }
  FeatureSubset current = FeatureSubset::All(feature_count);
  for (int i : order) {
    FeatureSubset smaller = current.Without(i);
    if (is_sufficient(smaller)) current = std::move(smaller);
  }
  return current;
}

FeatureSubset GreedySubsetMinimalSufficient(const Ensemble& ensemble,
                                            const BooleanInstance& x,
                                            std::span<const int> order,
                                            const Limits& limits) {
  RequireTrees(ensemble);
  CheckInstance(x, ensemble.feature_count());
  return GreedySubsetMinimalSufficient(
      ensemble.feature_count(), order, [&](const FeatureSubset& s) {
        return CsrTreeEnsemble(ensemble, x, s, limits);
      });
}

std::vector<Cylinder> CylinderDecomposition(const Ensemble& ensemble,
                                            const Limits& limits) {
  RequireTrees(ensemble);
  std::vector<Cylinder> cylinders;
  for (const auto& merged :
       internal::MatchingLeafTuples(ensemble, true, false, limits)) {
    std::vector<int> features;
    Cylinder c;
    for (int i = 0; i < static_cast<int>(merged.size()); ++i) {
      if (merged[i] == -1) continue;
      features.push_back(i);
      c.values.push_back(static_cast<uint8_t>(merged[i]));
    }
    c.features = FeatureSubset::Of(std::move(features));
    c.label = true;
    cylinders.push_back(std::move(c));
  }
  return cylinders;
}

Rational ExpectedValueTreeEnsemble(const Ensemble& ensemble,
                                   const ProductDistribution& distribution,
                                   const Limits& limits) {
  RequireTrees(ensemble);
  if (distribution.size() != ensemble.feature_count()) {
    Fail(ErrorCode::kInputShape, "distribution length differs from n");
  }
  Rational total = 0;
  for (const Cylinder& c : CylinderDecomposition(ensemble, limits)) {
    total += c.Mass(distribution);
  }
  return total;
}

Rational CcTreeEnsemble(const Ensemble& ensemble, const BooleanInstance& x,
                        const FeatureSubset& subset, const Limits& limits) {
  RequireTrees(ensemble);
  const int n = ensemble.feature_count();
  CheckInstance(x, n);
  subset.CheckWithin(n);
  Ensemble conditioned = ConditionTreeEnsemble(ensemble, x, subset);
  if (!ensemble.Evaluate(x)) conditioned = NegateEnsemble(conditioned);
  return ExpectedValueTreeEnsemble(conditioned,
                                   ProductDistribution::Uniform(n), limits);
}

}  // namespace xplain
