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

#include "xplain/gadgets.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "xplain/error.h"
#include "xplain/transforms.h"

namespace xplain {

namespace {

constexpr int kSubsetSumCap = 20;
constexpr int kGeneralizedCap = 12;

void CheckPositive(const std::vector<int64_t>& values, const char* name) {
  for (int64_t v : values) {
    if (v <= 0) {
      Fail(ErrorCode::kInvalidInstance,
           std::string(name) + " must hold positive integers");
    }
  }
}

void CheckTarget(int64_t target) {
  if (target < 1) {
    Fail(ErrorCode::kInvalidInstance, "target must be a positive integer");
  }
}

void CheckCap(size_t n, int cap) {
  if (static_cast<int>(n) > cap) {
    Fail(ErrorCode::kResourceExceeded,
         std::to_string(n) + " elements exceed the brute-force cap of " +
             std::to_string(cap));
  }
}

int64_t MaskSum(const std::vector<int64_t>& values, uint64_t mask) {
  int64_t sum = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (mask >> i & 1) sum += values[i];
  }
  return sum;
}

std::vector<Rational> ToRationals(const std::vector<int64_t>& values,
                                  int sign) {
  std::vector<Rational> out;
  for (int64_t v : values) out.push_back(MakeRational(sign * v));
  return out;
}

// <-z, T - 1/2> and <z, -T - 1/2>.
std::vector<BaseModel> SubsetSumPair(const std::vector<int64_t>& z,
                                     int64_t target) {
  const Rational half = MakeRational(1, 2);
  std::vector<BaseModel> models;
  models.emplace_back(Perceptron(ToRationals(z, -1), target - half));
  models.emplace_back(Perceptron(ToRationals(z, 1), -target - half));
  return models;
}

// Builds a complete tree over `features`, labelling each leaf by the bits
// read on the way down.
int BuildComplete(const std::vector<int>& features, size_t depth,
                  uint64_t code,
                  const std::function<bool(uint64_t)>& label,
                  std::vector<TreeNode>& nodes) {
  const int id = static_cast<int>(nodes.size());
  if (depth == features.size()) {
    nodes.push_back(TreeNode::Leaf(label(code)));
    return id;
  }
  nodes.push_back(TreeNode{});
  const int zero = BuildComplete(features, depth + 1, code, label, nodes);
  const int one = BuildComplete(features, depth + 1,
                                code | (uint64_t{1} << depth), label, nodes);
  nodes[id] = TreeNode::Split(features[depth], zero, one);
  return id;
}

}  // namespace

void CheckInstance(const SspInstance& instance) {
  CheckPositive(instance.z, "z");
  CheckTarget(instance.target);
}

void CheckInstance(const KSspInstance& instance) {
  CheckPositive(instance.z, "z");
  CheckTarget(instance.target);
  if (instance.k < 0 || instance.k > static_cast<int>(instance.z.size())) {
    Fail(ErrorCode::kInvalidInstance, "k must lie in [0, n]");
  }
}

void CheckInstance(const GsspInstance& instance) {
  CheckPositive(instance.u, "u");
  CheckPositive(instance.v, "v");
  CheckTarget(instance.target);
}

void CheckInstance(const KGsspInstance& instance) {
  CheckPositive(instance.u, "u");
  CheckPositive(instance.v, "v");
  CheckTarget(instance.target);
  if (instance.k < 0 || instance.k > static_cast<int>(instance.u.size())) {
    Fail(ErrorCode::kInvalidInstance, "k must lie in [0, |u|]");
  }
}

void CheckInstance(const KGsspStarInstance& instance) {
  CheckPositive(instance.z, "z");
  CheckTarget(instance.target);
  const int n = static_cast<int>(instance.z.size());
  if (!instance.allowed.empty() && instance.allowed.indices().back() >= n) {
    Fail(ErrorCode::kInvalidInstance, "allowed set exceeds z");
  }
  if (instance.k < 0 || instance.k > instance.allowed.size() ||
      instance.k >= n) {
    Fail(ErrorCode::kInvalidInstance, "k must satisfy k <= |S0| and k < n");
  }
}

CsrGadget SspCsrGadget(const SspInstance& instance) {
  CheckInstance(instance);
  const int n = static_cast<int>(instance.z.size());
  return CsrGadget{Ensemble(SubsetSumPair(instance.z, instance.target)),
                   BooleanInstance::Constant(n, false), FeatureSubset()};
}

BoundGadget KSspMcrGadget(const KSspInstance& instance) {
  CheckInstance(instance);
  const int n = static_cast<int>(instance.z.size());
  return BoundGadget{Ensemble(SubsetSumPair(instance.z, instance.target)),
                     BooleanInstance::Constant(n, false), instance.k};
}

BoundGadget KGsspStarMsrGadget(const KGsspStarInstance& instance) {
  CheckInstance(instance);
  const int n = static_cast<int>(instance.z.size());
  const BooleanInstance ones = BooleanInstance::Constant(n, true);
  std::vector<BaseModel> models;
  const int64_t total =
      std::accumulate(instance.z.begin(), instance.z.end(), int64_t{0});
  if (total == instance.target) {
    for (int i = 0; i < 5; ++i) {
      models.emplace_back(Perceptron::Constant(n, true));
    }
    return BoundGadget{Ensemble(std::move(models)), ones, instance.k};
  }
  models = SubsetSumPair(instance.z, instance.target);
  std::vector<Rational> in_allowed(n, Rational(0));
  for (int i : instance.allowed) in_allowed[i] = 1;
  models.emplace_back(Perceptron(std::move(in_allowed),
                                 MakeRational(-instance.k)));
  models.emplace_back(Perceptron::Constant(n, true));
  models.emplace_back(IndicatorPerceptron(ones, FeatureSubset::All(n)));
  return BoundGadget{Ensemble(std::move(models)), ones, instance.k};
}

KGsspInstance GsspToKGssp(const GsspInstance& instance) {
  CheckInstance(instance);
  const int64_t g =
      std::accumulate(instance.u.begin(), instance.u.end(), int64_t{0}) +
      instance.target + 1;
  const int l = static_cast<int>(instance.u.size());
  KGsspInstance out;
  for (int64_t u : instance.u) out.u.push_back(u + g);
  for (int i = 0; i < l; ++i) out.u.push_back(g);
  out.v = instance.v;
  out.k = l;
  out.target = instance.target + l * g;
  return out;
}

KGsspStarInstance KGsspToKGsspStar(const KGsspInstance& instance) {
  CheckInstance(instance);
  const int l = static_cast<int>(instance.u.size());
  const int64_t scale = 2 * (l + static_cast<int64_t>(instance.v.size())) + 1;
  KGsspStarInstance out;
  for (int64_t u : instance.u) out.z.push_back(scale * u + 1);
  for (int64_t v : instance.v) out.z.push_back(scale * v);
  std::vector<int> allowed(l);
  std::iota(allowed.begin(), allowed.end(), 0);
  out.allowed = FeatureSubset::Of(std::move(allowed));
  out.k = instance.k;
  out.target = instance.target * scale + instance.k;
  return out;
}

int CliqueClassSize(const ColoredGraph& graph) {
  std::vector<int> sizes(graph.colors, 0);
  for (int c : graph.color_of) ++sizes[c];
  const int largest =
      sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  int m = 2;
  while (m < largest) m *= 2;
  return m;
}

CsrGadget MulticoloredCliqueCsrGadget(const ColoredGraph& graph) {
  const int k = graph.colors;
  if (k < 2) Fail(ErrorCode::kInvalidInstance, "need at least two colors");
  const int vertices = static_cast<int>(graph.color_of.size());
  for (int c : graph.color_of) {
    if (c < 0 || c >= k) Fail(ErrorCode::kInvalidInstance, "bad color");
  }
  std::vector<int> local(vertices);
  std::vector<int> next_local(k, 0);
  for (int v = 0; v < vertices; ++v) local[v] = next_local[graph.color_of[v]]++;

  // adjacency keyed by (color, local index) pairs
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> adjacent;
  for (auto [a, b] : graph.edges) {
    if (a < 0 || b < 0 || a >= vertices || b >= vertices) {
      Fail(ErrorCode::kInvalidInstance, "edge endpoint out of range");
    }
    if (graph.color_of[a] == graph.color_of[b]) {
      Fail(ErrorCode::kInvalidInstance, "edge inside a color class");
    }
    std::pair<int, int> pa{graph.color_of[a], local[a]};
    std::pair<int, int> pb{graph.color_of[b], local[b]};
    if (pb < pa) std::swap(pa, pb);
    adjacent.insert({pa, pb});
  }
  auto is_edge = [&](int ci, int a, int cj, int b) {
    return adjacent.count({{ci, a}, {cj, b}}) > 0;
  };

  int m = CliqueClassSize(graph);
  // Find a non-adjacent cross pair; padded vertices are isolated, so doubling
  // m always produces one.
  int ci = -1, cj = -1, va = 0, vb = 0;
  while (ci < 0) {
    for (int i = 0; i < k && ci < 0; ++i) {
      for (int j = i + 1; j < k && ci < 0; ++j) {
        for (int a = 0; a < m && ci < 0; ++a) {
          for (int b = 0; b < m && ci < 0; ++b) {
            if (!is_edge(i, a, j, b)) {
              ci = i, cj = j, va = a, vb = b;
            }
          }
        }
      }
    }
    if (ci < 0) m *= 2;
  }
  int bits = 0;
  while ((1 << bits) < m) ++bits;
  const int n = k * bits;

  std::vector<BaseModel> models;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      std::vector<int> features;
      for (int b = 0; b < bits; ++b) features.push_back(i * bits + b);
      for (int b = 0; b < bits; ++b) features.push_back(j * bits + b);
      std::vector<TreeNode> nodes;
      const uint64_t low = (uint64_t{1} << bits) - 1;
      BuildComplete(
          features, 0, 0,
          [&](uint64_t code) {
            return is_edge(i, static_cast<int>(code & low), j,
                           static_cast<int>(code >> bits));
          },
          nodes);
      models.emplace_back(DecisionTree(n, std::move(nodes)));
    }
  }
  const int pairs = k * (k - 1) / 2;
  for (int p = 0; p < pairs; ++p) {
    models.emplace_back(DecisionTree::Constant(n, false));
  }
  std::vector<uint8_t> x(n, 0);
  for (int b = 0; b < bits; ++b) {
    x[ci * bits + b] = (va >> b) & 1;
    x[cj * bits + b] = (vb >> b) & 1;
  }
  return CsrGadget{Ensemble(std::move(models)), BooleanInstance(std::move(x)),
                   FeatureSubset()};
}

bool SolveSspBrute(const SspInstance& instance) {
  CheckInstance(instance);
  CheckCap(instance.z.size(), kSubsetSumCap);
  for (uint64_t mask = 0; mask < (uint64_t{1} << instance.z.size()); ++mask) {
    if (MaskSum(instance.z, mask) == instance.target) return true;
  }
  return false;
}

bool SolveKSspBrute(const KSspInstance& instance, bool at_most) {
  CheckInstance(instance);
  CheckCap(instance.z.size(), kSubsetSumCap);
  for (uint64_t mask = 0; mask < (uint64_t{1} << instance.z.size()); ++mask) {
    const int size = std::popcount(mask);
    if (at_most ? size > instance.k : size != instance.k) continue;
    if (MaskSum(instance.z, mask) == instance.target) return true;
  }
  return false;
}

namespace {

bool GeneralizedSearch(const std::vector<int64_t>& u,
                       const std::vector<int64_t>& v, int k, int64_t target) {
  CheckCap(u.size() + v.size(), kGeneralizedCap);
  for (uint64_t x = 0; x < (uint64_t{1} << u.size()); ++x) {
    if (k >= 0 && std::popcount(x) != k) continue;
    const int64_t base = MaskSum(u, x);
    bool avoids = true;
    for (uint64_t y = 0; y < (uint64_t{1} << v.size()) && avoids; ++y) {
      if (base + MaskSum(v, y) == target) avoids = false;
    }
    if (avoids) return true;
  }
  return false;
}

}  // namespace

bool SolveGsspBrute(const GsspInstance& instance) {
  CheckInstance(instance);
  return GeneralizedSearch(instance.u, instance.v, -1, instance.target);
}

bool SolveKGsspBrute(const KGsspInstance& instance) {
  CheckInstance(instance);
  return GeneralizedSearch(instance.u, instance.v, instance.k,
                           instance.target);
}

bool SolveKGsspStarBrute(const KGsspStarInstance& instance,
                         bool proper_complement_only) {
  CheckInstance(instance);
  const int n = static_cast<int>(instance.z.size());
  CheckCap(instance.z.size(), kGeneralizedCap);
  const uint64_t all = (uint64_t{1} << n) - 1;
  const uint64_t allowed = instance.allowed.ToMask();
  for (uint64_t s = 0; s <= all; ++s) {
    if ((s & ~allowed) || std::popcount(s) != instance.k) continue;
    const int64_t base = MaskSum(instance.z, s);
    const uint64_t rest = all & ~s;
    bool avoids = true;
    // Enumerate submasks of the complement.
    for (uint64_t t = rest;; t = (t - 1) & rest) {
      if (!(proper_complement_only && t == rest) &&
          base + MaskSum(instance.z, t) == instance.target) {
        avoids = false;
        break;
      }
      if (t == 0) break;
    }
    if (avoids) return true;
  }
  return false;
}

bool SolveMulticoloredCliqueBrute(const ColoredGraph& graph) {
  const int k = graph.colors;
  const int vertices = static_cast<int>(graph.color_of.size());
  std::vector<std::vector<int>> classes(k);
  for (int v = 0; v < vertices; ++v) classes[graph.color_of[v]].push_back(v);
  std::set<std::pair<int, int>> edges;
  for (auto [a, b] : graph.edges) {
    edges.insert({std::min(a, b), std::max(a, b)});
  }
  std::vector<int> pick(k, 0);
  std::function<bool(int)> extend = [&](int color) {
    if (color == k) return true;
    for (int v : classes[color]) {
      bool ok = true;
      for (int c = 0; c < color && ok; ++c) {
        ok = edges.count({std::min(v, pick[c]), std::max(v, pick[c])}) > 0;
      }
      if (!ok) continue;
      pick[color] = v;
      if (extend(color + 1)) return true;
    }
    return false;
  };
  return extend(0);
}

}  // namespace xplain
