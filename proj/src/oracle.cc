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

#include "xplain/oracle.h"

#include <bit>

#include "fast_eval.h"
#include "xplain/error.h"

namespace xplain {

namespace {

void CheckCap(int n, int cap, const char* what) {
  if (n > cap) {
    Fail(ErrorCode::kResourceExceeded,
         std::string(what) + ": " + std::to_string(n) +
             " features exceed the brute-force cap of " + std::to_string(cap));
  }
}

std::vector<uint8_t> TruthTable(const Model& model, const Limits& limits) {
  const int n = FeatureCount(model);
  CheckCap(n, limits.oracle_max_features, "oracle");
  const internal::CompiledModel compiled(model);
  std::vector<uint8_t> table(size_t{1} << n);
  for (uint64_t z = 0; z < table.size(); ++z) table[z] = compiled.Evaluate(z);
  return table;
}

// flip_reaches[M] is set iff some z that differs from x exactly on a subset
// of M has f(z) != f(x): M is then a contrastive set.
std::vector<uint8_t> ContrastiveTable(const Model& model,
                                      const BooleanInstance& x,
                                      const Limits& limits) {
  const int n = FeatureCount(model);
  CheckInstance(x, n);
  const std::vector<uint8_t> table = TruthTable(model, limits);
  const uint64_t xm = x.ToMask();
  const uint8_t label = table[xm];
  std::vector<uint8_t> reach(table.size());
  for (uint64_t d = 0; d < table.size(); ++d) reach[d] = table[xm ^ d] != label;
  // Subset-OR (zeta transform) over the difference masks.
  for (int i = 0; i < n; ++i) {
    const uint64_t bit = uint64_t{1} << i;
    for (uint64_t m = 0; m < reach.size(); ++m) {
      if (m & bit) reach[m] |= reach[m ^ bit];
    }
  }
  return reach;
}

// Visits the size-s subsets of [n] in lexicographic order of their sorted
// index lists until `visit` returns true; returns the accepted mask.
template <typename Visit>
std::optional<uint64_t> FirstInLexOrder(int n, int s, Visit visit) {
  std::vector<int> combo(s);
  for (int i = 0; i < s; ++i) combo[i] = i;
  while (true) {
    uint64_t mask = 0;
    for (int i : combo) mask |= uint64_t{1} << i;
    if (visit(mask)) return mask;
    int pos = s - 1;
    while (pos >= 0 && combo[pos] == n - s + pos) --pos;
    if (pos < 0) return std::nullopt;
    ++combo[pos];
    for (int j = pos + 1; j < s; ++j) combo[j] = combo[j - 1] + 1;
  }
}

Rational FoldExpectation(std::vector<Rational> values,
                         const ProductDistribution& distribution) {
  const int n = distribution.size();
  for (int i = n - 1; i >= 0; --i) {
    const uint64_t half = uint64_t{1} << i;
    const Rational& p = distribution.p(i);
    const Rational q = 1 - p;
    for (uint64_t m = 0; m < half; ++m) {
      values[m] = q * values[m] + p * values[m | half];
    }
    values.resize(half);
  }
  return values[0];
}

}  // namespace

bool OracleIsSufficient(const Model& model, const BooleanInstance& x,
                        const FeatureSubset& subset, const Limits& limits) {
  const int n = FeatureCount(model);
  CheckInstance(x, n);
  subset.CheckWithin(n);
  CheckCap(n, limits.oracle_max_features, "oracle");
  const internal::CompiledModel compiled(model);
  const uint64_t xm = x.ToMask();
  const bool label = compiled.Evaluate(xm);
  const uint64_t free = subset.Complement(n).ToMask();
  // Enumerate submasks of the free features.
  uint64_t sub = free;
  while (true) {
    if (compiled.Evaluate((xm & ~free) | sub) != label) return false;
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
  return true;
}

bool OracleIsContrastive(const Model& model, const BooleanInstance& x,
                         const FeatureSubset& subset, const Limits& limits) {
  return !OracleIsSufficient(model, x, subset.Complement(FeatureCount(model)),
                             limits);
}

Reason OracleMinSufficient(const Model& model, const BooleanInstance& x,
                           const Limits& limits) {
  const int n = FeatureCount(model);
  const std::vector<uint8_t> reach = ContrastiveTable(model, x, limits);
  const uint64_t all = reach.size() - 1;
  // S is sufficient iff its complement is not contrastive.
  for (int s = 0; s <= n; ++s) {
    auto found = FirstInLexOrder(
        n, s, [&](uint64_t mask) { return !reach[all & ~mask]; });
    if (found) return Reason{s, FeatureSubset::FromMask(*found)};
  }
  Fail(ErrorCode::kInvalidArgument, "full feature set must be sufficient");
}

std::optional<Reason> OracleMinContrastive(const Model& model,
                                           const BooleanInstance& x,
                                           const Limits& limits) {
  const int n = FeatureCount(model);
  const std::vector<uint8_t> reach = ContrastiveTable(model, x, limits);
  for (int s = 0; s <= n; ++s) {
    auto found = FirstInLexOrder(n, s, [&](uint64_t mask) { return reach[mask] != 0; });
    if (found) return Reason{s, FeatureSubset::FromMask(*found)};
  }
  return std::nullopt;
}

std::vector<FeatureSubset> OracleMinimalContrastive(const Model& model,
                                                    const BooleanInstance& x,
                                                    const Limits& limits) {
  const int n = FeatureCount(model);
  const std::vector<uint8_t> reach = ContrastiveTable(model, x, limits);
  std::vector<FeatureSubset> out;
  for (uint64_t m = 0; m < reach.size(); ++m) {
    if (!reach[m]) continue;
    bool minimal = true;
    for (int i = 0; i < n && minimal; ++i) {
      const uint64_t bit = uint64_t{1} << i;
      if ((m & bit) && reach[m ^ bit]) minimal = false;
    }
    if (minimal) out.push_back(FeatureSubset::FromMask(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational OracleCompletionCount(const Model& model, const BooleanInstance& x,
                               const FeatureSubset& subset,
                               const Limits& limits) {
  const int n = FeatureCount(model);
  CheckInstance(x, n);
  subset.CheckWithin(n);
  CheckCap(n, limits.oracle_max_features, "oracle");
  const internal::CompiledModel compiled(model);
  const uint64_t xm = x.ToMask();
  const bool label = compiled.Evaluate(xm);
  const uint64_t free = subset.Complement(n).ToMask();
  uint64_t agree = 0;
  uint64_t sub = free;
  while (true) {
    if (compiled.Evaluate((xm & ~free) | sub) == label) ++agree;
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
  const int free_count = std::popcount(free);
  return MakeRational(BigInt(std::to_string(agree)),
                      BigInt(1) << free_count);
}

Rational OracleExpectedValue(const Model& model,
                             const ProductDistribution& distribution,
                             const Limits& limits) {
  if (distribution.size() != FeatureCount(model)) {
    Fail(ErrorCode::kInputShape, "distribution length mismatch");
  }
  const std::vector<uint8_t> table = TruthTable(model, limits);
  std::vector<Rational> values(table.begin(), table.end());
  return FoldExpectation(std::move(values), distribution);
}

BigInt OracleModelCount(const Model& model, const Limits& limits) {
  const std::vector<uint8_t> table = TruthTable(model, limits);
  uint64_t count = 0;
  for (uint8_t v : table) count += v;
  return BigInt(std::to_string(count));
}

std::vector<Rational> OracleCoalitionValues(
    const Model& model, const BooleanInstance& x,
    const ProductDistribution& distribution, const Limits& limits) {
  const int n = FeatureCount(model);
  CheckInstance(x, n);
  if (distribution.size() != n) {
    Fail(ErrorCode::kInputShape, "distribution length mismatch");
  }
  CheckCap(n, limits.shap_oracle_max_features, "shap oracle");
  const std::vector<uint8_t> table = TruthTable(model, limits);
  // Axis i of the cube is rewritten from "z_i = 0 / 1" into
  // "i not in S (marginalised) / i in S (pinned to x_i)".
  std::vector<Rational> a(table.begin(), table.end());
  for (int i = 0; i < n; ++i) {
    const uint64_t bit = uint64_t{1} << i;
    const Rational& p = distribution.p(i);
    const Rational q = 1 - p;
    for (uint64_t m = 0; m < a.size(); ++m) {
      if (m & bit) continue;
      const Rational zero = a[m];
      const Rational one = a[m | bit];
      a[m] = q * zero + p * one;
      a[m | bit] = x[i] ? one : zero;
    }
  }
  return a;
}

std::vector<Rational> OracleShapAll(const Model& model,
                                    const BooleanInstance& x,
                                    const ProductDistribution& distribution,
                                    const Limits& limits) {
  const int n = FeatureCount(model);
  const std::vector<Rational> v =
      OracleCoalitionValues(model, x, distribution, limits);
  std::vector<Rational> weights(n);
  for (int s = 0; s < n; ++s) weights[s] = ShapleyWeight(s, n);
  std::vector<Rational> phi(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    const uint64_t bit = uint64_t{1} << i;
    for (uint64_t m = 0; m < v.size(); ++m) {
      if (m & bit) continue;
      phi[i] += weights[std::popcount(m)] * (v[m | bit] - v[m]);
    }
  }
  return phi;
}

Rational OracleShap(const Model& model, const BooleanInstance& x, int feature,
                    const ProductDistribution& distribution,
                    const Limits& limits) {
  const int n = FeatureCount(model);
  if (feature < 0 || feature >= n) {
    Fail(ErrorCode::kInputShape, "feature index out of range");
  }
  return OracleShapAll(model, x, distribution, limits)[feature];
}

std::vector<Rational> OracleSizeStratifiedSums(
    const Model& model, const BooleanInstance& x,
    const ProductDistribution& distribution, const Limits& limits) {
  const int n = FeatureCount(model);
  const std::vector<Rational> v =
      OracleCoalitionValues(model, x, distribution, limits);
  std::vector<Rational> h(n + 1, Rational(0));
  for (uint64_t m = 0; m < v.size(); ++m) h[std::popcount(m)] += v[m];
  return h;
}

}  // namespace xplain
