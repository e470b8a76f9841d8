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

#include "xplain/perceptron_explain.h"

#include <algorithm>
#include <numeric>

#include "fast_eval.h"
#include "xplain/error.h"

namespace xplain {

namespace {

struct IntegerPerceptron {
  std::vector<int64_t> weights;
  int64_t bias = 0;
  int64_t magnitude = 0;  // sum of |w_i|
};

IntegerPerceptron Scale(const Perceptron& perceptron) {
  std::vector<Rational> values = perceptron.weights();
  values.push_back(perceptron.bias());
  auto scaled = internal::ScaleToInt64(values);
  if (!scaled) {
    Fail(ErrorCode::kResourceExceeded,
         "scaled weights do not fit the pseudo-polynomial tables");
  }
  IntegerPerceptron out;
  out.bias = scaled->back();
  scaled->pop_back();
  out.weights = std::move(*scaled);
  for (int64_t w : out.weights) out.magnitude += w < 0 ? -w : w;
  return out;
}

void CheckBudget(int64_t cells, const Limits& limits, const char* what) {
  if (cells > limits.pseudopoly_budget) {
    Fail(ErrorCode::kResourceExceeded,
         std::string(what) + ": table of " + std::to_string(cells) +
             " cells exceeds the pseudo-polynomial budget of " +
             std::to_string(limits.pseudopoly_budget));
  }
}

// Lexicographically first minimum-size subset whose gains sum past the
// requirement. Gains are non-negative; `meets` must be monotone in the sum.
template <typename Meets>
std::optional<Reason> LexFirstMinimum(const std::vector<Rational>& gains,
                                      const Meets& meets) {
  const int n = static_cast<int>(gains.size());
  auto top_sum = [&](int from, int count) {
    std::vector<Rational> rest(gains.begin() + from, gains.end());
    count = std::min<int>(count, static_cast<int>(rest.size()));
    std::partial_sort(rest.begin(), rest.begin() + count, rest.end(),
                      std::greater<>());
    return std::accumulate(rest.begin(), rest.begin() + count, Rational(0));
  };
  int size = -1;
  for (int s = 0; s <= n; ++s) {
    if (meets(top_sum(0, s))) {
      size = s;
      break;
    }
  }
  if (size < 0) return std::nullopt;
  std::vector<int> chosen;
  Rational sum = 0;
  int start = 0;
  while (static_cast<int>(chosen.size()) < size) {
    const int left = size - static_cast<int>(chosen.size()) - 1;
    for (int e = start; e < n; ++e) {
      if (meets(sum + gains[e] + top_sum(e + 1, left))) {
        chosen.push_back(e);
        sum += gains[e];
        start = e + 1;
        break;
      }
    }
  }
  return Reason{size, FeatureSubset::Of(std::move(chosen))};
}

template <typename Count>
std::vector<Count> SubsetSumCounts(const std::vector<int64_t>& weights,
                                   int64_t low, int64_t high) {
  std::vector<Count> counts(high - low + 1, Count(0));
  counts[-low] = Count(1);
  int64_t lo = 0;
  int64_t hi = 0;
  for (int64_t w : weights) {
    if (w == 0) {
      for (Count& c : counts) c = c + c;
      continue;
    }
    std::vector<Count> next = counts;
    for (int64_t s = lo; s <= hi; ++s) {
      const Count& c = counts[s - low];
      if (c == 0) continue;
      next[s + w - low] += c;
    }
    counts = std::move(next);
    lo += std::min<int64_t>(0, w);
    hi += std::max<int64_t>(0, w);
  }
  return counts;
}

template <typename Count>
BigInt CountKeeping(const std::vector<int64_t>& free_weights, int64_t fixed,
                    bool label, int64_t low, int64_t high) {
  const std::vector<Count> counts =
      SubsetSumCounts<Count>(free_weights, low, high);
  Count good(0);
  for (int64_t s = low; s <= high; ++s) {
    if ((fixed + s >= 0) == label) good += counts[s - low];
  }
  if constexpr (std::is_same_v<Count, BigInt>) {
    return good;
  } else {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(Count), 0, 0, &good);
    return out;
  }
}

Perceptron DropFeature(const Perceptron& perceptron, const BooleanInstance& x,
                       int feature) {
  std::vector<Rational> weights;
  for (int i = 0; i < perceptron.feature_count(); ++i) {
    if (i != feature) weights.push_back(perceptron.weights()[i]);
  }
  Rational bias = perceptron.bias();
  if (x[feature]) bias += perceptron.weights()[feature];
  return Perceptron(std::move(weights), bias);
}

void CheckShapes(const Perceptron& perceptron, const BooleanInstance& x) {
  CheckInstance(x, perceptron.feature_count());
}

}  // namespace

bool CsrPerceptron(const Perceptron& perceptron, const BooleanInstance& x,
                   const FeatureSubset& subset) {
  CheckShapes(perceptron, x);
  const int n = perceptron.feature_count();
  subset.CheckWithin(n);
  Rational low = perceptron.bias();
  Rational high = perceptron.bias();
  for (int i = 0; i < n; ++i) {
    const Rational& w = perceptron.weights()[i];
    if (subset.contains(i)) {
      if (x[i]) {
        low += w;
        high += w;
      }
    } else if (sgn(w) < 0) {
      low += w;
    } else {
      high += w;
    }
  }
  return perceptron.Evaluate(x) ? sgn(low) >= 0 : sgn(high) < 0;
}

std::optional<Reason> MinContrastivePerceptron(const Perceptron& perceptron,
                                               const BooleanInstance& x) {
  CheckShapes(perceptron, x);
  const int n = perceptron.feature_count();
  const Rational score = perceptron.Score(x);
  const bool label = sgn(score) >= 0;
  // Flipping feature i moves the score by (1 - 2 x_i) w_i.
  std::vector<Rational> gains(n);
  for (int i = 0; i < n; ++i) {
    Rational delta = x[i] ? Rational(-perceptron.weights()[i])
                          : perceptron.weights()[i];
    if (label) delta = -delta;
    gains[i] = sgn(delta) > 0 ? delta : Rational(0);
  }
  if (label) {
    return LexFirstMinimum(gains, [&](const Rational& s) { return s > score; });
  }
  return LexFirstMinimum(gains,
                         [&](const Rational& s) { return s + score >= 0; });
}

bool McrPerceptron(const Perceptron& perceptron, const BooleanInstance& x,
                   int bound) {
  const auto best = MinContrastivePerceptron(perceptron, x);
  return best.has_value() && best->size <= bound;
}

Reason MsrPerceptron(const Perceptron& perceptron, const BooleanInstance& x) {
  CheckShapes(perceptron, x);
  const int n = perceptron.feature_count();
  const bool label = perceptron.Evaluate(x);
  // Fixing feature i lifts the worst case (label 1) or lowers the best case
  // (label 0) by a non-negative amount.
  Rational base = perceptron.bias();
  std::vector<Rational> gains(n);
  for (int i = 0; i < n; ++i) {
    const Rational& w = perceptron.weights()[i];
    const Rational fixed = x[i] ? w : Rational(0);
    if (label) {
      const Rational worst = sgn(w) < 0 ? w : Rational(0);
      base += worst;
      gains[i] = fixed - worst;
    } else {
      const Rational best = sgn(w) > 0 ? w : Rational(0);
      base += best;
      gains[i] = best - fixed;
    }
  }
  std::optional<Reason> found =
      label ? LexFirstMinimum(
                  gains, [&](const Rational& s) { return base + s >= 0; })
            : LexFirstMinimum(
                  gains, [&](const Rational& s) { return base - s < 0; });
  return *found;  // the full set is always sufficient
}

Rational CcPerceptronPseudopoly(const Perceptron& perceptron,
                                const BooleanInstance& x,
                                const FeatureSubset& subset,
                                const Limits& limits) {
  CheckShapes(perceptron, x);
  const int n = perceptron.feature_count();
  subset.CheckWithin(n);
  const IntegerPerceptron scaled = Scale(perceptron);
  CheckBudget(scaled.magnitude + 1, limits, "completion count");
  int64_t fixed = scaled.bias;
  std::vector<int64_t> free_weights;
  int64_t low = 0;
  int64_t high = 0;
  for (int i = 0; i < n; ++i) {
    const int64_t w = scaled.weights[i];
    if (subset.contains(i)) {
      if (x[i]) fixed += w;
    } else {
      free_weights.push_back(w);
      low += std::min<int64_t>(0, w);
      high += std::max<int64_t>(0, w);
    }
  }
  const bool label = perceptron.Evaluate(x);
  const int free_count = static_cast<int>(free_weights.size());
  BigInt good =
      free_count < 63
          ? CountKeeping<uint64_t>(free_weights, fixed, label, low, high)
          : CountKeeping<BigInt>(free_weights, fixed, label, low, high);
  BigInt total = 1;
  total <<= free_count;
  return MakeRational(good, total);
}

std::vector<Rational> HSumPerceptron(const Perceptron& perceptron,
                                     const BooleanInstance& x,
                                     const ProductDistribution& distribution,
                                     const Limits& limits) {
  CheckShapes(perceptron, x);
  const int n = perceptron.feature_count();
  if (distribution.size() != n) {
    Fail(ErrorCode::kInputShape, "distribution length differs from n");
  }
  const IntegerPerceptron scaled = Scale(perceptron);
  CheckBudget((scaled.magnitude + 1) * (n + 1), limits, "H table");

  // With A the set of features where z agrees with x, f(z) = 1 iff
  // sum_{i in A} d_i <= t, where d_i = -w_i if x_i = 1 else w_i and
  // t = b + sum_{x_i = 0} w_i.
  std::vector<int64_t> delta(n);
  int64_t threshold = scaled.bias;
  int64_t low = 0;
  int64_t high = 0;
  for (int i = 0; i < n; ++i) {
    delta[i] = x[i] ? -scaled.weights[i] : scaled.weights[i];
    if (!x[i]) threshold += scaled.weights[i];
    low += std::min<int64_t>(0, delta[i]);
    high += std::max<int64_t>(0, delta[i]);
  }
  const int64_t width = high - low + 1;
  // table[j * width + (c - low)]: mass of prefixes with j features in S and
  // agreement sum c. S members always agree and carry factor one.
  std::vector<Rational> table((n + 1) * width);
  std::vector<Rational> next((n + 1) * width);
  table[-low] = 1;
  int64_t lo = 0;
  int64_t hi = 0;
  for (int i = 0; i < n; ++i) {
    const Rational agree = distribution.Probability(i, x[i]);
    const Rational disagree = 1 - agree;
    const int64_t d = delta[i];
    for (Rational& v : next) v = 0;
    for (int j = 0; j <= i; ++j) {
      for (int64_t c = lo; c <= hi; ++c) {
        const Rational& v = table[j * width + (c - low)];
        if (sgn(v) == 0) continue;
        next[(j + 1) * width + (c + d - low)] += v;
        if (sgn(agree) != 0) next[j * width + (c + d - low)] += v * agree;
        if (sgn(disagree) != 0) next[j * width + (c - low)] += v * disagree;
      }
    }
    std::swap(table, next);
    lo += std::min<int64_t>(0, d);
    hi += std::max<int64_t>(0, d);
  }
  std::vector<Rational> h(n + 1, Rational(0));
  for (int j = 0; j <= n; ++j) {
    for (int64_t c = low; c <= std::min(high, threshold); ++c) {
      h[j] += table[j * width + (c - low)];
    }
  }
  return h;
}

Rational HSumPerceptron(const Perceptron& perceptron, const BooleanInstance& x,
                        const ProductDistribution& distribution, int k,
                        const Limits& limits) {
  if (k < 0 || k > perceptron.feature_count()) {
    Fail(ErrorCode::kInvalidArgument, "k must lie in [0, n]");
  }
  return HSumPerceptron(perceptron, x, distribution, limits)[k];
}

Rational ShapPerceptronPseudopoly(const Perceptron& perceptron,
                                  const BooleanInstance& x, int feature,
                                  const ProductDistribution& distribution,
                                  const Limits& limits) {
  CheckShapes(perceptron, x);
  const int n = perceptron.feature_count();
  if (feature < 0 || feature >= n) {
    Fail(ErrorCode::kInputShape, "feature index out of range");
  }
  const std::vector<Rational> hf =
      HSumPerceptron(perceptron, x, distribution, limits);
  std::vector<uint8_t> rest_bits;
  std::vector<Rational> rest_p;
  for (int i = 0; i < n; ++i) {
    if (i == feature) continue;
    rest_bits.push_back(x[i]);
    rest_p.push_back(distribution.p(i));
  }
  const std::vector<Rational> hg =
      HSumPerceptron(DropFeature(perceptron, x, feature),
                     BooleanInstance(std::move(rest_bits)),
                     ProductDistribution(std::move(rest_p)), limits);
  Rational phi = 0;
  for (int k = 0; k < n; ++k) {
    Rational term = hg[k] - hf[k];
    if (k > 0) term += hg[k - 1];
    phi += ShapleyWeight(k, n) * term;
  }
  return phi;
}

std::vector<Rational> ShapPerceptronPseudopolyAll(
    const Perceptron& perceptron, const BooleanInstance& x,
    const ProductDistribution& distribution, const Limits& limits) {
  std::vector<Rational> out;
  for (int i = 0; i < perceptron.feature_count(); ++i) {
    out.push_back(
        ShapPerceptronPseudopoly(perceptron, x, i, distribution, limits));
  }
  return out;
}

}  // namespace xplain
