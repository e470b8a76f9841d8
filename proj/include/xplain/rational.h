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

#ifndef XPLAIN_RATIONAL_H_
#define XPLAIN_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xplain {

// Exact arbitrary-precision rationals. Values produced by arithmetic are always
// canonical; use MakeRational/ParseRational to build values from parts.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational MakeRational(const BigInt& numerator, const BigInt& denominator);
Rational MakeRational(int64_t numerator, int64_t denominator = 1);

// Accepts "p", "-p" and "p/q". Rejects zero denominators and anything that is
// not a plain integer ratio (no decimals, no whitespace inside).
Rational ParseRational(std::string_view text);

// Canonical "p/q" form, or "p" when the denominator is one.
std::string ToString(const Rational& value);

BigInt Lcm(const BigInt& a, const BigInt& b);

// Least common multiple of all denominators (1 for an empty span).
BigInt CommonDenominator(std::span<const Rational> values);

BigInt Binomial(unsigned n, unsigned k);

// n!/(k!(n-k-1)!) inverse: the Shapley coalition weight |S|!(n-|S|-1)!/n!.
Rational ShapleyWeight(unsigned coalition_size, unsigned feature_count);

}  // namespace xplain

#endif  // XPLAIN_RATIONAL_H_
