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

#include "xplain/rational.h"

#include <cctype>

#include "xplain/error.h"

namespace xplain {

namespace {

bool IsIntegerText(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt ParseInteger(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  return BigInt(std::string(text), 10);
}

}  // namespace

Rational MakeRational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) Fail(ErrorCode::kInvalidArgument, "zero denominator");
  Rational value(numerator, denominator);
  value.canonicalize();
  return value;
}

Rational MakeRational(int64_t numerator, int64_t denominator) {
  return MakeRational(BigInt(std::to_string(numerator)),
                      BigInt(std::to_string(denominator)));
}

Rational ParseRational(std::string_view text) {
  const size_t slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!IsIntegerText(num) || !IsIntegerText(den) ||
      (!den.empty() && den.front() == '-')) {
    Fail(ErrorCode::kParse, "malformed rational '" + std::string(text) + "'");
  }
  const BigInt denominator = ParseInteger(den);
  if (denominator == 0) Fail(ErrorCode::kParse, "zero denominator");
  return MakeRational(ParseInteger(num), denominator);
}

std::string ToString(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

BigInt Lcm(const BigInt& a, const BigInt& b) {
  BigInt result;
  mpz_lcm(result.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return result;
}

BigInt CommonDenominator(std::span<const Rational> values) {
  BigInt lcm = 1;
  for (const Rational& v : values) lcm = Lcm(lcm, v.get_den());
  return lcm;
}

BigInt Binomial(unsigned n, unsigned k) {
  BigInt result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

Rational ShapleyWeight(unsigned coalition_size, unsigned feature_count) {
  BigInt a, b, c;
  mpz_fac_ui(a.get_mpz_t(), coalition_size);
  mpz_fac_ui(b.get_mpz_t(), feature_count - coalition_size - 1);
  mpz_fac_ui(c.get_mpz_t(), feature_count);
  return MakeRational(a * b, c);
}

}  // namespace xplain
