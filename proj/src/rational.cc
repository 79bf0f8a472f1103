// Copyright 2026 The Authors.
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

#include "msplab/rational.h"

#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>

#include "msplab/errors.h"

namespace msplab {
namespace {

__int128 Gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational Make(__int128 num, __int128 den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = Gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(CheckedNarrow(num), CheckedNarrow(den));
}

std::int64_t ParseInt(std::string_view digits, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParameterError("malformed number '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::int64_t CheckedNarrow(__int128 value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw CapacityError("exact arithmetic overflowed 64 bits");
  }
  return static_cast<std::int64_t>(value);
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  if (den < 0) {
    if (num == std::numeric_limits<std::int64_t>::min() ||
        den == std::numeric_limits<std::int64_t>::min()) {
      throw CapacityError("rational sign normalization overflow");
    }
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational Rational::Parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw ParameterError("empty number");
  const std::string_view whole = text;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = ParseInt(text.substr(0, slash), whole);
    std::int64_t d = ParseInt(text.substr(slash + 1), whole);
    return Rational(n, d);
  }

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    exponent = static_cast<int>(ParseInt(exp_text, whole));
    text = text.substr(0, e);
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_point = false;
  for (char c : text) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw ParameterError("malformed number '" + std::string(whole) + "'");
    }
  }
  if (digits.empty()) {
    throw ParameterError("malformed number '" + std::string(whole) + "'");
  }
  __int128 num = 0;
  for (char c : digits) {
    num = num * 10 + (c - '0');
    CheckedNarrow(num);
  }
  __int128 den = 1;
  int scale = frac_digits - exponent;
  for (; scale > 0; --scale) {
    den *= 10;
    CheckedNarrow(den);
  }
  for (; scale < 0; ++scale) {
    num *= 10;
    CheckedNarrow(num);
  }
  return Make(negative ? -num : num, den);
}

double Rational::ToDouble() const {
  return static_cast<double>(ToLongDouble());
}

long double Rational::ToLongDouble() const {
  return static_cast<long double>(num_) / static_cast<long double>(den_);
}

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  return Make(static_cast<__int128>(num_) * o.den_ +
                  static_cast<__int128>(o.num_) * den_,
              static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Make(static_cast<__int128>(num_) * o.den_ -
                  static_cast<__int128>(o.num_) * den_,
              static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Make(static_cast<__int128>(num_) * o.num_,
              static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw ParameterError("division by zero");
  return Make(static_cast<__int128>(num_) * o.den_,
              static_cast<__int128>(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.ToString();
}

}  // namespace msplab
