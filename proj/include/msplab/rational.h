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

#ifndef MSPLAB_RATIONAL_H_
#define MSPLAB_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace msplab {

// Exact rational with 64-bit numerator and positive 64-bit denominator,
// always stored in lowest terms. Arithmetic that overflows int64 throws
// CapacityError.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);  // NOLINT

  // Accepts "7", "-3/4", "0.125" and "1.5e-3".
  static Rational Parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double ToDouble() const;
  long double ToLongDouble() const;
  std::string ToString() const;

  Rational operator+(const Rational& other) const;
  Rational operator-(const Rational& other) const;
  Rational operator*(const Rational& other) const;
  Rational operator/(const Rational& other) const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Narrows a 128-bit intermediate, throwing CapacityError on overflow.
std::int64_t CheckedNarrow(__int128 value);

}  // namespace msplab

#endif  // MSPLAB_RATIONAL_H_
