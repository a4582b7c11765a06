// Copyright 2026 The Multiorder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MULTIORDER_DYADIC_H_
#define MULTIORDER_DYADIC_H_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace multiorder {

// Exact rational number whose denominator is a power of two.
//
// Every quantity the metrics produce (2^-|k| weights, the ρ values 2^-n and
// their finite sums) lives in this ring, so addition never needs a gcd. The
// value is kept normalized: the numerator is odd or the whole value is zero.
class Dyadic {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Dyadic() = default;
  Dyadic(std::int64_t n) : numerator_(n) {}  // NOLINT(runtime/explicit)

  // 2^-exponent for exponent >= 0.
  static Dyadic InversePowerOfTwo(std::uint64_t exponent);

  const Integer& numerator() const { return numerator_; }
  Integer denominator() const;
  // log2 of the denominator.
  std::uint64_t exponent() const { return exponent_; }
  bool is_zero() const { return numerator_ == 0; }

  Dyadic& operator+=(const Dyadic& other);
  Dyadic& operator-=(const Dyadic& other);
  Dyadic& operator*=(const Dyadic& other);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }
  Dyadic operator-() const;

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  // "p/q" in lowest terms, or "p" when the denominator is 1.
  std::string ToString() const;
  // Parses the ToString() form. Throws UsageError on anything else,
  // including non-dyadic denominators.
  static Dyadic Parse(const std::string& text);

  double ToDouble() const;

  friend std::ostream& operator<<(std::ostream& out, const Dyadic& d) { return out << d.ToString(); }

 private:
  void Normalize();

  Integer numerator_ = 0;
  std::uint64_t exponent_ = 0;
};

}  // namespace multiorder

#endif  // MULTIORDER_DYADIC_H_
