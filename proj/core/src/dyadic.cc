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

#include "multiorder/dyadic.h"

#include <cmath>

#include "multiorder/errors.h"

namespace multiorder {

Dyadic Dyadic::InversePowerOfTwo(std::uint64_t exponent) {
  Dyadic d;
  d.numerator_ = 1;
  d.exponent_ = exponent;
  return d;
}

Dyadic::Integer Dyadic::denominator() const {
  Integer one = 1;
  return one << exponent_;
}

void Dyadic::Normalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  if (exponent_ == 0) return;
  Integer magnitude = abs(numerator_);
  std::uint64_t twos = boost::multiprecision::lsb(magnitude);
  std::uint64_t shift = std::min<std::uint64_t>(twos, exponent_);
  numerator_ >>= shift;
  exponent_ -= shift;
}

Dyadic& Dyadic::operator+=(const Dyadic& other) {
  if (other.numerator_ == 0) return *this;
  if (exponent_ >= other.exponent_) {
    numerator_ += Integer(other.numerator_) << (exponent_ - other.exponent_);
  } else {
    numerator_ <<= (other.exponent_ - exponent_);
    numerator_ += other.numerator_;
    exponent_ = other.exponent_;
  }
  Normalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& other) { return *this += -other; }

Dyadic& Dyadic::operator*=(const Dyadic& other) {
  numerator_ *= other.numerator_;
  exponent_ += other.exponent_;
  Normalize();
  return *this;
}

Dyadic Dyadic::operator-() const {
  Dyadic d = *this;
  d.numerator_ = -d.numerator_;
  return d;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  Dyadic::Integer lhs = a.numerator_;
  Dyadic::Integer rhs = b.numerator_;
  if (a.exponent_ > b.exponent_) {
    rhs <<= (a.exponent_ - b.exponent_);
  } else {
    lhs <<= (b.exponent_ - a.exponent_);
  }
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::ToString() const {
  if (exponent_ == 0) return numerator_.str();
  return numerator_.str() + "/" + denominator().str();
}

Dyadic Dyadic::Parse(const std::string& text) {
  auto parse_integer = [&](const std::string& s) {
    if (s.empty()) throw UsageError("empty rational component in '" + text + "'");
    std::size_t start = (s[0] == '-') ? 1 : 0;
    if (start == s.size()) throw UsageError("bad rational '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw UsageError("bad rational '" + text + "'");
      }
    }
    return Integer(s);
  };
  std::size_t slash = text.find('/');
  Dyadic result;
  if (slash == std::string::npos) {
    result.numerator_ = parse_integer(text);
    return result;
  }
  Integer p = parse_integer(text.substr(0, slash));
  Integer q = parse_integer(text.substr(slash + 1));
  if (q <= 0) throw UsageError("non-positive denominator in '" + text + "'");
  std::uint64_t e = boost::multiprecision::msb(q);
  if ((Integer(1) << e) != q) {
    throw UsageError("denominator is not a power of two in '" + text + "'");
  }
  result.numerator_ = p;
  result.exponent_ = e;
  result.Normalize();
  return result;
}

double Dyadic::ToDouble() const {
  if (numerator_ == 0) return 0.0;
  // Keep at most 64 significant bits before scaling.
  Integer n = numerator_;
  std::int64_t e = -static_cast<std::int64_t>(exponent_);
  std::uint64_t bits = boost::multiprecision::msb(abs(n)) + 1;
  if (bits > 64) {
    n >>= (bits - 64);
    e += static_cast<std::int64_t>(bits - 64);
  }
  return std::ldexp(n.convert_to<double>(), static_cast<int>(std::max<std::int64_t>(e, -100000)));
}

}  // namespace multiorder
