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

#include "multiorder/group.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "multiorder/errors.h"

namespace multiorder {
namespace {

std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Abs(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

// Smallest r >= 0 with (2r+1)^power >= n.
std::uint64_t ShellOf(EnumerationIndex n, int power) {
  auto side_pow = [power](std::uint64_t r) {
    std::uint64_t s = 2 * r + 1;
    std::uint64_t v = 1;
    for (int i = 0; i < power; ++i) v *= s;
    return v;
  };
  double root = power == 2 ? std::sqrt(static_cast<double>(n)) : std::cbrt(static_cast<double>(n));
  std::uint64_t r = root > 1.0 ? static_cast<std::uint64_t>((root - 1.0) / 2.0) : 0;
  while (r > 0 && side_pow(r - 1) >= n) --r;
  while (side_pow(r) < n) ++r;
  return r;
}

EnumerationIndex IntegerIndex(std::int64_t v) {
  if (v == 0) return 1;
  if (v > 0) return 2 * static_cast<std::uint64_t>(v);
  return 2 * Abs(v) + 1;
}

std::int64_t IntegerAt(EnumerationIndex n) {
  if (n % 2 == 0) return static_cast<std::int64_t>(n / 2);
  return -static_cast<std::int64_t>((n - 1) / 2);
}

EnumerationIndex SpiralIndex(std::int64_t x, std::int64_t y) {
  const std::int64_t r = static_cast<std::int64_t>(std::max(Abs(x), Abs(y)));
  if (r == 0) return 1;
  const std::uint64_t before = static_cast<std::uint64_t>((2 * r - 1) * (2 * r - 1));
  std::int64_t p;
  if (x == r && y > -r) {
    p = y + r - 1;
  } else if (y == r) {
    p = 2 * r + (r - 1 - x);
  } else if (x == -r) {
    p = 4 * r + (r - 1 - y);
  } else {
    p = 6 * r + (x + r - 1);
  }
  return before + static_cast<std::uint64_t>(p) + 1;
}

std::array<std::int64_t, 2> SpiralAt(EnumerationIndex n) {
  if (n == 1) return {0, 0};
  const std::int64_t r = static_cast<std::int64_t>(ShellOf(n, 2));
  const std::int64_t p = static_cast<std::int64_t>(n - 1) - (2 * r - 1) * (2 * r - 1);
  const std::int64_t side = p / (2 * r);
  const std::int64_t q = p % (2 * r);
  switch (side) {
    case 0: return {r, -r + 1 + q};
    case 1: return {r - 1 - q, r};
    case 2: return {-r, r - 1 - q};
    default: return {-r + 1 + q, -r};
  }
}

EnumerationIndex ShellLexIndex(const std::array<std::int64_t, 3>& c) {
  const std::int64_t x = c[0], y = c[1], z = c[2];
  const std::int64_t L = static_cast<std::int64_t>(std::max({Abs(x), Abs(y), Abs(z)}));
  if (L == 0) return 1;
  const std::int64_t s = 2 * L + 1;
  const std::int64_t full = s * s;
  const std::int64_t ring = 8 * L;
  const std::int64_t inner = 2 * L - 1;
  std::int64_t offset = 0;
  if (x > -L) offset += full + (x + L - 1) * ring;
  if (x == L || x == -L) {
    offset += (y + L) * s + (z + L);
  } else {
    if (y > -L) offset += s + (y + L - 1) * 2;
    if (y == L || y == -L) {
      offset += z + L;
    } else {
      offset += (z == L) ? 1 : 0;
    }
  }
  return static_cast<std::uint64_t>(inner * inner * inner + offset) + 1;
}

std::array<std::int64_t, 3> ShellLexAt(EnumerationIndex n) {
  if (n == 1) return {0, 0, 0};
  const std::int64_t L = static_cast<std::int64_t>(ShellOf(n, 3));
  const std::int64_t s = 2 * L + 1;
  const std::int64_t full = s * s;
  const std::int64_t ring = 8 * L;
  const std::int64_t inner = 2 * L - 1;
  std::int64_t p = static_cast<std::int64_t>(n - 1) - inner * inner * inner;

  auto full_square = [&](std::int64_t x, std::int64_t q) {
    return std::array<std::int64_t, 3>{x, -L + q / s, -L + q % s};
  };
  auto square_ring = [&](std::int64_t x, std::int64_t q) -> std::array<std::int64_t, 3> {
    if (q < s) return {x, -L, -L + q};
    q -= s;
    const std::int64_t t = q / 2;
    if (t < inner) return {x, -L + 1 + t, (q % 2 == 0) ? -L : L};
    q -= inner * 2;
    return {x, L, -L + q};
  };

  if (p < full) return full_square(-L, p);
  p -= full;
  const std::int64_t t = p / ring;
  if (t < inner) return square_ring(-L + 1 + t, p - t * ring);
  p -= inner * ring;
  return full_square(L, p);
}

}  // namespace

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::uint64_t h = Mix64(static_cast<std::uint64_t>(g.kind) + 0x9E3779B97F4A7C15ULL);
  for (std::int64_t c : g.coords) h = Mix64(h ^ static_cast<std::uint64_t>(c));
  return static_cast<std::size_t>(h);
}

Group Group::Parse(std::string_view name) {
  if (name == "Z") return Group(GroupKind::kZ);
  if (name == "Z2") return Group(GroupKind::kZ2);
  if (name == "Z3") return Group(GroupKind::kZ3);
  if (name == "H3") return Group(GroupKind::kH3);
  throw UsageError("unknown group '" + std::string(name) + "' (expected Z, Z2, Z3 or H3)");
}

std::string Group::name() const {
  switch (kind_) {
    case GroupKind::kZ: return "Z";
    case GroupKind::kZ2: return "Z2";
    case GroupKind::kZ3: return "Z3";
    case GroupKind::kH3: return "H3";
  }
  return "?";
}

int Group::dimension() const {
  switch (kind_) {
    case GroupKind::kZ: return 1;
    case GroupKind::kZ2: return 2;
    default: return 3;
  }
}

GroupElement Group::Make(std::int64_t x, std::int64_t y, std::int64_t z) const {
  GroupElement g{kind_, {x, y, z}};
  CheckMember(g);
  return g;
}

void Group::CheckMember(const GroupElement& g) const {
  if (g.kind != kind_) {
    throw UsageError("element of " + Group(g.kind).name() + " used with group " + name());
  }
  for (int i = dimension(); i < 3; ++i) {
    if (g.coords[i] != 0) throw UsageError("element has coordinates beyond the group dimension");
  }
}

GroupElement Group::op(const GroupElement& a, const GroupElement& b) const {
  CheckMember(a);
  CheckMember(b);
  GroupElement r{kind_, {a.coords[0] + b.coords[0], a.coords[1] + b.coords[1],
                         a.coords[2] + b.coords[2]}};
  if (kind_ == GroupKind::kH3) r.coords[2] += a.coords[0] * b.coords[1];
  return r;
}

GroupElement Group::inv(const GroupElement& a) const {
  CheckMember(a);
  GroupElement r{kind_, {-a.coords[0], -a.coords[1], -a.coords[2]}};
  if (kind_ == GroupKind::kH3) r.coords[2] += a.coords[0] * a.coords[1];
  return r;
}

GroupElement Group::enumerate(EnumerationIndex n) const {
  if (n == 0) throw UsageError("enumeration indices start at 1");
  switch (kind_) {
    case GroupKind::kZ:
      return GroupElement{kind_, {IntegerAt(n), 0, 0}};
    case GroupKind::kZ2: {
      auto [x, y] = SpiralAt(n);
      return GroupElement{kind_, {x, y, 0}};
    }
    default:
      return GroupElement{kind_, ShellLexAt(n)};
  }
}

EnumerationIndex Group::index_of(const GroupElement& g) const {
  CheckMember(g);
  switch (kind_) {
    case GroupKind::kZ: return IntegerIndex(g.coords[0]);
    case GroupKind::kZ2: return SpiralIndex(g.coords[0], g.coords[1]);
    default: return ShellLexIndex(g.coords);
  }
}

Dyadic Group::rho(const GroupElement& a, const GroupElement& b) const {
  if (a == b) {
    CheckMember(a);
    return Dyadic();
  }
  return Dyadic::InversePowerOfTwo(std::min(index_of(a), index_of(b)));
}

std::vector<GroupElement> Group::folner_box(std::int64_t radius) const {
  if (radius < 1) throw UsageError("Folner box radius must be >= 1");
  std::vector<GroupElement> box;
  const int d = dimension();
  const std::int64_t zr = kind_ == GroupKind::kH3 ? radius * radius : radius;
  const std::int64_t yr = d >= 2 ? radius : 0;
  const std::int64_t zr_used = d >= 3 ? zr : 0;
  for (std::int64_t x = -radius; x <= radius; ++x) {
    for (std::int64_t y = -yr; y <= yr; ++y) {
      for (std::int64_t z = -zr_used; z <= zr_used; ++z) {
        box.push_back(GroupElement{kind_, {x, y, z}});
      }
    }
  }
  std::sort(box.begin(), box.end(), [this](const GroupElement& a, const GroupElement& b) {
    return index_of(a) < index_of(b);
  });
  return box;
}

std::string Group::Encode(const GroupElement& g) const {
  CheckMember(g);
  std::string out = std::to_string(g.coords[0]);
  for (int i = 1; i < dimension(); ++i) {
    out += ',';
    out += std::to_string(g.coords[i]);
  }
  return out;
}

GroupElement Group::Decode(std::string_view text) const {
  GroupElement g{kind_, {0, 0, 0}};
  int i = 0;
  std::size_t pos = 0;
  while (true) {
    if (i >= dimension()) {
      throw UsageError("too many coordinates in '" + std::string(text) + "' for " + name());
    }
    std::size_t comma = text.find(',', pos);
    std::string_view part = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc() || end != part.data() + part.size()) {
      throw UsageError("bad element encoding '" + std::string(text) + "'");
    }
    g.coords[i++] = value;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (i != dimension()) {
    throw UsageError("expected " + std::to_string(dimension()) + " coordinates in '" +
                     std::string(text) + "'");
  }
  return g;
}

}  // namespace multiorder
