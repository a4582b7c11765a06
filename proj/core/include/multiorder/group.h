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

#ifndef MULTIORDER_GROUP_H_
#define MULTIORDER_GROUP_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "multiorder/dyadic.h"

namespace multiorder {

enum class GroupKind : std::uint8_t {
  kZ,   // integers
  kZ2,  // Z^2
  kZ3,  // Z^3
  kH3,  // discrete Heisenberg group, upper unitriangular coordinates
};

// An element of one of the concrete groups. Coordinates past the group's
// dimension are zero. Heisenberg (x, y, z) stands for the matrix
// [[1, x, z], [0, 1, y], [0, 0, 1]].
struct GroupElement {
  GroupKind kind = GroupKind::kZ;
  std::array<std::int64_t, 3> coords = {0, 0, 0};

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

// 1-based position in the canonical enumeration g_1, g_2, ... of a group.
using EnumerationIndex = std::uint64_t;

// One of the supported countable groups, with its law, its canonical
// enumeration and the ρ-metric derived from it.
//
// Canonical enumerations:
//   Z:      0, 1, -1, 2, -2, ...
//   Z2:     square spiral from the origin: (0,0), (1,0), (1,1), (0,1),
//           (-1,1), (-1,0), (-1,-1), (0,-1), (1,-1), (2,-1), ...
//   Z3, H3: shells of constant max(|x|,|y|,|z|), lexicographic inside a shell.
class Group {
 public:
  explicit Group(GroupKind kind) : kind_(kind) {}

  // "Z", "Z2", "Z3" or "H3".
  static Group Parse(std::string_view name);

  GroupKind kind() const { return kind_; }
  std::string name() const;
  int dimension() const;
  bool abelian() const { return kind_ != GroupKind::kH3; }

  GroupElement identity() const { return GroupElement{kind_, {0, 0, 0}}; }
  GroupElement Make(std::int64_t x, std::int64_t y = 0, std::int64_t z = 0) const;

  // Throws UsageError when an operand belongs to a different group.
  GroupElement op(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& a) const;

  GroupElement enumerate(EnumerationIndex n) const;
  EnumerationIndex index_of(const GroupElement& g) const;

  // ρ(a, b) = 0 if a = b, else 2^-min(index_of(a), index_of(b)).
  Dyadic rho(const GroupElement& a, const GroupElement& b) const;

  // Z^d: [-r, r]^d. H3: |x|, |y| <= r and |z| <= r^2. Enumeration order.
  std::vector<GroupElement> folner_box(std::int64_t radius) const;

  // "3", "1,-2", "1,0,2".
  std::string Encode(const GroupElement& g) const;
  GroupElement Decode(std::string_view text) const;

  friend bool operator==(const Group&, const Group&) = default;

 private:
  void CheckMember(const GroupElement& g) const;

  GroupKind kind_;
};

}  // namespace multiorder

template <>
struct std::hash<multiorder::GroupElement> : multiorder::GroupElementHash {};

#endif  // MULTIORDER_GROUP_H_
