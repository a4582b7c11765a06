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

#ifndef MULTIORDER_ORDER_H_
#define MULTIORDER_ORDER_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "multiorder/dyadic.h"
#include "multiorder/group.h"

namespace multiorder {

// Position in an order of type Z, counted from the identity (position 0).
using OrderIndex = std::int64_t;

inline constexpr OrderIndex kDefaultSearchCap = OrderIndex{1} << 16;

// A finite contiguous segment (bi(lo), ..., bi(hi)) of an anchored bijection
// bi: Z -> G. Queries outside [lo, hi] raise HorizonError.
class OrderWindow {
 public:
  // Throws UsageError unless lo <= 0 <= hi, elements[-lo] is the identity
  // and all elements are distinct members of `group`.
  OrderWindow(Group group, OrderIndex lo, std::vector<GroupElement> elements);

  const Group& group() const { return data_->group; }
  OrderIndex lo() const { return data_->lo; }
  OrderIndex hi() const { return data_->lo + static_cast<OrderIndex>(data_->elements.size()) - 1; }
  bool contains_index(OrderIndex k) const { return k >= lo() && k <= hi(); }
  bool contains(const GroupElement& g) const { return data_->positions.contains(g); }

  GroupElement at(OrderIndex k) const;
  OrderIndex index_of(const GroupElement& g) const;
  std::span<const GroupElement> elements() const { return data_->elements; }

  friend bool operator==(const OrderWindow& a, const OrderWindow& b) {
    return a.group() == b.group() && a.lo() == b.lo() && a.data_->elements == b.data_->elements;
  }

 private:
  struct Data {
    Group group;
    OrderIndex lo;
    std::vector<GroupElement> elements;
    std::unordered_map<GroupElement, OrderIndex> positions;
  };
  std::shared_ptr<const Data> data_;
};

enum class Provenance {
  kStandard,
  kPairSwap,
  kHierarchical,
  kActedUpon,
  kTailModified,
  kRule,
};

std::string ProvenanceName(Provenance p);

// Total anchored bijection k -> k^≺ on all of Z, with an inverse.
// Implementations are immutable and safe to share across threads.
class OrderSource {
 public:
  virtual ~OrderSource() = default;
  virtual const Group& group() const = 0;
  virtual GroupElement at(OrderIndex k) const = 0;
  // May throw HorizonError when the inverse needs more than the computed
  // structure (search cap, hierarchy depth).
  virtual OrderIndex index_of(const GroupElement& g) const = 0;
  virtual Provenance provenance() const = 0;
};

// An order of type Z given by a rule valid for every k.
//
// Internally an order is a source bijection B together with a shift s and a
// right factor r, k^≺ = B(k + s)·r. Acting on a LazyOrder composes these two
// numbers, so iterating the successor map does not nest closures.
class LazyOrder {
 public:
  explicit LazyOrder(std::shared_ptr<const OrderSource> source);

  // The standard order < on Z.
  static LazyOrder Standard();
  // Order defined by `rule` alone; index_of searches |k| <= search_cap.
  // The rule must be an anchored bijection; this is not verified.
  static LazyOrder FromRule(Group group, std::function<GroupElement(OrderIndex)> rule,
                            OrderIndex search_cap = kDefaultSearchCap);

  const Group& group() const { return source_->group(); }
  GroupElement at(OrderIndex k) const;
  OrderIndex index_of(const GroupElement& g) const;

  Provenance provenance() const;
  Provenance source_provenance() const { return source_->provenance(); }
  OrderIndex shift() const { return shift_; }
  const GroupElement& right_factor() const { return right_; }
  const std::shared_ptr<const OrderSource>& source() const { return source_; }

  // The action g(≺); see act().
  LazyOrder Acted(const GroupElement& g) const;

 private:
  std::shared_ptr<const OrderSource> source_;
  OrderIndex shift_ = 0;
  GroupElement right_;
};

// Either representation behind one query surface.
class Order {
 public:
  Order(OrderWindow window) : rep_(std::move(window)) {}  // NOLINT(runtime/explicit)
  Order(LazyOrder lazy) : rep_(std::move(lazy)) {}        // NOLINT(runtime/explicit)

  const Group& group() const;
  GroupElement at(OrderIndex k) const;
  OrderIndex index_of(const GroupElement& g) const;

  bool is_window() const { return std::holds_alternative<OrderWindow>(rep_); }
  const OrderWindow& window() const { return std::get<OrderWindow>(rep_); }
  const LazyOrder& lazy() const { return std::get<LazyOrder>(rep_); }

 private:
  std::variant<OrderWindow, LazyOrder> rep_;
};

GroupElement element_at(const Order& order, OrderIndex k);
GroupElement succ(const Order& order, const GroupElement& g);
std::strong_ordering compare(const Order& order, const GroupElement& a, const GroupElement& b);
// [a, b]^≺ in increasing order. Throws UsageError when b ≺ a.
std::vector<GroupElement> interval(const Order& order, const GroupElement& a,
                                   const GroupElement& b);

// g(≺): i -> (i + k)^≺ · g⁻¹ with k the position of g. A window over
// [lo, hi] becomes a window over [lo - k, hi - k].
OrderWindow act(const GroupElement& g, const OrderWindow& window);
LazyOrder act(const GroupElement& g, const LazyOrder& order);
Order act(const GroupElement& g, const Order& order);

using Comparator = std::function<std::strong_ordering(const GroupElement&, const GroupElement&)>;

Comparator comparator_of(const Order& order);
// a ≺' b  <=>  ag ≺ bg.
Comparator act_relational(const Group& group, const GroupElement& g, Comparator comparator);

// Checks i^{g(≺)} = (i+k)^≺ · g⁻¹ and (-k)^{g(≺)} = g⁻¹ where g = k^≺.
bool reindex_check(const Order& order, const GroupElement& g, OrderIndex i);

struct MetricBound {
  Dyadic value;
  Dyadic error_bound;
  // The true distance lies in [value, value + error_bound].
  Dyadic upper() const { return value + error_bound; }
};

// Σ_{|k|<=N} 2^-|k| ρ(k^A, k^B) with error bound 2^-N.
MetricBound order_metric(const Order& a, const Order& b, std::uint32_t depth);

// The tuple (k^≺) for |k| <= radius, encoded; equality is tuple equality.
struct OrderPatternKey {
  std::uint32_t radius = 0;
  std::vector<GroupElement> elements;

  std::string ToString(const Group& group) const;
  friend bool operator==(const OrderPatternKey&, const OrderPatternKey&) = default;
  friend auto operator<=>(const OrderPatternKey& a, const OrderPatternKey& b) {
    if (auto c = a.radius <=> b.radius; c != 0) return c;
    return std::lexicographical_compare_three_way(
        a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
        [](const GroupElement& x, const GroupElement& y) { return x.coords <=> y.coords; });
  }
};

OrderPatternKey pattern_key(const Order& order, std::uint32_t radius);

OrderWindow Materialize(const Order& order, OrderIndex lo, OrderIndex hi);

// Text format, one line per index: "k<TAB>element". Indices contiguous and
// increasing; must contain index 0 mapped to the identity.
void WriteWindow(std::ostream& out, const OrderWindow& window);
OrderWindow ReadWindow(std::istream& in, const Group& group);

}  // namespace multiorder

#endif  // MULTIORDER_ORDER_H_
