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

#include "multiorder/order.h"

#include <charconv>
#include <istream>
#include <ostream>
#include <utility>

#include "multiorder/errors.h"

namespace multiorder {
namespace {

class StandardSource final : public OrderSource {
 public:
  const Group& group() const override { return group_; }
  GroupElement at(OrderIndex k) const override { return group_.Make(k); }
  OrderIndex index_of(const GroupElement& g) const override {
    if (g.kind != GroupKind::kZ) throw UsageError("standard order lives on Z");
    return g.coords[0];
  }
  Provenance provenance() const override { return Provenance::kStandard; }

 private:
  Group group_{GroupKind::kZ};
};

class RuleSource final : public OrderSource {
 public:
  RuleSource(Group group, std::function<GroupElement(OrderIndex)> rule, OrderIndex cap)
      : group_(group), rule_(std::move(rule)), cap_(cap) {}

  const Group& group() const override { return group_; }
  GroupElement at(OrderIndex k) const override { return rule_(k); }
  OrderIndex index_of(const GroupElement& g) const override {
    for (OrderIndex k = 0; k <= cap_; ++k) {
      if (rule_(k) == g) return k;
      if (k > 0 && rule_(-k) == g) return -k;
    }
    throw HorizonError("element " + group_.Encode(g) + " not found within search cap " +
                       std::to_string(cap_));
  }
  Provenance provenance() const override { return Provenance::kRule; }

 private:
  Group group_;
  std::function<GroupElement(OrderIndex)> rule_;
  OrderIndex cap_;
};

}  // namespace

OrderWindow::OrderWindow(Group group, OrderIndex lo, std::vector<GroupElement> elements) {
  const OrderIndex hi = lo + static_cast<OrderIndex>(elements.size()) - 1;
  if (lo > 0 || hi < 0) throw UsageError("order window must contain index 0");
  if (elements[static_cast<std::size_t>(-lo)] != group.identity()) {
    throw UsageError("order window is not anchored: index 0 holds " +
                     group.Encode(elements[static_cast<std::size_t>(-lo)]));
  }
  auto data = std::make_shared<Data>(Data{group, lo, std::move(elements), {}});
  data->positions.reserve(data->elements.size());
  OrderIndex k = lo;
  for (const GroupElement& g : data->elements) {
    if (g.kind != group.kind()) throw UsageError("order window mixes groups");
    if (!data->positions.emplace(g, k).second) {
      throw UsageError("order window repeats element " + group.Encode(g));
    }
    ++k;
  }
  data_ = std::move(data);
}

GroupElement OrderWindow::at(OrderIndex k) const {
  if (!contains_index(k)) {
    throw HorizonError("index " + std::to_string(k) + " outside window [" + std::to_string(lo()) +
                       ", " + std::to_string(hi()) + "]");
  }
  return data_->elements[static_cast<std::size_t>(k - lo())];
}

OrderIndex OrderWindow::index_of(const GroupElement& g) const {
  auto it = data_->positions.find(g);
  if (it == data_->positions.end()) {
    if (g.kind != group().kind()) throw UsageError("element from a different group");
    throw HorizonError("element " + group().Encode(g) + " outside window [" +
                       std::to_string(lo()) + ", " + std::to_string(hi()) + "]");
  }
  return it->second;
}

std::string ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kStandard: return "standard";
    case Provenance::kPairSwap: return "pair-swap";
    case Provenance::kHierarchical: return "hierarchical";
    case Provenance::kActedUpon: return "acted-upon";
    case Provenance::kTailModified: return "tail-modified";
    case Provenance::kRule: return "rule";
  }
  return "?";
}

LazyOrder::LazyOrder(std::shared_ptr<const OrderSource> source)
    : source_(std::move(source)), right_(source_->group().identity()) {}

LazyOrder LazyOrder::Standard() { return LazyOrder(std::make_shared<StandardSource>()); }

LazyOrder LazyOrder::FromRule(Group group, std::function<GroupElement(OrderIndex)> rule,
                              OrderIndex search_cap) {
  return LazyOrder(std::make_shared<RuleSource>(group, std::move(rule), search_cap));
}

GroupElement LazyOrder::at(OrderIndex k) const {
  return group().op(source_->at(k + shift_), right_);
}

OrderIndex LazyOrder::index_of(const GroupElement& g) const {
  const Group& grp = group();
  return source_->index_of(grp.op(g, grp.inv(right_))) - shift_;
}

Provenance LazyOrder::provenance() const {
  if (shift_ != 0 || right_ != group().identity()) return Provenance::kActedUpon;
  return source_->provenance();
}

LazyOrder LazyOrder::Acted(const GroupElement& g) const {
  // i -> B(i + k + s)·r·g⁻¹ with k the position of g in this order.
  const OrderIndex k = index_of(g);
  LazyOrder result = *this;
  result.shift_ = shift_ + k;
  result.right_ = group().op(right_, group().inv(g));
  return result;
}

const Group& Order::group() const {
  return std::visit([](const auto& o) -> const Group& { return o.group(); }, rep_);
}

GroupElement Order::at(OrderIndex k) const {
  return std::visit([k](const auto& o) { return o.at(k); }, rep_);
}

OrderIndex Order::index_of(const GroupElement& g) const {
  return std::visit([&g](const auto& o) { return o.index_of(g); }, rep_);
}

GroupElement element_at(const Order& order, OrderIndex k) { return order.at(k); }

GroupElement succ(const Order& order, const GroupElement& g) {
  return order.at(order.index_of(g) + 1);
}

std::strong_ordering compare(const Order& order, const GroupElement& a, const GroupElement& b) {
  return order.index_of(a) <=> order.index_of(b);
}

std::vector<GroupElement> interval(const Order& order, const GroupElement& a,
                                   const GroupElement& b) {
  const OrderIndex ia = order.index_of(a);
  const OrderIndex ib = order.index_of(b);
  if (ia > ib) throw UsageError("interval endpoints out of order");
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(ib - ia + 1));
  for (OrderIndex i = ia; i <= ib; ++i) out.push_back(order.at(i));
  return out;
}

OrderWindow act(const GroupElement& g, const OrderWindow& window) {
  const Group& group = window.group();
  const OrderIndex k = window.index_of(g);
  const GroupElement g_inv = group.inv(g);
  std::vector<GroupElement> moved;
  moved.reserve(window.elements().size());
  for (const GroupElement& h : window.elements()) moved.push_back(group.op(h, g_inv));
  return OrderWindow(group, window.lo() - k, std::move(moved));
}

LazyOrder act(const GroupElement& g, const LazyOrder& order) { return order.Acted(g); }

Order act(const GroupElement& g, const Order& order) {
  if (order.is_window()) return act(g, order.window());
  return act(g, order.lazy());
}

Comparator comparator_of(const Order& order) {
  return [order](const GroupElement& a, const GroupElement& b) { return compare(order, a, b); };
}

Comparator act_relational(const Group& group, const GroupElement& g, Comparator comparator) {
  return [group, g, cmp = std::move(comparator)](const GroupElement& a, const GroupElement& b) {
    return cmp(group.op(a, g), group.op(b, g));
  };
}

bool reindex_check(const Order& order, const GroupElement& g, OrderIndex i) {
  const Group& group = order.group();
  const OrderIndex k = order.index_of(g);
  const GroupElement g_inv = group.inv(g);
  const Order moved = act(g, order);
  const bool forward = moved.at(i) == group.op(order.at(i + k), g_inv);
  const bool backward = group.op(order.at(i), g_inv) == moved.at(i - k);
  const bool anchor = moved.at(-k) == g_inv && moved.at(0) == group.identity();
  return forward && backward && anchor;
}

MetricBound order_metric(const Order& a, const Order& b, std::uint32_t depth) {
  if (a.group() != b.group()) throw UsageError("orders on different groups");
  const Group& group = a.group();
  MetricBound bound{Dyadic(), Dyadic::InversePowerOfTwo(depth)};
  const auto n = static_cast<OrderIndex>(depth);
  for (OrderIndex k = -n; k <= n; ++k) {
    Dyadic term = group.rho(a.at(k), b.at(k));
    if (term.is_zero()) continue;
    bound.value += term * Dyadic::InversePowerOfTwo(static_cast<std::uint64_t>(k < 0 ? -k : k));
  }
  return bound;
}

std::string OrderPatternKey::ToString(const Group& group) const {
  std::string out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += ' ';
    out += group.Encode(elements[i]);
  }
  return out;
}

OrderPatternKey pattern_key(const Order& order, std::uint32_t radius) {
  OrderPatternKey key{radius, {}};
  const auto m = static_cast<OrderIndex>(radius);
  key.elements.reserve(2 * radius + 1);
  for (OrderIndex k = -m; k <= m; ++k) key.elements.push_back(order.at(k));
  return key;
}

OrderWindow Materialize(const Order& order, OrderIndex lo, OrderIndex hi) {
  if (lo > 0 || hi < 0) throw UsageError("materialized window must contain index 0");
  std::vector<GroupElement> elements;
  elements.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (OrderIndex k = lo; k <= hi; ++k) elements.push_back(order.at(k));
  return OrderWindow(order.group(), lo, std::move(elements));
}

void WriteWindow(std::ostream& out, const OrderWindow& window) {
  OrderIndex k = window.lo();
  for (const GroupElement& g : window.elements()) {
    out << k++ << '\t' << window.group().Encode(g) << '\n';
  }
}

OrderWindow ReadWindow(std::istream& in, const Group& group) {
  std::string line;
  std::vector<GroupElement> elements;
  OrderIndex lo = 0;
  OrderIndex expected = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw UsageError("order window line " + std::to_string(line_no) + ": missing TAB");
    }
    OrderIndex k = 0;
    auto [end, ec] = std::from_chars(line.data(), line.data() + tab, k);
    if (ec != std::errc() || end != line.data() + tab) {
      throw UsageError("order window line " + std::to_string(line_no) + ": bad index");
    }
    if (elements.empty()) {
      lo = k;
    } else if (k != expected) {
      throw UsageError("order window line " + std::to_string(line_no) +
                       ": indices are not contiguous");
    }
    expected = k + 1;
    elements.push_back(group.Decode(std::string_view(line).substr(tab + 1)));
  }
  if (elements.empty()) throw UsageError("empty order window");
  return OrderWindow(group, lo, std::move(elements));
}

}  // namespace multiorder
