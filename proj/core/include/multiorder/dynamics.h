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

#ifndef MULTIORDER_DYNAMICS_H_
#define MULTIORDER_DYNAMICS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "multiorder/group.h"
#include "multiorder/order.h"

namespace multiorder {

using Symbol = std::uint32_t;

// Backing rule of a configuration: a symbol for every site of the group.
class ConfigurationRule {
 public:
  virtual ~ConfigurationRule() = default;
  virtual const Group& group() const = 0;
  virtual Symbol alphabet() const = 0;
  virtual Symbol symbol(const GroupElement& site) const = 0;
  // Spec string that rebuilds this rule, or empty when it has none.
  virtual std::string spec() const = 0;
};

// A point x of the full shift A^G, stored as a rule plus a right
// translation t: x(h) = rule(h·t).
class ShiftConfiguration {
 public:
  explicit ShiftConfiguration(std::shared_ptr<const ConfigurationRule> rule);

  // x(h) = PRF(seed, h) mod alphabet.
  static ShiftConfiguration Random(Group group, Symbol alphabet, std::uint64_t seed);
  // x(h) = (Σ_i (h_i mod periods_i)) mod alphabet. A single period applies
  // to every coordinate; all periods 1 gives the constant configuration 0.
  static ShiftConfiguration Periodic(Group group, Symbol alphabet, std::vector<std::int64_t> periods);
  // base with the symbols on the keys of `differences` replaced.
  static ShiftConfiguration Overlay(const ShiftConfiguration& base,
                                    std::unordered_map<GroupElement, Symbol> differences);
  // base with each site of `sites` advanced to the next symbol mod alphabet.
  static ShiftConfiguration Flip(const ShiftConfiguration& base, const std::vector<GroupElement>& sites);
  // base flipped at every k^≺ with k >= 0 and k divisible by `stride`; an
  // infinite difference set, used as a non-asymptotic control.
  static ShiftConfiguration FlipAlongOrder(const ShiftConfiguration& base, LazyOrder order,
                                           std::int64_t stride = 2);

  // "random:alphabet=2:seed=7", "periodic:alphabet=2:periods=2,3",
  // "overlay:base=<spec>:flips=<e1>;<e2>;...". Throws UsageError.
  static ShiftConfiguration Parse(const Group& group, std::string_view spec);

  const Group& group() const { return rule_->group(); }
  Symbol alphabet() const { return rule_->alphabet(); }
  const GroupElement& translation() const { return translation_; }
  std::string spec() const;

  Symbol at(const GroupElement& site) const;

  // (g·x)(h) = x(h·g). Left action: g·(f·x) = (gf)·x.
  ShiftConfiguration Translated(const GroupElement& g) const;

  // Same rule object and same translation. A false result does not mean
  // the configurations differ.
  bool SharesRepresentation(const ShiftConfiguration& other) const {
    return rule_ == other.rule_ && translation_ == other.translation_;
  }

 private:
  std::shared_ptr<const ConfigurationRule> rule_;
  GroupElement translation_;
};

ShiftConfiguration shift_act(const GroupElement& g, const ShiftConfiguration& x);

// A point (x, ≺) of the product system X × Õ.
struct ProductPoint {
  ShiftConfiguration configuration;
  Order order;
};

// S(x, ≺) = (1^≺ · x, 1^≺(≺)).
ProductPoint successor_S(const ProductPoint& p);
// k-fold composition of successor_S.
ProductPoint iterate_S(const ProductPoint& p, std::uint64_t k);
// (k^≺ · x, k^≺(≺)) computed with one group element.
ProductPoint direct_image(const ProductPoint& p, OrderIndex k);

// A finite set of sites and an order radius on which two product points are
// compared. "Equal" always means equal on this box.
struct ObservationBox {
  std::vector<GroupElement> sites;
  OrderIndex order_radius = 0;
};

ObservationBox MakeObservationBox(const Group& group, std::int64_t site_radius, OrderIndex order_radius);

bool EqualOnBox(const ProductPoint& a, const ProductPoint& b, const ObservationBox& box);

struct OrbitCheck {
  bool passed = true;
  // (k, k^≺) for each k checked.
  std::vector<std::pair<OrderIndex, GroupElement>> witnesses;
  std::optional<OrderIndex> first_failure;
};

// For k in [first, last], checks iterate_S(p, k) = direct_image(p, k) on the
// box. k = 0 has the identity as witness.
OrbitCheck orbit_membership_check(const ProductPoint& p, OrderIndex first, OrderIndex last,
                                  const ObservationBox& box);

// Σ_{n<=N} 2^-n [x(g_n) != y(g_n)] with error bound 2^-N.
MetricBound point_metric(const ShiftConfiguration& x, const ShiftConfiguration& y, std::uint32_t depth);

// Configurations indexed by sample number; used as the law of x.
class ConfigurationSource {
 public:
  // Random specs draw a fresh seed per sample; periodic specs a random
  // phase; overlays apply their flips to the sampled base.
  static ConfigurationSource FromSpec(const Group& group, std::string_view spec, std::uint64_t seed);

  explicit ConfigurationSource(std::function<ShiftConfiguration(std::uint64_t)> draw)
      : draw_(std::move(draw)) {}
  ShiftConfiguration operator()(std::uint64_t sample) const { return draw_(sample); }

 private:
  std::function<ShiftConfiguration(std::uint64_t)> draw_;
};

struct EntropyEstimate {
  double bits_per_symbol = 0.0;
  std::uint64_t distinct_words = 0;
  std::uint64_t samples = 0;
};

// Empirical Shannon entropy (base 2) of (x(k^≺))_{0<=k<n} over sampled x,
// divided by n.
EntropyEstimate block_entropy_estimate(const ConfigurationSource& source, const Order& order,
                                       std::uint32_t block_length, std::uint64_t n_samples,
                                       unsigned threads = 1);

}  // namespace multiorder

#endif  // MULTIORDER_DYNAMICS_H_
