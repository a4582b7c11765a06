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

#include "multiorder/dynamics.h"

#include <charconv>
#include <cmath>
#include <map>
#include <utility>

#include "multiorder/errors.h"
#include "multiorder/parallel.h"
#include "multiorder/prf.h"

namespace multiorder {
namespace {

void CheckAlphabet(Symbol alphabet) {
  if (alphabet < 2 || alphabet > 256) throw UsageError("alphabet size must be in [2, 256]");
}

std::int64_t FloorMod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

class RandomRule final : public ConfigurationRule {
 public:
  RandomRule(Group group, Symbol alphabet, std::uint64_t seed)
      : group_(group), alphabet_(alphabet), seed_(seed) {}
  const Group& group() const override { return group_; }
  Symbol alphabet() const override { return alphabet_; }
  Symbol symbol(const GroupElement& site) const override {
    const std::uint64_t h = Prf(seed_).Hash(
        PrfDomain::kConfiguration,
        {static_cast<std::uint64_t>(site.coords[0]), static_cast<std::uint64_t>(site.coords[1]),
         static_cast<std::uint64_t>(site.coords[2])});
    return static_cast<Symbol>(h % alphabet_);
  }
  std::string spec() const override {
    return "random:alphabet=" + std::to_string(alphabet_) + ":seed=" + std::to_string(seed_);
  }

 private:
  Group group_;
  Symbol alphabet_;
  std::uint64_t seed_;
};

class PeriodicRule final : public ConfigurationRule {
 public:
  PeriodicRule(Group group, Symbol alphabet, std::vector<std::int64_t> periods)
      : group_(group), alphabet_(alphabet), periods_(std::move(periods)) {}
  const Group& group() const override { return group_; }
  Symbol alphabet() const override { return alphabet_; }
  Symbol symbol(const GroupElement& site) const override {
    std::int64_t sum = 0;
    for (int i = 0; i < group_.dimension(); ++i) sum += FloorMod(site.coords[i], periods_[i]);
    return static_cast<Symbol>(sum % alphabet_);
  }
  std::string spec() const override {
    std::string out = "periodic:alphabet=" + std::to_string(alphabet_) + ":periods=";
    for (std::size_t i = 0; i < periods_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(periods_[i]);
    }
    return out;
  }

 private:
  Group group_;
  Symbol alphabet_;
  std::vector<std::int64_t> periods_;
};

class OverlayRule final : public ConfigurationRule {
 public:
  OverlayRule(ShiftConfiguration base, std::unordered_map<GroupElement, Symbol> differences,
              std::string flips_spec)
      : base_(std::move(base)), differences_(std::move(differences)), flips_spec_(std::move(flips_spec)) {}
  const Group& group() const override { return base_.group(); }
  Symbol alphabet() const override { return base_.alphabet(); }
  Symbol symbol(const GroupElement& site) const override {
    auto it = differences_.find(site);
    return it == differences_.end() ? base_.at(site) : it->second;
  }
  std::string spec() const override {
    const std::string base = base_.spec();
    if (base.empty() || flips_spec_.empty()) return "";
    return "overlay:base=" + base + ":flips=" + flips_spec_;
  }

 private:
  ShiftConfiguration base_;
  std::unordered_map<GroupElement, Symbol> differences_;
  std::string flips_spec_;
};

class OrderFlipRule final : public ConfigurationRule {
 public:
  OrderFlipRule(ShiftConfiguration base, LazyOrder order, std::int64_t stride)
      : base_(std::move(base)), order_(std::move(order)), stride_(stride) {}
  const Group& group() const override { return base_.group(); }
  Symbol alphabet() const override { return base_.alphabet(); }
  Symbol symbol(const GroupElement& site) const override {
    const Symbol s = base_.at(site);
    const OrderIndex k = order_.index_of(site);
    if (k >= 0 && k % stride_ == 0) return (s + 1) % alphabet();
    return s;
  }
  std::string spec() const override { return ""; }

 private:
  ShiftConfiguration base_;
  LazyOrder order_;
  std::int64_t stride_;
};

std::map<std::string, std::string> ParseFields(std::string_view body, std::string_view spec) {
  std::map<std::string, std::string> fields;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t colon = body.find(':', pos);
    std::string_view field = body.substr(pos, colon == std::string_view::npos ? body.npos : colon - pos);
    const std::size_t eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("configuration spec field without '=' in '" + std::string(spec) + "'");
    }
    fields.emplace(std::string(field.substr(0, eq)), std::string(field.substr(eq + 1)));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  return fields;
}

std::uint64_t ParseUnsigned(const std::string& text, std::string_view what) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw UsageError("bad " + std::string(what) + " '" + text + "'");
  }
  return v;
}

const std::string& Require(const std::map<std::string, std::string>& fields, const std::string& key,
                           std::string_view spec) {
  auto it = fields.find(key);
  if (it == fields.end()) throw UsageError("configuration spec '" + std::string(spec) + "' lacks " + key);
  return it->second;
}

std::vector<std::int64_t> ParsePeriods(const Group& group, const std::string& text) {
  std::vector<std::int64_t> periods;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto p = static_cast<std::int64_t>(ParseUnsigned(part, "period"));
    if (p < 1) throw UsageError("periods must be >= 1");
    periods.push_back(p);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (periods.size() == 1) periods.resize(static_cast<std::size_t>(group.dimension()), periods[0]);
  if (periods.size() != static_cast<std::size_t>(group.dimension())) {
    throw UsageError("expected one period or one per coordinate");
  }
  return periods;
}

std::vector<GroupElement> ParseElementList(const Group& group, const std::string& text) {
  std::vector<GroupElement> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t semi = text.find(';', pos);
    const std::string part = text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    if (!part.empty()) out.push_back(group.Decode(part));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  return out;
}

std::string EncodeElementList(const Group& group, const std::vector<GroupElement>& sites) {
  std::string out;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (i) out += ';';
    out += group.Encode(sites[i]);
  }
  return out;
}

// Splits "overlay:base=<spec>:flips=<list>".
std::pair<std::string_view, std::string_view> SplitOverlay(std::string_view body, std::string_view spec) {
  constexpr std::string_view kBase = "base=";
  constexpr std::string_view kFlips = ":flips=";
  const std::size_t flips = body.rfind(kFlips);
  if (body.substr(0, kBase.size()) != kBase || flips == std::string_view::npos) {
    throw UsageError("overlay spec must read overlay:base=<spec>:flips=<elements>, got '" +
                     std::string(spec) + "'");
  }
  return {body.substr(kBase.size(), flips - kBase.size()), body.substr(flips + kFlips.size())};
}

}  // namespace

ShiftConfiguration::ShiftConfiguration(std::shared_ptr<const ConfigurationRule> rule)
    : rule_(std::move(rule)), translation_(rule_->group().identity()) {}

ShiftConfiguration ShiftConfiguration::Random(Group group, Symbol alphabet, std::uint64_t seed) {
  CheckAlphabet(alphabet);
  return ShiftConfiguration(std::make_shared<RandomRule>(group, alphabet, seed));
}

ShiftConfiguration ShiftConfiguration::Periodic(Group group, Symbol alphabet,
                                                std::vector<std::int64_t> periods) {
  CheckAlphabet(alphabet);
  if (periods.size() == 1) periods.resize(static_cast<std::size_t>(group.dimension()), periods[0]);
  if (periods.size() != static_cast<std::size_t>(group.dimension())) {
    throw UsageError("expected one period or one per coordinate");
  }
  for (std::int64_t p : periods) {
    if (p < 1) throw UsageError("periods must be >= 1");
  }
  return ShiftConfiguration(std::make_shared<PeriodicRule>(group, alphabet, std::move(periods)));
}

ShiftConfiguration ShiftConfiguration::Overlay(const ShiftConfiguration& base,
                                               std::unordered_map<GroupElement, Symbol> differences) {
  for (const auto& [site, symbol] : differences) {
    if (symbol >= base.alphabet()) throw UsageError("overlay symbol outside the alphabet");
    if (site.kind != base.group().kind()) throw UsageError("overlay site from a different group");
  }
  return ShiftConfiguration(std::make_shared<OverlayRule>(base, std::move(differences), ""));
}

ShiftConfiguration ShiftConfiguration::Flip(const ShiftConfiguration& base,
                                            const std::vector<GroupElement>& sites) {
  std::unordered_map<GroupElement, Symbol> differences;
  for (const GroupElement& site : sites) {
    if (site.kind != base.group().kind()) throw UsageError("flip site from a different group");
    differences[site] = (base.at(site) + 1) % base.alphabet();
  }
  return ShiftConfiguration(std::make_shared<OverlayRule>(
      base, std::move(differences), EncodeElementList(base.group(), sites)));
}

ShiftConfiguration ShiftConfiguration::FlipAlongOrder(const ShiftConfiguration& base, LazyOrder order,
                                                      std::int64_t stride) {
  if (stride < 1) throw UsageError("stride must be >= 1");
  return ShiftConfiguration(std::make_shared<OrderFlipRule>(base, std::move(order), stride));
}

ShiftConfiguration ShiftConfiguration::Parse(const Group& group, std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view() : spec.substr(colon + 1);
  if (kind == "overlay") {
    auto [base_spec, flips] = SplitOverlay(body, spec);
    ShiftConfiguration base = Parse(group, base_spec);
    return Flip(base, ParseElementList(group, std::string(flips)));
  }
  const auto fields = ParseFields(body, spec);
  const auto alphabet = static_cast<Symbol>(ParseUnsigned(Require(fields, "alphabet", spec), "alphabet"));
  if (kind == "random") {
    return Random(group, alphabet, ParseUnsigned(Require(fields, "seed", spec), "seed"));
  }
  if (kind == "periodic") {
    return Periodic(group, alphabet, ParsePeriods(group, Require(fields, "periods", spec)));
  }
  throw UsageError("unknown configuration kind in '" + std::string(spec) + "'");
}

std::string ShiftConfiguration::spec() const {
  if (translation_ != group().identity()) return "";
  return rule_->spec();
}

Symbol ShiftConfiguration::at(const GroupElement& site) const {
  return rule_->symbol(group().op(site, translation_));
}

ShiftConfiguration ShiftConfiguration::Translated(const GroupElement& g) const {
  ShiftConfiguration moved = *this;
  moved.translation_ = group().op(g, translation_);
  return moved;
}

ShiftConfiguration shift_act(const GroupElement& g, const ShiftConfiguration& x) {
  return x.Translated(g);
}

ProductPoint successor_S(const ProductPoint& p) {
  const GroupElement first = p.order.at(1);
  return ProductPoint{shift_act(first, p.configuration), act(first, p.order)};
}

ProductPoint iterate_S(const ProductPoint& p, std::uint64_t k) {
  ProductPoint current = p;
  for (std::uint64_t i = 0; i < k; ++i) current = successor_S(current);
  return current;
}

ProductPoint direct_image(const ProductPoint& p, OrderIndex k) {
  const GroupElement g = p.order.at(k);
  return ProductPoint{shift_act(g, p.configuration), act(g, p.order)};
}

ObservationBox MakeObservationBox(const Group& group, std::int64_t site_radius, OrderIndex order_radius) {
  ObservationBox box;
  const int d = group.dimension();
  const std::int64_t r1 = d >= 2 ? site_radius : 0;
  const std::int64_t r2 = d >= 3 ? site_radius : 0;
  for (std::int64_t x = -site_radius; x <= site_radius; ++x) {
    for (std::int64_t y = -r1; y <= r1; ++y) {
      for (std::int64_t z = -r2; z <= r2; ++z) box.sites.push_back(GroupElement{group.kind(), {x, y, z}});
    }
  }
  box.order_radius = order_radius;
  return box;
}

bool EqualOnBox(const ProductPoint& a, const ProductPoint& b, const ObservationBox& box) {
  for (const GroupElement& site : box.sites) {
    if (a.configuration.at(site) != b.configuration.at(site)) return false;
  }
  for (OrderIndex i = -box.order_radius; i <= box.order_radius; ++i) {
    if (a.order.at(i) != b.order.at(i)) return false;
  }
  return true;
}

OrbitCheck orbit_membership_check(const ProductPoint& p, OrderIndex first, OrderIndex last,
                                  const ObservationBox& box) {
  if (first < 0 || first > last) throw UsageError("orbit check range must satisfy 0 <= first <= last");
  OrbitCheck check;
  ProductPoint current = iterate_S(p, static_cast<std::uint64_t>(first));
  for (OrderIndex k = first; k <= last; ++k) {
    if (k > first) current = successor_S(current);
    const GroupElement witness = p.order.at(k);
    check.witnesses.emplace_back(k, witness);
    if (!EqualOnBox(current, direct_image(p, k), box)) {
      check.passed = false;
      if (!check.first_failure) check.first_failure = k;
    }
  }
  return check;
}

MetricBound point_metric(const ShiftConfiguration& x, const ShiftConfiguration& y, std::uint32_t depth) {
  if (x.group() != y.group()) throw UsageError("configurations on different groups");
  MetricBound bound{Dyadic(), Dyadic::InversePowerOfTwo(depth)};
  for (EnumerationIndex n = 1; n <= depth; ++n) {
    const GroupElement site = x.group().enumerate(n);
    if (x.at(site) != y.at(site)) bound.value += Dyadic::InversePowerOfTwo(n);
  }
  return bound;
}

ConfigurationSource ConfigurationSource::FromSpec(const Group& group, std::string_view spec,
                                                  std::uint64_t seed) {
  const std::size_t colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view() : spec.substr(colon + 1);
  if (kind == "overlay") {
    auto [base_spec, flips] = SplitOverlay(body, spec);
    ConfigurationSource base = FromSpec(group, base_spec, seed);
    std::vector<GroupElement> sites = ParseElementList(group, std::string(flips));
    return ConfigurationSource([base, sites](std::uint64_t i) {
      return ShiftConfiguration::Flip(base(i), sites);
    });
  }
  const ShiftConfiguration prototype = ShiftConfiguration::Parse(group, spec);
  if (kind == "random") {
    const auto fields = ParseFields(body, spec);
    const Prf root = Prf(ParseUnsigned(Require(fields, "seed", spec), "seed")).Split(seed);
    const Symbol alphabet = prototype.alphabet();
    return ConfigurationSource([group, alphabet, root](std::uint64_t i) {
      return ShiftConfiguration::Random(group, alphabet, root.Split(i).seed());
    });
  }
  const auto fields = ParseFields(body, spec);
  const std::vector<std::int64_t> periods = ParsePeriods(group, Require(fields, "periods", spec));
  const Prf root = Prf(seed);
  return ConfigurationSource([group, prototype, periods, root](std::uint64_t i) {
    GroupElement phase = group.identity();
    for (int c = 0; c < group.dimension(); ++c) {
      phase.coords[c] = static_cast<std::int64_t>(
          root.Hash(PrfDomain::kConfiguration, {i, static_cast<std::uint64_t>(c)}) %
          static_cast<std::uint64_t>(periods[c]));
    }
    return shift_act(phase, prototype);
  });
}

EntropyEstimate block_entropy_estimate(const ConfigurationSource& source, const Order& order,
                                       std::uint32_t block_length, std::uint64_t n_samples,
                                       unsigned threads) {
  if (block_length == 0) throw UsageError("block length must be >= 1");
  if (n_samples == 0) throw UsageError("entropy estimate needs at least one sample");
  std::vector<GroupElement> sites;
  for (OrderIndex k = 0; k < static_cast<OrderIndex>(block_length); ++k) sites.push_back(order.at(k));
  std::vector<std::string> words(n_samples);
  ParallelFor(n_samples, threads, [&](std::size_t i) {
    const ShiftConfiguration x = source(i);
    std::string word(block_length, '\0');
    for (std::size_t j = 0; j < sites.size(); ++j) word[j] = static_cast<char>(x.at(sites[j]));
    words[i] = std::move(word);
  });
  std::map<std::string, std::uint64_t> counts;
  for (const std::string& w : words) ++counts[w];
  double entropy = 0.0;
  const double total = static_cast<double>(n_samples);
  for (const auto& [word, count] : counts) {
    const double p = static_cast<double>(count) / total;
    entropy -= p * std::log2(p);
  }
  return EntropyEstimate{entropy / block_length, counts.size(), n_samples};
}

}  // namespace multiorder
