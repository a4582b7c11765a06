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

#include "multiorder/multiorder.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <utility>

#include "multiorder/errors.h"
#include "multiorder/parallel.h"
#include "multiorder/prf.h"

namespace multiorder {
namespace {

// Position p holds σ(p) before anchoring; σ swaps the two members of every
// flipped block. The anchored bijection is k -> σ(k + σ(0)).
class PairSwapSource final : public OrderSource {
 public:
  PairSwapSource(int phase, std::function<bool(std::int64_t)> swapped)
      : phase_(phase), swapped_(std::move(swapped)), anchor_(Sigma(0)) {}

  const Group& group() const override { return group_; }
  GroupElement at(OrderIndex k) const override { return group_.Make(Sigma(k + anchor_)); }
  OrderIndex index_of(const GroupElement& g) const override {
    if (g.kind != GroupKind::kZ) throw UsageError("pair-swap order lives on Z");
    return Sigma(g.coords[0]) - anchor_;
  }
  Provenance provenance() const override { return Provenance::kPairSwap; }

 private:
  std::int64_t Sigma(std::int64_t p) const {
    const std::int64_t block = (p - phase_) >> 1;
    if (!swapped_(block)) return p;
    const std::int64_t first = 2 * block + phase_;
    return p == first ? first + 1 : first;
  }

  Group group_{GroupKind::kZ};
  int phase_;
  std::function<bool(std::int64_t)> swapped_;
  std::int64_t anchor_;
};

class TailModifiedSource final : public OrderSource {
 public:
  TailModifiedSource(LazyOrder base, GroupElement g, std::unordered_map<OrderIndex, OrderIndex> forward)
      : base_(std::move(base)), g_(g), g_inv_(base_.group().inv(g)), forward_(std::move(forward)) {
    for (const auto& [from, to] : forward_) backward_.emplace(to, from);
  }

  const Group& group() const override { return base_.group(); }
  GroupElement at(OrderIndex k) const override {
    auto it = forward_.find(k);
    return group().op(base_.at(it == forward_.end() ? k : it->second), g_);
  }
  OrderIndex index_of(const GroupElement& h) const override {
    const OrderIndex q = base_.index_of(group().op(h, g_inv_));
    auto it = backward_.find(q);
    return it == backward_.end() ? q : it->second;
  }
  Provenance provenance() const override { return Provenance::kTailModified; }

 private:
  LazyOrder base_;
  GroupElement g_;
  GroupElement g_inv_;
  std::unordered_map<OrderIndex, OrderIndex> forward_;
  std::unordered_map<OrderIndex, OrderIndex> backward_;
};

// The first d! entries permute {0, ..., d-1}.
constexpr std::array<std::array<int, 3>, 6> kAxisPermutations = {{
    {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

int Factorial(int d) { return d == 1 ? 1 : (d == 2 ? 2 : 6); }

unsigned GrayToBinary(unsigned gray) {
  unsigned r = gray;
  for (unsigned shift = 1; shift < 8; shift <<= 1) r ^= r >> shift;
  return r;
}

}  // namespace

SamplerFamily ParseSamplerFamily(std::string_view name) {
  if (name == "dirac-standard-Z" || name == "dirac-standard" || name == "standard") {
    return SamplerFamily::kDiracStandard;
  }
  if (name == "pair-swap-Z" || name == "pair-swap") return SamplerFamily::kPairSwap;
  if (name == "hierarchical") return SamplerFamily::kHierarchical;
  throw UsageError("unknown sampler family '" + std::string(name) + "'");
}

std::string SamplerFamilyName(SamplerFamily family) {
  switch (family) {
    case SamplerFamily::kDiracStandard: return "dirac-standard-Z";
    case SamplerFamily::kPairSwap: return "pair-swap-Z";
    case SamplerFamily::kHierarchical: return "hierarchical";
  }
  return "?";
}

LazyOrder PairSwapOrder(int phase, std::function<bool(std::int64_t)> swapped) {
  if (phase != 0 && phase != 1) throw UsageError("pair-swap phase must be 0 or 1");
  return LazyOrder(std::make_shared<PairSwapSource>(phase, std::move(swapped)));
}

LazyOrder sample(const MultiorderSampler& sampler, std::uint64_t seed) {
  switch (sampler.family) {
    case SamplerFamily::kDiracStandard:
      if (sampler.group.kind() != GroupKind::kZ) {
        throw UsageError("dirac-standard sampler requires group Z");
      }
      return LazyOrder::Standard();
    case SamplerFamily::kPairSwap: {
      if (sampler.group.kind() != GroupKind::kZ) {
        throw UsageError("pair-swap sampler requires group Z");
      }
      const Prf prf(seed);
      const int phase = static_cast<int>(prf.Hash(PrfDomain::kPairSwapPhase, {}) & 1);
      const double p = sampler.swap_probability;
      return PairSwapOrder(phase, [prf, p](std::int64_t block) {
        return prf.Uniform(PrfDomain::kPairSwapBlock, {static_cast<std::uint64_t>(block)}) < p;
      });
    }
    case SamplerFamily::kHierarchical:
      return LazyOrder(std::make_shared<HierarchicalSource>(sampler.group, seed));
  }
  throw UsageError("unknown sampler family");
}

HierarchicalSource::HierarchicalSource(Group group, std::uint64_t seed)
    : group_(group), seed_(seed), dim_(group.dimension()), max_level_(60 / group.dimension()) {
  const Prf prf(seed_);
  const unsigned bit_mask = (1u << dim_) - 1;
  bits_.resize(static_cast<std::size_t>(max_level_));
  for (int n = 0; n < max_level_; ++n) {
    bits_[n] = static_cast<unsigned>(prf.Hash(PrfDomain::kHierarchyOffset, {static_cast<std::uint64_t>(n)})) & bit_mask;
  }
  origin_block_.assign(static_cast<std::size_t>(max_level_) + 1, Point{0, 0, 0});
  origin_rank_.assign(static_cast<std::size_t>(max_level_) + 1, 0);
  for (int n = 0; n < max_level_; ++n) {
    Point parent{0, 0, 0};
    unsigned child = 0;
    for (int i = 0; i < dim_; ++i) {
      const std::int64_t shifted = origin_block_[n][i] - ((bits_[n] >> i) & 1);
      child |= static_cast<unsigned>(shifted & 1) << i;
      parent[i] = shifted >> 1;
    }
    origin_block_[n + 1] = parent;
    origin_rank_[n + 1] = origin_rank_[n] +
        (static_cast<std::uint64_t>(ChildRank(n + 1, parent, child)) << (dim_ * n));
  }
}

unsigned HierarchicalSource::ChildRank(int level, const Point& block, unsigned child_bits) const {
  const std::uint64_t h = Prf(seed_).Hash(
      PrfDomain::kHierarchyOrientation,
      {static_cast<std::uint64_t>(level), static_cast<std::uint64_t>(block[0]),
       static_cast<std::uint64_t>(block[1]), static_cast<std::uint64_t>(block[2])});
  const unsigned mask = static_cast<unsigned>(h) & ((1u << dim_) - 1);
  const auto& perm = kAxisPermutations[(h >> 16) % static_cast<std::uint64_t>(Factorial(dim_))];
  const unsigned c = child_bits ^ mask;
  unsigned gray = 0;
  for (int j = 0; j < dim_; ++j) gray |= ((c >> perm[j]) & 1u) << j;
  return GrayToBinary(gray);
}

unsigned HierarchicalSource::ChildBits(int level, const Point& block, unsigned rank) const {
  const std::uint64_t h = Prf(seed_).Hash(
      PrfDomain::kHierarchyOrientation,
      {static_cast<std::uint64_t>(level), static_cast<std::uint64_t>(block[0]),
       static_cast<std::uint64_t>(block[1]), static_cast<std::uint64_t>(block[2])});
  const unsigned mask = static_cast<unsigned>(h) & ((1u << dim_) - 1);
  const auto& perm = kAxisPermutations[(h >> 16) % static_cast<std::uint64_t>(Factorial(dim_))];
  const unsigned gray = rank ^ (rank >> 1);
  unsigned c = 0;
  for (int j = 0; j < dim_; ++j) c |= ((gray >> j) & 1u) << perm[j];
  return c ^ mask;
}

int HierarchicalSource::CommonLevel(const GroupElement& g) const {
  if (g.kind != group_.kind()) throw UsageError("element from a different group");
  Point block = g.coords;
  int n = 0;
  while (block != origin_block_[n]) {
    if (n == max_level_) {
      throw HorizonError("element " + group_.Encode(g) + " shares no block with the identity below level " +
                         std::to_string(max_level_));
    }
    for (int i = 0; i < dim_; ++i) block[i] = (block[i] - ((bits_[n] >> i) & 1)) >> 1;
    ++n;
  }
  return n;
}

OrderIndex HierarchicalSource::index_of(const GroupElement& g) const {
  if (g.kind != group_.kind()) throw UsageError("element from a different group");
  Point block = g.coords;
  std::uint64_t rank = 0;
  int n = 0;
  while (block != origin_block_[n]) {
    if (n == max_level_) {
      throw HorizonError("element " + group_.Encode(g) + " shares no block with the identity below level " +
                         std::to_string(max_level_));
    }
    Point parent{0, 0, 0};
    unsigned child = 0;
    for (int i = 0; i < dim_; ++i) {
      const std::int64_t shifted = block[i] - ((bits_[n] >> i) & 1);
      child |= static_cast<unsigned>(shifted & 1) << i;
      parent[i] = shifted >> 1;
    }
    rank += static_cast<std::uint64_t>(ChildRank(n + 1, parent, child)) << (dim_ * n);
    block = parent;
    ++n;
  }
  return static_cast<OrderIndex>(rank) - static_cast<OrderIndex>(origin_rank_[n]);
}

GroupElement HierarchicalSource::at(OrderIndex k) const {
  constexpr OrderIndex kLimit = OrderIndex{1} << 61;
  if (k >= kLimit || k <= -kLimit) throw HorizonError("order index beyond hierarchy depth");
  int n = 0;
  for (;; ++n) {
    if (n > max_level_) {
      throw HorizonError("index " + std::to_string(k) + " beyond hierarchy depth");
    }
    const OrderIndex r = static_cast<OrderIndex>(origin_rank_[n]) + k;
    if (r >= 0 && static_cast<std::uint64_t>(r) < (std::uint64_t{1} << (dim_ * n))) break;
  }
  const std::uint64_t rank = origin_rank_[n] + static_cast<std::uint64_t>(k);
  const unsigned digit_mask = (1u << dim_) - 1;
  Point block = origin_block_[n];
  for (int level = n; level >= 1; --level) {
    const unsigned digit = static_cast<unsigned>(rank >> (dim_ * (level - 1))) & digit_mask;
    const unsigned child = ChildBits(level, block, digit);
    Point lower{0, 0, 0};
    for (int i = 0; i < dim_; ++i) {
      lower[i] = 2 * block[i] + ((bits_[level - 1] >> i) & 1) + ((child >> i) & 1);
    }
    block = lower;
  }
  return GroupElement{group_.kind(), block};
}

TailModifiedOrder TailModified(const LazyOrder& base, const GroupElement& g,
                               OrderIndex requested_start, std::uint64_t seed, OrderIndex span) {
  const Group& group = base.group();
  const OrderIndex j = base.index_of(group.inv(g));
  const OrderIndex tail_start = std::max({requested_start, j + 1, OrderIndex{1}});
  const OrderIndex lo = std::min({OrderIndex{0}, j, tail_start - std::max<OrderIndex>(span, 1)});
  std::vector<OrderIndex> domain;
  std::vector<OrderIndex> targets;
  for (OrderIndex p = lo; p < tail_start; ++p) {
    if (p != 0) domain.push_back(p);
    if (p != j) targets.push_back(p);
  }
  const Prf prf(seed);
  for (std::size_t i = targets.size(); i > 1; --i) {
    const std::size_t r = static_cast<std::size_t>(prf.Hash(PrfDomain::kTailCompletion, {i}) % i);
    std::swap(targets[i - 1], targets[r]);
  }
  std::unordered_map<OrderIndex, OrderIndex> forward;
  forward.emplace(0, j);
  for (std::size_t i = 0; i < domain.size(); ++i) forward.emplace(domain[i], targets[i]);
  return {LazyOrder(std::make_shared<TailModifiedSource>(base, g, std::move(forward))), tail_start};
}

double TotalVariation(const std::map<OrderPatternKey, std::uint64_t>& a,
                      const std::map<OrderPatternKey, double>& b) {
  double total_a = 0;
  for (const auto& [key, count] : a) total_a += static_cast<double>(count);
  double total_b = 0;
  for (const auto& [key, weight] : b) total_b += weight;
  if (total_a == 0 || total_b == 0) throw UsageError("total variation of an empty distribution");
  double sum = 0;
  for (const auto& [key, count] : a) {
    auto it = b.find(key);
    const double q = it == b.end() ? 0.0 : it->second / total_b;
    sum += std::abs(static_cast<double>(count) / total_a - q);
  }
  for (const auto& [key, weight] : b) {
    if (!a.contains(key)) sum += weight / total_b;
  }
  return sum / 2;
}

double TotalVariation(const std::map<OrderPatternKey, std::uint64_t>& a,
                      const std::map<OrderPatternKey, std::uint64_t>& b) {
  std::map<OrderPatternKey, double> weights;
  for (const auto& [key, count] : b) weights.emplace(key, static_cast<double>(count));
  return TotalVariation(a, weights);
}

InvarianceEstimate invariance_test(const MultiorderSampler& sampler, const GroupElement& g,
                                   std::uint32_t radius, std::uint64_t n_samples,
                                   std::uint64_t base_seed, unsigned threads) {
  if (n_samples == 0) throw UsageError("invariance test needs at least one sample");
  const Prf root(base_seed);
  std::vector<OrderPatternKey> original(n_samples);
  std::vector<OrderPatternKey> acted(n_samples);
  ParallelFor(n_samples, threads, [&](std::size_t i) {
    const LazyOrder order = sample(sampler, root.Split(i).seed());
    original[i] = pattern_key(order, radius);
    acted[i] = pattern_key(act(g, order), radius);
  });
  InvarianceEstimate estimate;
  estimate.samples = n_samples;
  for (std::size_t i = 0; i < n_samples; ++i) {
    ++estimate.original_counts[original[i]];
    ++estimate.acted_counts[acted[i]];
  }
  estimate.total_variation = TotalVariation(estimate.original_counts, estimate.acted_counts);
  return estimate;
}

}  // namespace multiorder
