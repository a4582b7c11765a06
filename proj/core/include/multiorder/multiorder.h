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

#ifndef MULTIORDER_MULTIORDER_H_
#define MULTIORDER_MULTIORDER_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "multiorder/group.h"
#include "multiorder/order.h"

namespace multiorder {

enum class SamplerFamily {
  kDiracStandard,  // the point mass at < on Z
  kPairSwap,       // random dimers on Z
  kHierarchical,   // nested 2^d-ary blocks with random dyadic offsets
};

// Accepts "dirac-standard-Z", "dirac-standard", "standard", "pair-swap-Z",
// "pair-swap" and "hierarchical".
SamplerFamily ParseSamplerFamily(std::string_view name);
std::string SamplerFamilyName(SamplerFamily family);

// A constructive random order of type Z: sample(sampler, seed) is a
// deterministic function of the seed.
struct MultiorderSampler {
  Group group{GroupKind::kZ};
  SamplerFamily family = SamplerFamily::kDiracStandard;
  // pair-swap only: probability that a block is flipped.
  double swap_probability = 0.5;
};

// Throws UsageError for families that do not exist on the sampler's group
// (dirac-standard and pair-swap live on Z only).
LazyOrder sample(const MultiorderSampler& sampler, std::uint64_t seed);

// Pair-swap order with explicit coins, mainly for tests and examples:
// blocks {2n + phase, 2n + phase + 1}, swapped iff swapped(n).
LazyOrder PairSwapOrder(int phase, std::function<bool(std::int64_t)> swapped);

// Hierarchical order on the coordinate lattice Z^d of `group` (H3 uses its
// three coordinates). Blocks at level n are cubes of side 2^n; the offset of
// level n + 1 adds one uniform bit per coordinate times 2^n to the offset of
// level n. Each block orders its 2^d children along a reflected Gray code
// whose start corner and axis order are per-block coins.
class HierarchicalSource final : public OrderSource {
 public:
  HierarchicalSource(Group group, std::uint64_t seed);

  const Group& group() const override { return group_; }
  GroupElement at(OrderIndex k) const override;
  OrderIndex index_of(const GroupElement& g) const override;
  Provenance provenance() const override { return Provenance::kHierarchical; }

  int max_level() const { return max_level_; }
  // Smallest level at which g and the identity lie in one block.
  int CommonLevel(const GroupElement& g) const;

 private:
  using Point = std::array<std::int64_t, 3>;

  unsigned ChildRank(int level, const Point& block, unsigned child_bits) const;
  unsigned ChildBits(int level, const Point& block, unsigned rank) const;

  Group group_;
  std::uint64_t seed_;
  int dim_;
  int max_level_;
  // bits_[n]: per-coordinate offset bits added at the passage n -> n + 1.
  std::vector<unsigned> bits_;
  // Block coordinates of the identity and its rank inside that block.
  std::vector<Point> origin_block_;
  std::vector<std::uint64_t> origin_rank_;
};

// Order B with k^B = k^A · g for every k >= the returned tail start and an
// anchored, seed-shuffled completion below it. The tail start is
// max(requested_start, index of g⁻¹ in A + 1, 1); positions in
// [tail_start - span, tail_start) are shuffled.
struct TailModifiedOrder {
  LazyOrder order;
  OrderIndex tail_start = 0;
};
TailModifiedOrder TailModified(const LazyOrder& base, const GroupElement& g,
                               OrderIndex requested_start, std::uint64_t seed,
                               OrderIndex span = 8);

struct InvarianceEstimate {
  double total_variation = 0.0;
  std::uint64_t samples = 0;
  std::map<OrderPatternKey, std::uint64_t> original_counts;
  std::map<OrderPatternKey, std::uint64_t> acted_counts;
};

// Total variation between the empirical laws of the radius-m pattern of ≺
// and of g(≺) over n_samples orders with seeds split from base_seed.
InvarianceEstimate invariance_test(const MultiorderSampler& sampler, const GroupElement& g,
                                   std::uint32_t radius, std::uint64_t n_samples,
                                   std::uint64_t base_seed = 0, unsigned threads = 1);

// ½ Σ |p - q| over the union of supports.
double TotalVariation(const std::map<OrderPatternKey, std::uint64_t>& a,
                      const std::map<OrderPatternKey, double>& b);
double TotalVariation(const std::map<OrderPatternKey, std::uint64_t>& a,
                      const std::map<OrderPatternKey, std::uint64_t>& b);

}  // namespace multiorder

#endif  // MULTIORDER_MULTIORDER_H_
