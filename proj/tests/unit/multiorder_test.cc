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
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "multiorder/errors.h"
#include "multiorder/prf.h"
#include "support/generators.h"
#include "support/pair_swap_oracle.h"

namespace multiorder {
namespace {

using testing::Gen;
using testing::PairSwapPatternLaw;

const Group kZ(GroupKind::kZ);

bool SameOnRange(const LazyOrder& a, const LazyOrder& b, OrderIndex r) {
  for (OrderIndex i = -r; i <= r; ++i) {
    if (a.at(i) != b.at(i)) return false;
  }
  return true;
}

TEST(SamplerTest, FamilyNames) {
  EXPECT_EQ(ParseSamplerFamily("dirac-standard-Z"), SamplerFamily::kDiracStandard);
  EXPECT_EQ(ParseSamplerFamily("pair-swap"), SamplerFamily::kPairSwap);
  EXPECT_EQ(ParseSamplerFamily(SamplerFamilyName(SamplerFamily::kHierarchical)), SamplerFamily::kHierarchical);
  EXPECT_THROW(ParseSamplerFamily("uniform"), UsageError);
}

TEST(SamplerTest, DiracIsStandard) {
  for (std::uint64_t seed : {0u, 1u, 77u}) {
    EXPECT_TRUE(SameOnRange(sample({kZ, SamplerFamily::kDiracStandard}, seed), LazyOrder::Standard(), 50));
  }
}

TEST(SamplerTest, PairSwapDegenerateCoins) {
  EXPECT_TRUE(SameOnRange(sample({kZ, SamplerFamily::kPairSwap, 0.0}, 3), LazyOrder::Standard(), 50));
  // Every block swapped: σ(0) = ±1 and i^≺ = σ(i + σ(0)) is i or i ± 2.
  const LazyOrder all = sample({kZ, SamplerFamily::kPairSwap, 1.0}, 3);
  int moved = 0;
  for (OrderIndex i = -20; i <= 20; ++i) {
    const std::int64_t step = std::abs(all.at(i).coords[0] - i);
    EXPECT_TRUE(step == 0 || step == 2) << i;
    moved += step == 2;
  }
  EXPECT_GE(moved, 20);
}

TEST(SamplerTest, WrongGroupRejected) {
  EXPECT_THROW(sample({Group(GroupKind::kZ2), SamplerFamily::kPairSwap}, 0), UsageError);
  EXPECT_THROW(sample({Group(GroupKind::kH3), SamplerFamily::kDiracStandard}, 0), UsageError);
}

TEST(SamplerTest, SeedsDetermineOrders) {
  for (GroupKind kind : {GroupKind::kZ2, GroupKind::kH3}) {
    const MultiorderSampler sampler{Group(kind), SamplerFamily::kHierarchical};
    EXPECT_TRUE(SameOnRange(sample(sampler, 5), sample(sampler, 5), 100));
    EXPECT_FALSE(SameOnRange(sample(sampler, 5), sample(sampler, 6), 100));
  }
}

TEST(PairSwapTest, IsInvolutionBijection) {
  Gen gen(1);
  for (int t = 0; t < 50; ++t) {
    const LazyOrder order = sample({kZ, SamplerFamily::kPairSwap, 0.5}, gen.Seed());
    std::set<std::int64_t> values;
    for (OrderIndex i = -100; i <= 100; ++i) {
      const std::int64_t v = order.at(i).coords[0];
      values.insert(v);
      ASSERT_EQ(order.index_of(order.at(i)), i);
    }
    ASSERT_EQ(values.size(), 201u);
    // Every element is within two steps of its position shifted by σ(0).
    ASSERT_LE(*values.rbegin() - *values.begin(), 204);
  }
}

class HierarchicalTest : public ::testing::TestWithParam<GroupKind> {};

TEST_P(HierarchicalTest, CoversBoxesBijectively) {
  const Group group(GetParam());
  const int r = group.dimension() == 2 ? 20 : 6;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const HierarchicalSource source(group, seed);
    for (const GroupElement& g : group.folner_box(r)) {
      if (group.kind() == GroupKind::kH3 && std::abs(g.coords[2]) > r) continue;
      ASSERT_EQ(source.at(source.index_of(g)), g) << group.Encode(g);
    }
    std::set<std::array<std::int64_t, 3>> seen;
    for (OrderIndex k = -2000; k <= 2000; ++k) {
      const GroupElement g = source.at(k);
      ASSERT_TRUE(seen.insert(g.coords).second);
      ASSERT_EQ(source.index_of(g), k);
    }
    EXPECT_EQ(source.at(0), group.identity());
  }
}

// The level-L block of the identity is a cube of side 2^L occupying 2^{dL}
// consecutive positions.
TEST_P(HierarchicalTest, BlocksAreCubesOnIndexIntervals) {
  const Group group(GetParam());
  const int d = group.dimension();
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const HierarchicalSource source(group, seed);
    for (int level = 1; level <= (d == 2 ? 5 : 3); ++level) {
      const OrderIndex size = OrderIndex{1} << (d * level);
      std::vector<OrderIndex> inside;
      for (OrderIndex k = -size; k <= size; ++k) {
        if (source.CommonLevel(source.at(k)) <= level) inside.push_back(k);
      }
      ASSERT_EQ(static_cast<OrderIndex>(inside.size()), size);
      ASSERT_EQ(inside.back() - inside.front() + 1, size);
      std::array<std::int64_t, 3> lo{0, 0, 0}, hi{0, 0, 0};
      for (OrderIndex k : inside) {
        const GroupElement g = source.at(k);
        for (int i = 0; i < d; ++i) {
          lo[i] = std::min(lo[i], g.coords[i]);
          hi[i] = std::max(hi[i], g.coords[i]);
        }
      }
      for (int i = 0; i < d; ++i) ASSERT_EQ(hi[i] - lo[i] + 1, std::int64_t{1} << level);
    }
  }
}

// Consecutive positions are lattice neighbours inside every level-1 block.
TEST_P(HierarchicalTest, GrayCodeSteps) {
  const Group group(GetParam());
  const HierarchicalSource source(group, 3);
  const OrderIndex block = OrderIndex{1} << group.dimension();
  int unit_steps = 0;
  for (OrderIndex k = -1000; k < 1000; ++k) {
    const GroupElement a = source.at(k), b = source.at(k + 1);
    std::int64_t l1 = 0;
    for (int i = 0; i < 3; ++i) l1 += std::abs(a.coords[i] - b.coords[i]);
    unit_steps += l1 == 1;
  }
  // At least the 2^d - 1 steps inside each level-1 block are unit steps.
  EXPECT_GE(unit_steps, 2000 * (block - 1) / block - 2);
}

TEST_P(HierarchicalTest, DistantElementsAreHorizonErrors) {
  const Group group(GetParam());
  const HierarchicalSource source(group, 1);
  const std::int64_t far = std::int64_t{1} << 62;
  EXPECT_THROW(source.index_of(group.Make(far, 0, 0)), HorizonError);
  EXPECT_THROW(source.at(OrderIndex{1} << 62), HorizonError);
}

INSTANTIATE_TEST_SUITE_P(Groups, HierarchicalTest,
                         ::testing::Values(GroupKind::kZ, GroupKind::kZ2, GroupKind::kZ3, GroupKind::kH3),
                         [](const auto& info) { return Group(info.param).name(); });

TEST(TailModifiedTest, TailAndCompletion) {
  const Group z2(GroupKind::kZ2);
  Gen gen(2);
  for (int t = 0; t < 40; ++t) {
    const LazyOrder base = sample({z2, SamplerFamily::kHierarchical}, gen.Seed());
    const GroupElement g = gen.Coin() ? gen.Element(z2, 3) : z2.inv(base.at(gen.Int(-8, 4)));
    if (std::abs(base.index_of(z2.inv(g))) > 1000) continue;
    const TailModifiedOrder modified = TailModified(base, g, 5, gen.Seed());
    EXPECT_EQ(modified.tail_start, std::max<OrderIndex>({5, base.index_of(z2.inv(g)) + 1, 1}));
    const LazyOrder& b = modified.order;
    EXPECT_EQ(b.at(0), z2.identity());
    std::set<std::array<std::int64_t, 3>> seen;
    for (OrderIndex k = -60; k <= modified.tail_start + 60; ++k) {
      ASSERT_TRUE(seen.insert(b.at(k).coords).second);
      ASSERT_EQ(b.index_of(b.at(k)), k);
      if (k >= modified.tail_start) {
        ASSERT_EQ(b.at(k), z2.op(base.at(k), g));
      }
    }
  }
}

TEST(TotalVariationTest, Basics) {
  OrderPatternKey a{0, {kZ.Make(0)}}, b{0, {kZ.Make(1)}};
  std::map<OrderPatternKey, std::uint64_t> p{{a, 3}, {b, 1}};
  std::map<OrderPatternKey, std::uint64_t> q{{a, 1}, {b, 3}};
  EXPECT_DOUBLE_EQ(TotalVariation(p, p), 0.0);
  EXPECT_DOUBLE_EQ(TotalVariation(p, q), 0.5);
  std::map<OrderPatternKey, double> disjoint{{OrderPatternKey{0, {kZ.Make(2)}}, 1.0}};
  EXPECT_DOUBLE_EQ(TotalVariation(p, disjoint), 1.0);
}

TEST(InvarianceTest, DiracAndIdentityAreExactlyInvariant) {
  EXPECT_EQ(invariance_test({kZ, SamplerFamily::kDiracStandard}, kZ.Make(3), 4, 500).total_variation, 0.0);
  const Group z2(GroupKind::kZ2);
  EXPECT_EQ(invariance_test({z2, SamplerFamily::kHierarchical}, z2.identity(), 2, 500).total_variation, 0.0);
}

TEST(InvarianceTest, OracleLawIsNormalized) {
  for (double p : {0.0, 0.3, 0.5, 1.0}) {
    double total = 0;
    for (const auto& [key, weight] : PairSwapPatternLaw(2, p)) total += weight;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
  // With no swaps the only pattern is the standard one.
  EXPECT_EQ(PairSwapPatternLaw(3, 0.0).size(), 1u);
}

TEST(InvarianceTest, PairSwapMatchesExactLaw) {
  for (double p : {0.5, 0.2}) {
    const InvarianceEstimate estimate = invariance_test({kZ, SamplerFamily::kPairSwap, p}, kZ.Make(1), 2, 10000, 17);
    const auto law = PairSwapPatternLaw(2, p);
    EXPECT_LE(TotalVariation(estimate.original_counts, law), 0.05) << p;
    EXPECT_LE(TotalVariation(estimate.acted_counts, law), 0.05) << p;
    for (const auto& [key, count] : estimate.original_counts) EXPECT_TRUE(law.contains(key));
  }
}

TEST(InvarianceTest, ThreadCountDoesNotChangeEstimate) {
  const MultiorderSampler sampler{Group(GroupKind::kZ2), SamplerFamily::kHierarchical};
  const auto one = invariance_test(sampler, sampler.group.Make(1, 0), 1, 2000, 4, 1);
  const auto four = invariance_test(sampler, sampler.group.Make(1, 0), 1, 2000, 4, 4);
  EXPECT_EQ(one.original_counts, four.original_counts);
  EXPECT_EQ(one.total_variation, four.total_variation);
}

// Coarse statistic with few values: which neighbour of the identity comes
// right after it. Its law must not move under the action.
TEST(InvarianceTest, HierarchicalSuccessorLawIsInvariant) {
  const Group z2(GroupKind::kZ2);
  const GroupElement g = z2.Make(1, 0);
  std::map<std::array<std::int64_t, 3>, double> before, after;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const LazyOrder order = sample({z2, SamplerFamily::kHierarchical}, Prf(99).Split(i).seed());
    before[order.at(1).coords] += 1.0 / n;
    after[act(g, order).at(1).coords] += 1.0 / n;
  }
  double tv = 0;
  for (const auto& [key, p] : before) tv += std::abs(p - after[key]);
  for (const auto& [key, q] : after) {
    if (!before.contains(key)) tv += q;
  }
  EXPECT_LE(tv / 2, 0.03);
}

}  // namespace
}  // namespace multiorder
