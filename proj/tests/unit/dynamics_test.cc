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

#include <gtest/gtest.h>

#include "multiorder/errors.h"
#include "multiorder/multiorder.h"
#include "support/generators.h"

namespace multiorder {
namespace {

using testing::AllGroups;
using testing::Gen;
using testing::SampleFor;

const Group kZ(GroupKind::kZ);

// Σ_{n<=N} 2^-n [x(g_n) != y(g_n)], summed directly.
Dyadic DirectPointDistance(const ShiftConfiguration& x, const ShiftConfiguration& y, std::uint32_t depth) {
  Dyadic sum;
  for (EnumerationIndex n = 1; n <= depth; ++n) {
    const GroupElement g = x.group().enumerate(n);
    if (x.at(g) != y.at(g)) sum += Dyadic::InversePowerOfTwo(n);
  }
  return sum;
}

TEST(ConfigurationTest, RandomIsBalancedAndInAlphabet) {
  const Group z2(GroupKind::kZ2);
  const ShiftConfiguration x = ShiftConfiguration::Random(z2, 3, 5);
  std::array<int, 3> counts{};
  for (const GroupElement& g : z2.folner_box(30)) {
    ASSERT_LT(x.at(g), 3u);
    ++counts[x.at(g)];
  }
  for (int c : counts) EXPECT_NEAR(c / (61.0 * 61.0), 1.0 / 3, 0.03);
}

TEST(ConfigurationTest, PeriodicFormula) {
  const Group z2(GroupKind::kZ2);
  const ShiftConfiguration x = ShiftConfiguration::Periodic(z2, 2, {2, 3});
  for (const GroupElement& g : z2.folner_box(6)) {
    const std::int64_t a = ((g.coords[0] % 2) + 2) % 2, b = ((g.coords[1] % 3) + 3) % 3;
    ASSERT_EQ(x.at(g), static_cast<Symbol>((a + b) % 2));
  }
  const ShiftConfiguration constant = ShiftConfiguration::Periodic(z2, 2, {1});
  for (const GroupElement& g : z2.folner_box(6)) ASSERT_EQ(constant.at(g), 0u);
}

TEST(ConfigurationTest, ParseSpecs) {
  const Group z2(GroupKind::kZ2);
  const ShiftConfiguration r = ShiftConfiguration::Parse(z2, "random:alphabet=2:seed=7");
  const ShiftConfiguration same = ShiftConfiguration::Random(z2, 2, 7);
  for (const GroupElement& g : z2.folner_box(5)) ASSERT_EQ(r.at(g), same.at(g));
  EXPECT_EQ(ShiftConfiguration::Parse(z2, r.spec()).at(z2.Make(3, 4)), r.at(z2.Make(3, 4)));

  const ShiftConfiguration o = ShiftConfiguration::Parse(z2, "overlay:base=periodic:alphabet=2:periods=1:flips=0,0;2,-1");
  EXPECT_EQ(o.at(z2.Make(0, 0)), 1u);
  EXPECT_EQ(o.at(z2.Make(2, -1)), 1u);
  EXPECT_EQ(o.at(z2.Make(1, 1)), 0u);

  for (const char* bad : {"random:alphabet=2", "random:alphabet=0:seed=1", "periodic:alphabet=2:periods=0",
                          "noise:alphabet=2", "random:alphabet=2:seed=x", "overlay:base=random:alphabet=2:seed=1"}) {
    EXPECT_THROW(ShiftConfiguration::Parse(z2, bad), UsageError) << bad;
  }
}

TEST(ConfigurationTest, FlipAlongOrder) {
  const LazyOrder order = SampleFor(kZ, 4);
  const ShiftConfiguration x = ShiftConfiguration::Random(kZ, 2, 1);
  const ShiftConfiguration y = ShiftConfiguration::FlipAlongOrder(x, order, 2);
  for (OrderIndex k = -30; k <= 30; ++k) {
    const GroupElement g = order.at(k);
    ASSERT_EQ(x.at(g) != y.at(g), k >= 0 && k % 2 == 0) << k;
  }
}

TEST(ShiftActionTest, DefinitionAndLeftAction) {
  for (const Group& group : AllGroups()) {
    Gen gen(1);
    const ShiftConfiguration x = ShiftConfiguration::Random(group, 4, 9);
    for (int t = 0; t < 200; ++t) {
      const GroupElement g = gen.Element(group, 5), f = gen.Element(group, 5), h = gen.Element(group, 5);
      ASSERT_EQ(shift_act(g, x).at(h), x.at(group.op(h, g)));
      ASSERT_EQ(shift_act(g, shift_act(f, x)).at(h), shift_act(group.op(g, f), x).at(h)) << group.name();
      ASSERT_EQ(shift_act(group.identity(), x).at(h), x.at(h));
    }
  }
}

TEST(SuccessorTest, OneStep) {
  const Group h(GroupKind::kH3);
  const LazyOrder order = SampleFor(h, 3);
  const ShiftConfiguration x = ShiftConfiguration::Random(h, 2, 3);
  const ProductPoint p{x, order};
  const ProductPoint next = successor_S(p);
  const GroupElement first = order.at(1);
  for (const GroupElement& site : h.folner_box(1)) ASSERT_EQ(next.configuration.at(site), x.at(h.op(site, first)));
  const LazyOrder acted = act(first, order);
  for (OrderIndex i = -10; i <= 10; ++i) ASSERT_EQ(next.order.at(i), acted.at(i));
  const ObservationBox box = MakeObservationBox(h, 1, 5);
  EXPECT_TRUE(EqualOnBox(iterate_S(p, 1), next, box));
  EXPECT_TRUE(EqualOnBox(iterate_S(p, 0), p, box));
}

class OrbitTest : public ::testing::TestWithParam<GroupKind> {};

// S^k(x, ≺) = (k^≺ x, k^≺(≺)) on a radius-4 box for k <= 64, with the
// successor iterated on both a lazy order and a finite window.
TEST_P(OrbitTest, IterationEqualsDirectImage) {
  const Group group(GetParam());
  const ObservationBox box = MakeObservationBox(group, 4, 4);
  EXPECT_EQ(box.sites.size(), static_cast<std::size_t>(std::pow(9, group.dimension())));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LazyOrder order = SampleFor(group, seed);
    const ShiftConfiguration x = ShiftConfiguration::Random(group, 2, seed);
    const ProductPoint lazy{x, order};
    const ProductPoint window{x, Materialize(order, -4, 68)};
    ProductPoint a = lazy, b = window;
    for (OrderIndex k = 1; k <= 64; ++k) {
      a = successor_S(a);
      b = successor_S(b);
      ASSERT_TRUE(EqualOnBox(a, direct_image(lazy, k), box)) << "seed " << seed << " k " << k;
      ASSERT_TRUE(EqualOnBox(b, direct_image(window, k), box));
      ASSERT_TRUE(EqualOnBox(a, b, box));
      for (const GroupElement& site : box.sites) {
        ASSERT_EQ(a.configuration.at(site), x.at(group.op(site, order.at(k))));
      }
    }
    EXPECT_TRUE(EqualOnBox(iterate_S(lazy, 64), a, box));
    const OrbitCheck check = orbit_membership_check(lazy, 1, 16, box);
    EXPECT_TRUE(check.passed);
    ASSERT_EQ(check.witnesses.size(), 16u);
    EXPECT_EQ(check.witnesses[2].second, order.at(3));
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, OrbitTest,
                         ::testing::Values(GroupKind::kZ, GroupKind::kZ2, GroupKind::kZ3, GroupKind::kH3),
                         [](const auto& info) { return Group(info.param).name(); });

TEST(OrbitTest, StandardOrderWitnesses) {
  const ProductPoint p{ShiftConfiguration::Random(kZ, 2, 0), LazyOrder::Standard()};
  const OrbitCheck check = orbit_membership_check(p, 0, 16, MakeObservationBox(kZ, 3, 3));
  EXPECT_TRUE(check.passed);
  for (const auto& [k, g] : check.witnesses) EXPECT_EQ(g, kZ.Make(k));
}

TEST(OrbitTest, WindowTooShortIsHorizonError) {
  const ProductPoint p{ShiftConfiguration::Random(kZ, 2, 0), Materialize(LazyOrder::Standard(), -2, 3)};
  EXPECT_THROW(iterate_S(p, 10), HorizonError);
}

TEST(PointMetricTest, Examples) {
  const ShiftConfiguration x = ShiftConfiguration::Random(kZ, 2, 1);
  EXPECT_TRUE(point_metric(x, x, 8).value.is_zero());
  EXPECT_EQ(point_metric(x, x, 8).error_bound, Dyadic::InversePowerOfTwo(8));
  const ShiftConfiguration at_first = ShiftConfiguration::Flip(x, {kZ.enumerate(1)});
  EXPECT_EQ(point_metric(x, at_first, 8).value, Dyadic::InversePowerOfTwo(1));
  const ShiftConfiguration beyond = ShiftConfiguration::Flip(x, {kZ.enumerate(9), kZ.enumerate(12)});
  EXPECT_TRUE(point_metric(x, beyond, 8).value.is_zero());
  EXPECT_EQ(point_metric(x, beyond, 12).value, Dyadic::Parse("9/4096"));
}

TEST(PointMetricTest, MatchesDirectSum) {
  for (const Group& group : AllGroups()) {
    Gen gen(2);
    for (int t = 0; t < 50; ++t) {
      const ShiftConfiguration x = ShiftConfiguration::Random(group, 2, gen.Seed());
      const ShiftConfiguration y = gen.Coin() ? ShiftConfiguration::Random(group, 2, gen.Seed())
                                              : ShiftConfiguration::Flip(x, gen.Elements(group, 2, 3));
      const auto depth = static_cast<std::uint32_t>(gen.Int(1, 30));
      ASSERT_EQ(point_metric(x, y, depth).value, DirectPointDistance(x, y, depth));
      ASSERT_EQ(point_metric(x, y, depth).value, point_metric(y, x, depth).value);
    }
  }
}

TEST(EntropyTest, IidBinaryIsOneBit) {
  const Group z2(GroupKind::kZ2);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto source = ConfigurationSource::FromSpec(z2, "random:alphabet=2:seed=1", seed);
    const EntropyEstimate e = block_entropy_estimate(source, SampleFor(z2, seed), 10, 10000);
    EXPECT_NEAR(e.bits_per_symbol, 1.0, 0.05);
    EXPECT_EQ(e.samples, 10000u);
  }
}

TEST(EntropyTest, ConstantIsExactlyZero) {
  const Group h(GroupKind::kH3);
  const auto source = ConfigurationSource::FromSpec(h, "periodic:alphabet=2:periods=1", 0);
  const EntropyEstimate e = block_entropy_estimate(source, SampleFor(h, 0), 10, 1000);
  EXPECT_EQ(e.bits_per_symbol, 0.0);
  EXPECT_EQ(e.distinct_words, 1u);
}

// Period 2 along the standard order: two admissible words of any length.
TEST(EntropyTest, PeriodTwoOnStandardOrder) {
  const auto source = ConfigurationSource::FromSpec(kZ, "periodic:alphabet=2:periods=2", 0);
  for (std::uint32_t n : {2u, 10u}) {
    const EntropyEstimate e = block_entropy_estimate(source, LazyOrder::Standard(), n, 4000);
    EXPECT_EQ(e.distinct_words, 2u);
    EXPECT_LE(e.bits_per_symbol, 1.0 / n);
    EXPECT_NEAR(e.bits_per_symbol, 1.0 / n, 0.01);
  }
}

TEST(EntropyTest, RejectsEmptyInputs) {
  const auto source = ConfigurationSource::FromSpec(kZ, "random:alphabet=2:seed=1", 0);
  EXPECT_THROW(block_entropy_estimate(source, LazyOrder::Standard(), 0, 10), UsageError);
  EXPECT_THROW(block_entropy_estimate(source, LazyOrder::Standard(), 3, 0), UsageError);
}

}  // namespace
}  // namespace multiorder
