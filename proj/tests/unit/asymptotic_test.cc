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

#include "multiorder/asymptotic.h"

#include <nlohmann/json.hpp>
#include <gtest/gtest.h>

#include "multiorder/errors.h"
#include "multiorder/multiorder.h"
#include "multiorder/report.h"
#include "support/generators.h"

namespace multiorder {
namespace {

using testing::AllGroups;
using testing::Gen;
using testing::SampleFor;

const Group kZ(GroupKind::kZ);

// 1 + the largest k in [0, scan] at which some of the first `depth`
// enumerated sites of the recentred configuration reads a site of E.
OrderIndex BruteForceThreshold(const Order& order, const std::vector<GroupElement>& differences,
                               std::uint32_t depth, OrderIndex scan) {
  const Group& group = order.group();
  OrderIndex last_bad = -1;
  for (OrderIndex k = 0; k <= scan; ++k) {
    const GroupElement g = order.at(k);
    for (EnumerationIndex n = 1; n <= depth; ++n) {
      const GroupElement read = group.op(group.enumerate(n), g);
      for (const GroupElement& e : differences) {
        if (read == e) last_bad = k;
      }
    }
  }
  return last_bad + 1;
}

TEST(ConstructPairTest, StandardOrderExample) {
  const ShiftConfiguration x = ShiftConfiguration::Random(kZ, 2, 3);
  const ConstructedPair pair = construct_pair(x, LazyOrder::Standard(), {kZ.identity()});
  EXPECT_EQ(pair.certificate.threshold(3), 2);
  const PairVerdict verdict = pair_profile(x, pair.y, LazyOrder::Standard(), 40, 3, &pair.certificate);
  EXPECT_EQ(verdict.tag, VerdictTag::kCertifiedAsymptotic);
  EXPECT_EQ(verdict.certified_from, 2);
  EXPECT_FALSE(verdict.profile[0].distance.value.is_zero());
  EXPECT_FALSE(verdict.profile[1].distance.value.is_zero());
  for (OrderIndex k = 2; k <= 40; ++k) EXPECT_TRUE(verdict.profile[k].distance.value.is_zero()) << k;
  // k is bad at depth N when k = -g_n for some n <= N; on the zigzag the
  // largest such k is floor((N - 1) / 2).
  for (std::uint32_t n = 1; n <= 20; ++n) EXPECT_EQ(pair.certificate.threshold(n), (n - 1) / 2 + 1) << n;
  EXPECT_EQ(pair.certificate.epsilon(0, 3), Dyadic(1));
  EXPECT_EQ(pair.certificate.epsilon(1, 3), Dyadic::InversePowerOfTwo(2));
  EXPECT_EQ(pair.certificate.epsilon(2, 3), Dyadic::InversePowerOfTwo(3));
}

TEST(ConstructPairTest, EmptyDifferenceSetRejected) {
  const ShiftConfiguration x = ShiftConfiguration::Random(kZ, 2, 3);
  EXPECT_THROW(construct_pair(x, LazyOrder::Standard(), {}), UsageError);
}

TEST(ConstructPairTest, ThresholdMatchesBruteForce) {
  for (const Group& group : AllGroups()) {
    Gen gen(1);
    for (int t = 0; t < 12; ++t) {
      const LazyOrder order = SampleFor(group, gen.Seed());
      const std::vector<GroupElement> e = gen.Elements(group, 1, 1 + gen.Int(0, 2));
      const ShiftConfiguration x = ShiftConfiguration::Random(group, 2, gen.Seed());
      const ConstructedPair pair = construct_pair(x, order, e);
      const auto depth = static_cast<std::uint32_t>(gen.Int(1, 8));
      const OrderIndex k0 = pair.certificate.threshold(depth);
      if (k0 > 200000) continue;
      ASSERT_EQ(BruteForceThreshold(order, e, depth, 2 * k0 + 50), k0) << group.name();
    }
  }
}

// Soundness: the profile is exactly 0 from K₀(N) on.
TEST(ConstructPairTest, CertificateIsSound) {
  for (const Group& group : AllGroups()) {
    Gen gen(2);
    for (int t = 0; t < 12; ++t) {
      const LazyOrder order = SampleFor(group, gen.Seed());
      const ShiftConfiguration x = ShiftConfiguration::Random(group, 2, gen.Seed());
      const ConstructedPair pair = construct_pair(x, order, gen.Elements(group, 1, 2));
      const std::uint32_t depth = 6;
      const OrderIndex k0 = pair.certificate.threshold(depth);
      if (k0 > 100000) continue;
      const PairVerdict verdict = pair_profile(x, pair.y, order, k0 + 100, depth, &pair.certificate);
      ASSERT_EQ(verdict.tag, VerdictTag::kCertifiedAsymptotic);
      for (OrderIndex k = k0; k <= k0 + 100; ++k) ASSERT_TRUE(verdict.profile[k].distance.value.is_zero());
      if (k0 > 0) {
        ASSERT_FALSE(verdict.profile[k0 - 1].distance.value.is_zero());
      }
    }
  }
}

TEST(PairProfileTest, EqualConfigurationsAreConsistent) {
  const ShiftConfiguration x = ShiftConfiguration::Random(kZ, 2, 3);
  const PairVerdict verdict = pair_profile(x, x, SampleFor(kZ, 1), 64, 8);
  EXPECT_EQ(verdict.tag, VerdictTag::kConsistentAtHorizon);
  ASSERT_EQ(verdict.profile.size(), 65u);
  for (const ProfileEntry& entry : verdict.profile) {
    EXPECT_TRUE(entry.distance.value.is_zero());
    EXPECT_EQ(entry.distance.error_bound, Dyadic::InversePowerOfTwo(8));
  }
}

TEST(PairProfileTest, FlipsAlongEvenPositionsAreRefuted) {
  for (const Group& group : AllGroups()) {
    const LazyOrder order = SampleFor(group, 5);
    const ShiftConfiguration x = ShiftConfiguration::Random(group, 2, 5);
    const ShiftConfiguration y = ShiftConfiguration::FlipAlongOrder(x, order, 2);
    const PairVerdict verdict = pair_profile(x, y, order, 128, 8);
    EXPECT_EQ(verdict.tag, VerdictTag::kRefuted) << group.name();
    ASSERT_TRUE(verdict.refutation_witness.has_value());
    EXPECT_GE(*verdict.refutation_witness, 64);
    for (OrderIndex k = 64; k <= 128; k += 2) EXPECT_GE(verdict.profile[k].distance.value, Dyadic::InversePowerOfTwo(1));
  }
}

TEST(PairProfileTest, MidRangeTailIsInconclusive) {
  // One flip just past the horizon: at k = K the second site sees it (1/4).
  const ShiftConfiguration x = ShiftConfiguration::Random(kZ, 2, 1);
  const ShiftConfiguration y = ShiftConfiguration::Flip(x, {kZ.Make(41)});
  const PairVerdict verdict = pair_profile(x, y, LazyOrder::Standard(), 40, 8);
  EXPECT_EQ(verdict.profile[40].distance.value, Dyadic::InversePowerOfTwo(2));
  EXPECT_EQ(verdict.tag, VerdictTag::kInconclusive);
  EXPECT_EQ(pair_profile(x, y, LazyOrder::Standard(), 40, 8, nullptr, Dyadic::InversePowerOfTwo(3)).tag,
            VerdictTag::kRefuted);
}

TEST(PairProfileTest, WrongCertificateIsReported) {
  const ShiftConfiguration x = ShiftConfiguration::Random(kZ, 2, 1);
  const ShiftConfiguration y = ShiftConfiguration::Flip(x, {kZ.Make(10)});
  const PairCertificate wrong(LazyOrder::Standard(), {kZ.identity()});
  const PairVerdict verdict = pair_profile(x, y, LazyOrder::Standard(), 64, 8, &wrong);
  EXPECT_TRUE(verdict.certificate_violated);
  EXPECT_NE(verdict.tag, VerdictTag::kCertifiedAsymptotic);
  EXPECT_EQ(verdict.tag, VerdictTag::kConsistentAtHorizon);
}

TEST(AsymptoticOrdersTest, EqualOrders) {
  const LazyOrder order = SampleFor(Group(GroupKind::kZ2), 4);
  const auto witness = orders_asymptotic(order, order, 64);
  ASSERT_TRUE(witness.has_value());
  EXPECT_EQ(witness->k0, 0);
  EXPECT_EQ(witness->g0, order.group().identity());
}

TEST(AsymptoticOrdersTest, TailModifiedPairs) {
  for (const Group& group : AllGroups()) {
    Gen gen(3);
    for (int t = 0; t < 30; ++t) {
      const LazyOrder a = SampleFor(group, gen.Seed());
      const GroupElement g = group.inv(a.at(gen.Int(-8, 4)));
      const TailModifiedOrder b = TailModified(a, g, 5, gen.Seed());
      const auto witness = orders_asymptotic(a, b.order, 256);
      ASSERT_TRUE(witness.has_value()) << group.name();
      EXPECT_LE(witness->k0, b.tail_start);
      EXPECT_EQ(witness->g0, group.inv(g));
      EXPECT_EQ(witness->g0, group.op(group.inv(b.order.at(witness->k0)), a.at(witness->k0)));
      for (OrderIndex k = witness->k0; k <= 256; ++k) ASSERT_EQ(a.at(k), group.op(b.order.at(k), witness->g0));
    }
  }
}

TEST(AsymptoticOrdersTest, AgreesWithBruteForce) {
  for (const Group& group : AllGroups()) {
    Gen gen(4);
    for (int t = 0; t < 40; ++t) {
      const LazyOrder a = SampleFor(group, gen.Seed());
      const OrderIndex horizon = gen.Int(0, 80);
      LazyOrder b = SampleFor(group, gen.Seed());
      switch (gen.Int(0, 2)) {
        case 0:
          break;
        case 1:
          b = TailModified(a, group.inv(a.at(gen.Int(-5, 5))), gen.Int(0, 60), gen.Seed()).order;
          break;
        default:
          b = act(a.at(gen.Int(-3, 3)), a);
      }
      const auto fast = orders_asymptotic(a, b, horizon);
      const auto slow = orders_asymptotic_brute_force(a, b, horizon);
      ASSERT_EQ(fast.has_value(), slow.has_value()) << group.name() << " horizon " << horizon;
      if (fast) {
        ASSERT_EQ(fast->k0, slow->k0);
        ASSERT_EQ(fast->g0, slow->g0);
      }
    }
  }
}

TEST(AsymptoticOrdersTest, IndependentSamplesHaveNoWitness) {
  const Group z2(GroupKind::kZ2);
  int witnesses = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    witnesses += orders_asymptotic(SampleFor(z2, 2 * s), SampleFor(z2, 2 * s + 1), 256).has_value();
  }
  EXPECT_EQ(witnesses, 0);
}

TEST(CrosscheckTest, IdenticalTailModifiedAndCorrupted) {
  for (const Group& group : AllGroups()) {
    Gen gen(5);
    const LazyOrder a = SampleFor(group, gen.Seed());
    const auto same = orders_asymptotic(a, a, 128);
    ASSERT_TRUE(same.has_value());
    EXPECT_TRUE(lemma_metric_crosscheck(a, a, *same, 128, 8));

    const TailModifiedOrder b = TailModified(a, group.inv(a.at(-3)), 5, gen.Seed());
    const auto witness = orders_asymptotic(a, b.order, 128);
    ASSERT_TRUE(witness.has_value());
    const CrosscheckReport report = lemma_metric_crosscheck_report(a, b.order, *witness, 128, 8);
    EXPECT_TRUE(report.passed()) << group.name();
    EXPECT_EQ(report.recentring_step, witness->k0 + 8);
    EXPECT_GT(report.induction_steps, 0u);
    // Past the recentring step both recentred orders coincide on [-N, N].
    const OrderIndex k = report.recentring_step;
    EXPECT_TRUE(order_metric(act(a.at(k), a), act(b.order.at(k), b.order), 8).value.is_zero());

    AsymptoticWitness corrupted = *witness;
    corrupted.g0 = group.op(corrupted.g0, group.Make(1, 0, 0));
    EXPECT_FALSE(lemma_metric_crosscheck(a, b.order, corrupted, 128, 8));
  }
}

TEST(TransferTest, SamePointIsDegenerate) {
  const Group z2(GroupKind::kZ2);
  const ProductPoint p{ShiftConfiguration::Random(z2, 2, 1), SampleFor(z2, 1)};
  const TransferResult result = transfer_pair(p, p, 64, 8);
  EXPECT_TRUE(result.identical);
  EXPECT_EQ(result.witness.g0, z2.identity());
  EXPECT_EQ(result.verdict.tag, VerdictTag::kConsistentAtHorizon);
}

TEST(TransferTest, EqualOrdersReduceToPairProfile) {
  const Group h(GroupKind::kH3);
  const LazyOrder order = SampleFor(h, 2);
  const ShiftConfiguration x = ShiftConfiguration::Random(h, 2, 1);
  const ShiftConfiguration other = ShiftConfiguration::Random(h, 2, 2);
  const TransferResult result = transfer_pair({x, order}, {other, order}, 64, 6);
  const PairVerdict naive = pair_profile(x, other, order, 64, 6);
  ASSERT_EQ(result.verdict.profile.size(), naive.profile.size());
  for (std::size_t k = 0; k < naive.profile.size(); ++k) {
    ASSERT_EQ(result.verdict.profile[k].distance.value, naive.profile[k].distance.value);
  }
  EXPECT_EQ(result.verdict.tag, naive.tag);
}

TEST(TransferTest, MergedOrbitsGiveAsymptoticPair) {
  for (const Group& group : AllGroups()) {
    Gen gen(6);
    const LazyOrder a = SampleFor(group, gen.Seed());
    const GroupElement g = group.inv(a.at(-2));
    const TailModifiedOrder b = TailModified(a, g, 5, gen.Seed());
    const ShiftConfiguration x = ShiftConfiguration::Random(group, 2, gen.Seed());
    // x' = g⁻¹·(x flipped at e), so g₀⁻¹·x' = g·x' is x flipped at e.
    const ShiftConfiguration flipped = ShiftConfiguration::Flip(x, {group.identity()});
    const ShiftConfiguration x_prime = shift_act(group.inv(g), flipped);
    const PairCertificate certificate(a, {group.identity()});
    const std::uint32_t depth = 4;
    const OrderIndex horizon = std::max<OrderIndex>(64, 2 * certificate.threshold(depth));
    if (horizon > 200000) continue;
    const TransferResult result = transfer_pair({x, a}, {x_prime, b.order}, horizon, depth, &certificate);
    EXPECT_EQ(result.witness.g0, group.inv(g));
    EXPECT_FALSE(result.identical);
    EXPECT_EQ(result.verdict.tag, VerdictTag::kCertifiedAsymptotic) << group.name();
    for (const GroupElement& site : group.folner_box(2)) EXPECT_EQ(result.y.at(site), flipped.at(site));
  }
}

TEST(TransferTest, NoWitnessIsPreconditionError) {
  const Group z2(GroupKind::kZ2);
  const ShiftConfiguration x = ShiftConfiguration::Random(z2, 2, 1);
  EXPECT_THROW(transfer_pair({x, SampleFor(z2, 1)}, {x, SampleFor(z2, 2)}, 128, 8), PreconditionError);
}

TEST(ReportTest, VerdictRecordFields) {
  const ShiftConfiguration x = ShiftConfiguration::Random(kZ, 2, 3);
  const ConstructedPair pair = construct_pair(x, LazyOrder::Standard(), {kZ.identity()});
  const PairVerdict verdict = pair_profile(x, pair.y, LazyOrder::Standard(), 8, 3, &pair.certificate);
  const auto json = nlohmann::json::parse(VerdictRecord(verdict, kZ, std::nullopt, true));
  EXPECT_EQ(json["verdict"], "certified-asymptotic");
  EXPECT_EQ(json["k0"], 2);
  EXPECT_EQ(json["K"], 8);
  EXPECT_EQ(json["N"], 3);
  ASSERT_EQ(json["profile"].size(), 9u);
  EXPECT_EQ(json["profile"][5][1], "0");
  EXPECT_EQ(json["profile"][5][2], "1/8");
  EXPECT_EQ(Dyadic::Parse(json["profile"][0][1].get<std::string>()), verdict.profile[0].distance.value);
}

}  // namespace
}  // namespace multiorder
