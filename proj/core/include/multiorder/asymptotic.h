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

#ifndef MULTIORDER_ASYMPTOTIC_H_
#define MULTIORDER_ASYMPTOTIC_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multiorder/dyadic.h"
#include "multiorder/dynamics.h"
#include "multiorder/group.h"
#include "multiorder/order.h"

namespace multiorder {

// A limit cannot be decided by finite computation; every verdict states
// what kind of evidence backs it.
enum class VerdictTag {
  kCertifiedAsymptotic,  // analytic bound ε(k) -> 0 checked against the profile
  kConsistentAtHorizon,  // tail of the profile within 2·2^-N
  kInconclusive,         // tail neither small nor above the refutation threshold
  kRefuted,              // some tail value exceeds the refutation threshold
};

std::string VerdictName(VerdictTag tag);

struct ProfileEntry {
  OrderIndex k = 0;
  MetricBound distance;
};

// Certificate for a finite modification y of x on the set E: at depth N,
// every k >= K₀(N) has point_metric(k^≺x, k^≺y, N).value = 0, where
//   K₀(N) = 1 + max{k >= 0 : k^≺ ∈ ∪_{n<=N} g_n⁻¹·E}   (0 if the set is empty).
class PairCertificate {
 public:
  PairCertificate(Order order, std::vector<GroupElement> differences);

  OrderIndex threshold(std::uint32_t depth) const;
  // Guaranteed bound on d_X(k^≺x, k^≺y) valid for all depths up to
  // max_depth: 2^-N for the largest such N with K₀(N) <= k, else 1.
  Dyadic epsilon(OrderIndex k, std::uint32_t max_depth) const;
  const std::vector<GroupElement>& differences() const { return differences_; }

 private:
  Order order_;
  std::vector<GroupElement> differences_;
};

struct PairVerdict {
  VerdictTag tag = VerdictTag::kInconclusive;
  OrderIndex horizon = 0;
  std::uint32_t depth = 0;
  Dyadic refutation_threshold;
  std::vector<ProfileEntry> profile;
  // Set for certified verdicts: K₀(depth).
  std::optional<OrderIndex> certified_from;
  // Set for refuted verdicts: first tail k above the threshold.
  std::optional<OrderIndex> refutation_witness;
  // A certificate was supplied but the profile contradicts it.
  bool certificate_violated = false;
};

inline Dyadic DefaultRefutationThreshold() { return Dyadic::InversePowerOfTwo(2); }

// Profile of d_X(k^≺x, k^≺y) at depth N for k = 0..K. The tail is
// k >= ceil(K/2).
PairVerdict pair_profile(const ShiftConfiguration& x, const ShiftConfiguration& y, const Order& order,
                         OrderIndex horizon, std::uint32_t depth,
                         const PairCertificate* certificate = nullptr,
                         Dyadic refutation_threshold = DefaultRefutationThreshold());

struct ConstructedPair {
  ShiftConfiguration y;
  PairCertificate certificate;
};

// y = x with every site of E advanced to the next symbol. Throws UsageError
// when E is empty.
ConstructedPair construct_pair(const ShiftConfiguration& x, const Order& order,
                               const std::vector<GroupElement>& differences);

// k^A = k^B · g₀ for all k₀ <= k <= verified_until.
struct AsymptoticWitness {
  OrderIndex k0 = 0;
  GroupElement g0;
  OrderIndex verified_until = 0;
};

// Smallest k₀ <= K/2 with g₀ = (k₀^B)⁻¹ · k₀^A satisfying the relation on
// [k₀, K]; nullopt when there is none below the horizon.
std::optional<AsymptoticWitness> orders_asymptotic(const Order& a, const Order& b, OrderIndex horizon);
// Same contract, by trying every k₀ in turn. Quadratic; used as an oracle.
std::optional<AsymptoticWitness> orders_asymptotic_brute_force(const Order& a, const Order& b,
                                                          OrderIndex horizon);

struct CrosscheckReport {
  bool relation_holds = false;
  // Step from which the depth-N order metric must vanish: k₀ + N.
  OrderIndex recentring_step = 0;
  bool metric_vanishes = false;
  // Induction steps replayed: 1^{S̃^k A} = 1^{S̃^k B} and k^A = k^B g₀
  // imply (k+1)^A = (k+1)^B g₀.
  std::uint64_t induction_steps = 0;
  bool induction_holds = false;
  bool passed() const { return relation_holds && metric_vanishes && induction_holds; }
};

CrosscheckReport lemma_metric_crosscheck_report(const Order& a, const Order& b,
                                                const AsymptoticWitness& witness, OrderIndex horizon,
                                                std::uint32_t depth);
bool lemma_metric_crosscheck(const Order& a, const Order& b, const AsymptoticWitness& witness,
                             OrderIndex horizon, std::uint32_t depth);

struct TransferResult {
  ShiftConfiguration x;
  ShiftConfiguration y;
  AsymptoticWitness witness;
  // y and x are the same configuration object (degenerate pair).
  bool identical = false;
  PairVerdict verdict;
};

// (x, g₀⁻¹·x′) with the profile under pA's order. Throws PreconditionError
// when the two orders have no asymptotic witness at the horizon.
TransferResult transfer_pair(const ProductPoint& pa, const ProductPoint& pb, OrderIndex horizon,
                             std::uint32_t depth, const PairCertificate* certificate = nullptr);

}  // namespace multiorder

#endif  // MULTIORDER_ASYMPTOTIC_H_
