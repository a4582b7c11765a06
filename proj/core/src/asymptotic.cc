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

#include <algorithm>
#include <utility>

#include "multiorder/errors.h"

namespace multiorder {

std::string VerdictName(VerdictTag tag) {
  switch (tag) {
    case VerdictTag::kCertifiedAsymptotic: return "certified-asymptotic";
    case VerdictTag::kConsistentAtHorizon: return "consistent-at-horizon";
    case VerdictTag::kInconclusive: return "inconclusive";
    case VerdictTag::kRefuted: return "refuted";
  }
  return "?";
}

PairCertificate::PairCertificate(Order order, std::vector<GroupElement> differences)
    : order_(std::move(order)), differences_(std::move(differences)) {
  if (differences_.empty()) throw UsageError("a certified pair needs a nonempty difference set");
}

OrderIndex PairCertificate::threshold(std::uint32_t depth) const {
  const Group& group = order_.group();
  OrderIndex last_bad = -1;
  for (EnumerationIndex n = 1; n <= depth; ++n) {
    const GroupElement site_inv = group.inv(group.enumerate(n));
    for (const GroupElement& e : differences_) {
      last_bad = std::max(last_bad, order_.index_of(group.op(site_inv, e)));
    }
  }
  return last_bad + 1;
}

Dyadic PairCertificate::epsilon(OrderIndex k, std::uint32_t max_depth) const {
  // K₀ is nondecreasing in the depth.
  Dyadic bound(1);
  for (std::uint32_t n = 1; n <= max_depth; ++n) {
    if (threshold(n) > k) break;
    bound = Dyadic::InversePowerOfTwo(n);
  }
  return bound;
}

PairVerdict pair_profile(const ShiftConfiguration& x, const ShiftConfiguration& y, const Order& order,
                         OrderIndex horizon, std::uint32_t depth, const PairCertificate* certificate,
                         Dyadic refutation_threshold) {
  if (horizon < 0) throw UsageError("horizon must be >= 0");
  PairVerdict verdict;
  verdict.horizon = horizon;
  verdict.depth = depth;
  verdict.refutation_threshold = refutation_threshold;
  verdict.profile.reserve(static_cast<std::size_t>(horizon) + 1);
  for (OrderIndex k = 0; k <= horizon; ++k) {
    const GroupElement g = order.at(k);
    verdict.profile.push_back({k, point_metric(shift_act(g, x), shift_act(g, y), depth)});
  }

  if (certificate != nullptr) {
    // At depth n the first n sites agree iff the depth-N value is < 2^-n.
    bool sound = true;
    for (std::uint32_t n = 1; n <= depth && sound; ++n) {
      const OrderIndex from = certificate->threshold(n);
      const Dyadic limit = Dyadic::InversePowerOfTwo(n);
      for (OrderIndex k = std::max<OrderIndex>(from, 0); k <= horizon; ++k) {
        if (verdict.profile[static_cast<std::size_t>(k)].distance.value >= limit) {
          sound = false;
          break;
        }
      }
    }
    if (sound) {
      verdict.tag = VerdictTag::kCertifiedAsymptotic;
      verdict.certified_from = certificate->threshold(depth);
      return verdict;
    }
    verdict.certificate_violated = true;
  }

  const OrderIndex tail_start = (horizon + 1) / 2;
  const Dyadic small = Dyadic::InversePowerOfTwo(depth) * Dyadic(2);
  Dyadic tail_max;
  for (OrderIndex k = tail_start; k <= horizon; ++k) {
    const Dyadic& value = verdict.profile[static_cast<std::size_t>(k)].distance.value;
    if (value > refutation_threshold && !verdict.refutation_witness) verdict.refutation_witness = k;
    tail_max = std::max(tail_max, value);
  }
  if (verdict.refutation_witness) {
    verdict.tag = VerdictTag::kRefuted;
  } else if (tail_max <= small) {
    verdict.tag = VerdictTag::kConsistentAtHorizon;
  } else {
    verdict.tag = VerdictTag::kInconclusive;
  }
  return verdict;
}

ConstructedPair construct_pair(const ShiftConfiguration& x, const Order& order,
                               const std::vector<GroupElement>& differences) {
  if (differences.empty()) throw UsageError("construct_pair needs a nonempty set E");
  if (order.group() != x.group()) throw UsageError("order and configuration on different groups");
  return ConstructedPair{ShiftConfiguration::Flip(x, differences), PairCertificate(order, differences)};
}

std::optional<AsymptoticWitness> orders_asymptotic(const Order& a, const Order& b, OrderIndex horizon) {
  if (a.group() != b.group()) throw UsageError("orders on different groups");
  if (horizon < 0) throw UsageError("horizon must be >= 0");
  const Group& group = a.group();
  auto quotient = [&](OrderIndex k) { return group.op(group.inv(b.at(k)), a.at(k)); };
  const GroupElement last = quotient(horizon);
  // k₀ is the start of the longest suffix on which (k^B)⁻¹ k^A is constant.
  OrderIndex k0 = horizon;
  while (k0 > 0 && quotient(k0 - 1) == last) --k0;
  if (k0 > horizon / 2) return std::nullopt;
  return AsymptoticWitness{k0, last, horizon};
}

std::optional<AsymptoticWitness> orders_asymptotic_brute_force(const Order& a, const Order& b,
                                                          OrderIndex horizon) {
  const Group& group = a.group();
  for (OrderIndex k0 = 0; k0 <= horizon / 2; ++k0) {
    const GroupElement g0 = group.op(group.inv(b.at(k0)), a.at(k0));
    bool holds = true;
    for (OrderIndex k = k0; k <= horizon && holds; ++k) holds = a.at(k) == group.op(b.at(k), g0);
    if (holds) return AsymptoticWitness{k0, g0, horizon};
  }
  return std::nullopt;
}

CrosscheckReport lemma_metric_crosscheck_report(const Order& a, const Order& b,
                                                const AsymptoticWitness& witness, OrderIndex horizon,
                                                std::uint32_t depth) {
  const Group& group = a.group();
  CrosscheckReport report;
  report.relation_holds = true;
  for (OrderIndex k = witness.k0; k <= horizon && report.relation_holds; ++k) {
    report.relation_holds = a.at(k) == group.op(b.at(k), witness.g0);
  }

  const auto n = static_cast<OrderIndex>(depth);
  report.recentring_step = witness.k0 + n;
  report.metric_vanishes = report.recentring_step <= horizon - n;
  report.induction_holds = true;
  for (OrderIndex k = witness.k0; k <= horizon - n; ++k) {
    const GroupElement ka = a.at(k);
    const GroupElement kb = b.at(k);
    const Order moved_a = act(ka, a);
    const Order moved_b = act(kb, b);
    if (k >= report.recentring_step &&
        !order_metric(moved_a, moved_b, depth).value.is_zero()) {
      report.metric_vanishes = false;
    }
    if (moved_a.at(1) == moved_b.at(1) && ka == group.op(kb, witness.g0)) {
      ++report.induction_steps;
      if (a.at(k + 1) != group.op(b.at(k + 1), witness.g0)) report.induction_holds = false;
    }
  }
  return report;
}

bool lemma_metric_crosscheck(const Order& a, const Order& b, const AsymptoticWitness& witness,
                             OrderIndex horizon, std::uint32_t depth) {
  return lemma_metric_crosscheck_report(a, b, witness, horizon, depth).passed();
}

TransferResult transfer_pair(const ProductPoint& pa, const ProductPoint& pb, OrderIndex horizon,
                             std::uint32_t depth, const PairCertificate* certificate) {
  std::optional<AsymptoticWitness> witness = orders_asymptotic(pa.order, pb.order, horizon);
  if (!witness) {
    throw PreconditionError("orders are not asymptotic at horizon " + std::to_string(horizon) +
                            "; no transfer element exists");
  }
  const Group& group = pa.order.group();
  ShiftConfiguration y = shift_act(group.inv(witness->g0), pb.configuration);
  const bool identical = y.SharesRepresentation(pa.configuration);
  PairVerdict verdict = pair_profile(pa.configuration, y, pa.order, horizon, depth, certificate);
  return TransferResult{pa.configuration, std::move(y), *witness, identical, std::move(verdict)};
}

}  // namespace multiorder
