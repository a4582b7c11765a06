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

#include "multiorder/report.h"

#include <nlohmann/json.hpp>

namespace multiorder {

std::string VerdictRecord(const PairVerdict& verdict, const Group& group,
                          const std::optional<AsymptoticWitness>& witness, bool include_profile) {
  nlohmann::ordered_json record;
  record["verdict"] = VerdictName(verdict.tag);
  if (witness) {
    record["k0"] = witness->k0;
    record["g0"] = group.Encode(witness->g0);
  } else if (verdict.certified_from) {
    record["k0"] = *verdict.certified_from;
  }
  record["K"] = verdict.horizon;
  record["N"] = verdict.depth;
  if (verdict.refutation_witness) record["refuted_at"] = *verdict.refutation_witness;
  if (verdict.certificate_violated) record["certificate_violated"] = true;
  if (include_profile) {
    nlohmann::ordered_json profile = nlohmann::ordered_json::array();
    for (const ProfileEntry& entry : verdict.profile) {
      profile.push_back({entry.k, entry.distance.value.ToString(), entry.distance.error_bound.ToString()});
    }
    record["profile"] = std::move(profile);
  }
  return record.dump();
}

}  // namespace multiorder
