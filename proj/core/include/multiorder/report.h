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

#ifndef MULTIORDER_REPORT_H_
#define MULTIORDER_REPORT_H_

#include <optional>
#include <string>

#include "multiorder/asymptotic.h"
#include "multiorder/group.h"

namespace multiorder {

// One-line JSON record
//   {"verdict":..., "k0":..., "g0":..., "K":..., "N":..., "profile":[[k,"p/q","p/q"],...]}
// with exact rationals as "p/q" strings. "k0" is the certified threshold
// K₀(N) or the asymptotic-orders witness k₀; "g0" appears only with a witness.
std::string VerdictRecord(const PairVerdict& verdict, const Group& group,
                          const std::optional<AsymptoticWitness>& witness = std::nullopt,
                          bool include_profile = true);

}  // namespace multiorder

#endif  // MULTIORDER_REPORT_H_
