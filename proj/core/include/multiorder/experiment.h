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

#ifndef MULTIORDER_EXPERIMENT_H_
#define MULTIORDER_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multiorder/dyadic.h"
#include "multiorder/group.h"
#include "multiorder/multiorder.h"

namespace multiorder {

using ConfigMap = std::map<std::string, std::string>;

// Every knob of a run. Built from a flat key=value map; ToMap() returns the
// full effective configuration, which is echoed into every report.
struct ExperimentConfig {
  Group group{GroupKind::kZ2};
  SamplerFamily family = SamplerFamily::kHierarchical;
  double swap_probability = 0.5;
  std::vector<std::uint64_t> seeds = {0};
  std::int64_t horizon = 64;        // K
  std::uint32_t depth = 8;          // N
  std::int64_t radius = 32;         // order window radius
  std::uint32_t elements = 20;      // group elements per order
  std::int64_t box_radius = 4;      // observation box half-width
  std::int64_t steps = 64;          // successor iterations
  std::string configuration = "random:alphabet=2:seed=7";
  std::uint64_t samples = 10000;
  std::uint32_t block_length = 10;
  std::optional<std::string> element;
  std::optional<std::string> order_path;
  std::optional<std::string> other_path;
  Dyadic threshold = Dyadic::InversePowerOfTwo(2);
  double tv_tolerance = 0.05;
  std::optional<double> expected_entropy;
  double entropy_tolerance = 0.05;
  bool control = true;
  bool profile = true;
  unsigned threads = 1;
  std::optional<std::string> out;

  // Throws ConfigError on unknown keys or malformed values.
  static ExperimentConfig FromMap(const ConfigMap& values);
  ConfigMap ToMap() const;
};

// Flat "key=value" lines; '#' starts a comment. Throws ConfigError.
ConfigMap ParseConfigText(std::istream& in);
// "0..99", "3,5,8" or "7".
std::vector<std::uint64_t> ParseSeeds(const std::string& text);

struct RunReport {
  std::string command;
  // Line-delimited JSON records: a config header, one record per seed or
  // case, and an aggregate record. Identical configs give identical records.
  std::vector<std::string> records;
  std::string summary;
  bool expectations_met = true;
  double wall_seconds = 0.0;
};

// Writes records (plus a trailing timing record) one per line.
void WriteRecords(std::ostream& out, const RunReport& report);

RunReport cmd_identity_suite(const ExperimentConfig& config);
RunReport cmd_bhr_run(const ExperimentConfig& config);
RunReport cmd_lemma_check(const ExperimentConfig& config);
RunReport cmd_invariance(const ExperimentConfig& config);
RunReport cmd_entropy(const ExperimentConfig& config);

// Single-shot utilities; output is the order-window text or the metric line.
std::string cmd_sample_order(const ExperimentConfig& config);
std::string cmd_act(const ExperimentConfig& config);
std::string cmd_metric(const ExperimentConfig& config);

}  // namespace multiorder

#endif  // MULTIORDER_EXPERIMENT_H_
