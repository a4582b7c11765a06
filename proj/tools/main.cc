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

// Command-line front end. Exit codes: 0 when every expectation of the run is
// met, 1 on expectation failures, 2 on usage or configuration errors.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multiorder/errors.h"
#include "multiorder/experiment.h"

namespace {

constexpr int kOk = 0;
constexpr int kExpectationFailure = 1;
constexpr int kUsageError = 2;

// Config keys that can be given as --flag on every subcommand.
const std::vector<std::pair<std::string, std::string>> kKeys = {
    {"group", "Z, Z2, Z3 or H3"},
    {"family", "dirac-standard, pair-swap or hierarchical"},
    {"swap_probability", "pair-swap block flip probability"},
    {"seeds", "seed, list a,b,c or range a..b"},
    {"horizon", "scan horizon K"},
    {"depth", "metric depth N"},
    {"radius", "order window radius"},
    {"elements", "group elements per order"},
    {"box_radius", "observation box half-width"},
    {"steps", "successor iterations"},
    {"configuration", "configuration spec"},
    {"samples", "number of samples"},
    {"block_length", "entropy block length n"},
    {"element", "group element, e.g. 1,-2"},
    {"order", "order window file"},
    {"other", "second order window file"},
    {"threshold", "refutation threshold (dyadic, e.g. 1/4)"},
    {"tv_tolerance", "total variation tolerance"},
    {"expected_entropy", "expected bits per symbol"},
    {"entropy_tolerance", "entropy tolerance"},
    {"control", "run the refutation control (true/false)"},
    {"profile", "include distance profiles in records (true/false)"},
    {"threads", "worker threads"},
    {"out", "write records to this file"},
};

std::string FlagName(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return "--" + key;
}

struct Subcommand {
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> flags;
};

void AddConfigFlags(Subcommand& sub) {
  sub.app->add_option("--config", sub.config_path, "flat key=value config file")->check(CLI::ExistingFile);
  for (const auto& [key, help] : kKeys) sub.app->add_option(FlagName(key), sub.flags[key], help);
}

multiorder::ExperimentConfig BuildConfig(const Subcommand& sub) {
  multiorder::ConfigMap values;
  if (!sub.config_path.empty()) {
    std::ifstream in(sub.config_path);
    values = multiorder::ParseConfigText(in);
  }
  for (const auto& [key, value] : sub.flags) {
    if (sub.app->count(FlagName(key)) > 0) values[key] = value;
  }
  return multiorder::ExperimentConfig::FromMap(values);
}

void Emit(const multiorder::ExperimentConfig& config, const std::string& text) {
  if (config.out) {
    std::ofstream out(*config.out);
    if (!out) throw multiorder::ConfigError("cannot write '" + *config.out + "'");
    out << text;
  } else {
    std::cout << text;
  }
}

int RunBatch(const multiorder::ExperimentConfig& config,
             multiorder::RunReport (*command)(const multiorder::ExperimentConfig&)) {
  const multiorder::RunReport report = command(config);
  if (config.out) {
    std::ofstream out(*config.out);
    if (!out) throw multiorder::ConfigError("cannot write '" + *config.out + "'");
    multiorder::WriteRecords(out, report);
    std::cout << report.summary;
  } else {
    multiorder::WriteRecords(std::cout, report);
    std::cerr << report.summary;
  }
  return report.expectations_met ? kOk : kExpectationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random orders of type Z on countable groups and asymptotic pairs"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> names = {
      {"sample-order", "print a window of a sampled order"},
      {"act", "apply a group element to an order window"},
      {"metric", "distance between two order windows"},
      {"identity-suite", "equivariance, reindexing and successor identities"},
      {"lemma-check", "asymptotic-orders detector on constructed and independent pairs"},
      {"invariance", "total variation between a sampler and its translate"},
      {"entropy", "block entropy of a configuration along sampled orders"},
      {"bhr-run", "construct and certify asymptotic pairs"},
  };
  std::map<std::string, Subcommand> subs;
  for (const auto& [name, help] : names) {
    Subcommand& sub = subs[name];
    sub.app = app.add_subcommand(name, help);
    AddConfigFlags(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  for (auto& [name, sub] : subs) {
    if (!sub.app->parsed()) continue;
    try {
      const multiorder::ExperimentConfig config = BuildConfig(sub);
      if (name == "sample-order") {
        Emit(config, multiorder::cmd_sample_order(config));
        return kOk;
      }
      if (name == "act") {
        Emit(config, multiorder::cmd_act(config));
        return kOk;
      }
      if (name == "metric") {
        Emit(config, multiorder::cmd_metric(config));
        return kOk;
      }
      if (name == "identity-suite") return RunBatch(config, multiorder::cmd_identity_suite);
      if (name == "lemma-check") return RunBatch(config, multiorder::cmd_lemma_check);
      if (name == "invariance") return RunBatch(config, multiorder::cmd_invariance);
      if (name == "entropy") return RunBatch(config, multiorder::cmd_entropy);
      if (name == "bhr-run") return RunBatch(config, multiorder::cmd_bhr_run);
    } catch (const multiorder::ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return kUsageError;
    } catch (const multiorder::UsageError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return kUsageError;
    } catch (const multiorder::HorizonError& e) {
      std::cerr << "horizon error: " << e.what() << '\n';
      return kUsageError;
    }
  }
  return kUsageError;
}
