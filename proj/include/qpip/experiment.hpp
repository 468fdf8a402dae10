// Copyright 2026 The qpip-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpip/graph.hpp"
#include "qpip/protocol.hpp"

namespace qpip {

inline constexpr const char* kReportSchemaVersion = "1.0";

/// One experiment, parsed from a JSON config file. Unknown fields anywhere
/// in the document are rejected so configs stay reproducible artifacts.
struct ExperimentConfig {
  /// "protocol" (default) or "gi".
  std::string kind = "protocol";

  // Protocol experiments.
  SchemeTag scheme = SchemeTag::Clifford;
  CodeParams params = CodeParams::make(5, 1, 3);
  std::size_t memory_bound = 4;
  Circuit circuit;
  std::vector<std::uint32_t> input;
  ProverStrategy strategy;

  // GI experiments.
  Graph graph1;
  Graph graph2;
  GIMerlin merlin = GIMerlin::Honest;
  std::size_t rounds = 1;

  // Common.
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t parallelism = 1;
  bool log_keys = false;
  bool dump_state = false;

  // Optional sweep axis: "theta", "trials", or "rounds"; exactly one.
  std::optional<std::string> sweep_parameter;
  std::vector<double> sweep_values;

  /// Echo of the validated config, used verbatim in reports.
  nlohmann::json echo;

  static ExperimentConfig from_json(const nlohmann::json& doc);
  static ExperimentConfig from_file(const std::string& path);
};

/// Runs the experiment and returns the report document. Deterministic for a
/// fixed config and seed except for the "timestamp" field.
nlohmann::json run_experiment(const ExperimentConfig& config);

/// One row per sweep value: value, acceptance rate, Wilson bounds, oracle.
std::string sweep_experiment(const ExperimentConfig& config);

}  // namespace qpip
