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

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qpip/config.hpp"
#include "qpip/experiment.hpp"

using namespace qpip;
using nlohmann::json;

namespace {

json honest_doc() {
  return json::parse(R"({
    "scheme": "clifford",
    "circuit": {"wires": 1, "gates": []},
    "input": [0],
    "trials": 50,
    "seed": 12,
    "parallelism": 2
  })");
}

}  // namespace

TEST_CASE("unknown config fields are rejected") {
  json doc = honest_doc();
  doc["surprise"] = 1;
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), ConfigError);

  doc = honest_doc();
  doc["circuit"]["extra"] = true;
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), ConfigError);

  doc = honest_doc();
  doc["strategy"] = {{"kind", "honest"}, {"typo", 3}};
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), ConfigError);
}

TEST_CASE("config validation diagnostics") {
  json doc = honest_doc();
  doc["scheme"] = "teleport";
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), ConfigError);

  doc = honest_doc();
  doc.erase("circuit");
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), ConfigError);

  doc = honest_doc();
  doc["trials"] = 0;
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), ConfigError);

  doc = honest_doc();
  doc["code"] = {{"q", 4}, {"d", 1}, {"m", 3}};
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), ConfigError);

  doc = honest_doc();
  doc["sweep"] = {{"parameter", "voltage"}, {"values", {1.0}}};
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), ConfigError);
}

TEST_CASE("reports are reproducible modulo the timestamp") {
  const ExperimentConfig config = ExperimentConfig::from_json(honest_doc());
  json a = run_experiment(config);
  json b = run_experiment(config);
  CHECK(a["schema_version"] == kReportSchemaVersion);
  a.erase("timestamp");
  b.erase("timestamp");
  CHECK(a.dump() == b.dump());
  CHECK(a["results"]["acceptance_rate"] == 1.0);
  CHECK(a["results"]["oracle_acceptance"] == 1.0);
}

TEST_CASE("every Monte Carlo figure is paired with its oracle") {
  json doc = honest_doc();
  doc["strategy"] = {{"kind", "no_memory"}};
  doc["trials"] = 200;
  const json report = run_experiment(ExperimentConfig::from_json(doc));
  CHECK(report["results"].contains("oracle_acceptance"));
  CHECK(std::abs(report["results"]["oracle_acceptance"].get<double>() - 0.5) <
        1e-9);
  CHECK(report["results"].contains("wilson_low"));
  CHECK(report["results"].contains("wilson_high"));
}

TEST_CASE("state dumps and key logging are opt-in") {
  json doc = honest_doc();
  const json bare = run_experiment(ExperimentConfig::from_json(doc));
  CHECK_FALSE(bare["results"].contains("state_dump"));
  CHECK_FALSE(bare["results"].contains("sample_transcript"));

  doc["dump_state"] = true;
  doc["log_keys"] = true;
  const json full = run_experiment(ExperimentConfig::from_json(doc));
  CHECK(full["results"].contains("state_dump"));
  REQUIRE(full["results"].contains("sample_transcript"));
  bool saw_key = false;
  for (const json& line : full["results"]["sample_transcript"]) {
    if (line["payload"].get<std::string>().find("key_index=") !=
        std::string::npos) {
      saw_key = true;
    }
    CHECK(line.contains("digest"));
    CHECK(line.contains("step"));
  }
  CHECK(saw_key);
}

TEST_CASE("sweeps produce one row per value with the oracle column") {
  json doc = honest_doc();
  doc["strategy"] = {{"kind", "random_unitary"}, {"theta", 0.0},
                     {"attack_step", 0}};
  doc["sweep"] = {{"parameter", "theta"}, {"values", {0.0, 1.5707963267948966}}};
  const std::string csv =
      sweep_experiment(ExperimentConfig::from_json(doc));
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "value,acceptance_rate,wilson_low,wilson_high,oracle");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 2);
  // rejection at theta = 0 is zero: acceptance 1 and oracle 1
  CHECK(csv.find("0,1,") != std::string::npos);
}

TEST_CASE("sweep misuse is rejected") {
  json doc = honest_doc();
  CHECK_THROWS_AS(sweep_experiment(ExperimentConfig::from_json(doc)),
                  ConfigError);
  doc["sweep"] = {{"parameter", "theta"}, {"values", {0.5}}};
  // theta sweeps need the random_unitary strategy
  CHECK_THROWS_AS(sweep_experiment(ExperimentConfig::from_json(doc)),
                  ConfigError);
}

TEST_CASE("reports match the shipped schema") {
  std::ifstream in(std::string(QPIP_SOURCE_DIR) + "/docs/report.schema.json");
  REQUIRE(in.good());
  const json schema = json::parse(in);
  CHECK(schema["properties"]["schema_version"]["const"] ==
        kReportSchemaVersion);

  const json report = run_experiment(ExperimentConfig::from_json(honest_doc()));
  // top-level required keys, and no keys outside the schema's property set
  for (const json& key : schema["required"]) {
    CHECK(report.contains(key.get<std::string>()));
  }
  for (const auto& [key, value] : report.items()) {
    CHECK(schema["properties"].contains(key));
  }
  // protocol results carry every required field of their schema branch
  const json& branch = schema["$defs"]["protocol_results"];
  for (const json& key : branch["required"]) {
    CHECK(report["results"].contains(key.get<std::string>()));
  }
  for (const auto& [key, value] : report["results"].items()) {
    CHECK(branch["properties"].contains(key));
  }
}

TEST_CASE("gi experiments report convince rates and the cheat bound") {
  json doc = json::parse(R"({
    "kind": "gi",
    "graph1": {"n": 4, "edges": [[0,1],[1,2],[2,3],[3,0]]},
    "graph2": {"n": 4, "edges": [[0,2],[2,1],[1,3],[3,0]]},
    "merlin": "cheating",
    "rounds": 3,
    "trials": 400,
    "seed": 21
  })");
  const json report = run_experiment(ExperimentConfig::from_json(doc));
  const json& r = report["results"];
  CHECK(r["cheat_bound"] == 0.125);
  CHECK(r["isomorphic_direction_valid"] == true);
  CHECK(r["convince_rate"].get<double>() < 0.3);
  CHECK(std::abs(r["per_round_success_rate"].get<double>() - 0.5) < 0.1);

  doc["unknown"] = 1;
  CHECK_THROWS_AS(ExperimentConfig::from_json(doc), ConfigError);
}
