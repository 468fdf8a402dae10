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

#include "qpip/experiment.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "qpip/config.hpp"

namespace qpip {
namespace {

using nlohmann::json;

void expect_keys(const json& obj, const std::vector<std::string>& allowed,
                 const std::string& where) {
  if (!obj.is_object()) {
    throw ConfigError(where + " must be a JSON object");
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const auto& a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown field \"" + key + "\" in " + where);
    }
  }
}

Eigen::MatrixXcd parse_matrix(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) {
    throw ConfigError(where + " must be a non-empty array of rows");
  }
  const std::size_t n = rows.size();
  Eigen::MatrixXcd m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) {
      throw ConfigError(where + " must be square");
    }
    for (std::size_t c = 0; c < n; ++c) {
      const json& e = rows[r][c];
      if (!e.is_array() || e.size() != 2) {
        throw ConfigError(where + " entries must be [re, im] pairs");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Circuit parse_circuit(const json& doc) {
  expect_keys(doc, {"wires", "gates"}, "circuit");
  Circuit circuit;
  circuit.wires = doc.value("wires", std::size_t{1});
  if (circuit.wires < 1) throw ConfigError("circuit needs at least one wire");
  for (const json& g : doc.value("gates", json::array())) {
    expect_keys(g, {"name", "wires", "matrix"}, "circuit.gates[]");
    GateSpec gate;
    gate.name = g.at("name").get<std::string>();
    gate.wires = g.at("wires").get<std::vector<std::size_t>>();
    if (g.contains("matrix")) {
      gate.matrix = parse_matrix(g["matrix"], "gate matrix");
    }
    circuit.gates.push_back(std::move(gate));
  }
  return circuit;
}

ProverStrategy parse_strategy(const json& doc) {
  expect_keys(doc,
              {"kind", "attack_step", "pauli", "theta", "site", "x_exp",
               "z_exp"},
              "strategy");
  ProverStrategy s;
  const std::string kind = doc.value("kind", std::string("honest"));
  if (kind == "honest") {
    s.kind = StrategyKind::Honest;
  } else if (kind == "fixed_pauli") {
    s.kind = StrategyKind::FixedPauli;
  } else if (kind == "random_unitary") {
    s.kind = StrategyKind::RandomUnitary;
  } else if (kind == "no_memory") {
    s.kind = StrategyKind::NoMemory;
  } else if (kind == "measure_resend") {
    s.kind = StrategyKind::MeasureResend;
  } else {
    throw ConfigError("unknown strategy kind \"" + kind + "\"");
  }
  s.attack_step = doc.value("attack_step", std::size_t{0});
  if (doc.contains("pauli")) {
    s.pauli = PauliPair::from_name(doc["pauli"].get<std::string>());
  }
  s.theta = doc.value("theta", 0.0);
  s.attack_site = doc.value("site", std::size_t{0});
  s.gen_x_exp = doc.value("x_exp", std::uint32_t{0});
  s.gen_z_exp = doc.value("z_exp", std::uint32_t{0});
  return s;
}

Graph parse_graph(const json& doc, const std::string& where) {
  expect_keys(doc, {"n", "edges"}, where);
  const std::size_t n = doc.at("n").get<std::size_t>();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const json& e : doc.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 2) {
      throw ConfigError(where + " edges must be [u, v] pairs");
    }
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return Graph::from_edges(n, edges);
}

std::string iso_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

VerifierConfig verifier_config(const ExperimentConfig& config) {
  VerifierConfig vc;
  vc.scheme = config.scheme;
  vc.memory_bound = config.memory_bound;
  vc.params = config.params;
  vc.log_keys = config.log_keys;
  vc.dump_state = config.dump_state;
  return vc;
}

json run_protocol_experiment(const ExperimentConfig& config) {
  const VerifierConfig vc = verifier_config(config);
  auto trial_fn = [&](RandomStream& rng) {
    return config.scheme == SchemeTag::Clifford
               ? run_clifford_protocol(config.circuit, config.input,
                                       config.strategy, vc, rng)
               : run_poly_protocol(config.circuit, config.input,
                                   config.strategy, vc, rng);
  };
  const EstimateSummary s =
      estimate(trial_fn, config.seed, config.trials, config.parallelism);

  json oracle = nullptr;
  try {
    oracle = exact_acceptance_oracle(config.circuit, config.strategy, vc);
  } catch (const ConfigError&) {
    // No exact oracle for this configuration; the report says so.
  }

  json results = {{"trials", s.trials},
                  {"accepted", s.accepted},
                  {"rejected", s.rejected},
                  {"aborted", s.aborted},
                  {"acceptance_rate", s.acceptance_rate},
                  {"wilson_low", s.interval.low},
                  {"wilson_high", s.interval.high},
                  {"mean_fidelity_given_accept", s.mean_fidelity_given_accept},
                  {"oracle_acceptance", oracle}};

  if (config.dump_state || config.log_keys) {
    RandomStream sample_rng = RandomStream::substream(config.seed, 0);
    const TrialResult sample = trial_fn(sample_rng);
    json lines = json::array();
    std::istringstream stream(sample.transcript.to_json_lines());
    for (std::string line; std::getline(stream, line);) {
      lines.push_back(json::parse(line));
    }
    results["sample_transcript"] = lines;
    if (config.dump_state && !sample.state_dump.empty()) {
      results["state_dump"] = json::parse(sample.state_dump);
    }
  }
  return results;
}

json run_gi_experiment(const ExperimentConfig& config) {
  std::size_t convinced = 0;
  std::size_t round_successes = 0;
  std::size_t round_total = 0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    RandomStream rng = RandomStream::substream(config.seed, t);
    const GIResult r = run_gi_protocol(config.graph1, config.graph2,
                                       config.merlin, config.rounds, rng);
    if (r.convinced) ++convinced;
    for (const bool ok : r.round_success) {
      ++round_total;
      if (ok) ++round_successes;
    }
  }
  const WilsonInterval wi = wilson_interval(convinced, config.trials);
  return {{"trials", config.trials},
          {"rounds", config.rounds},
          {"convinced", convinced},
          {"convince_rate", double(convinced) / double(config.trials)},
          {"wilson_low", wi.low},
          {"wilson_high", wi.high},
          {"per_round_success_rate",
           round_total ? double(round_successes) / double(round_total) : 0.0},
          {"cheat_bound", std::pow(0.5, double(config.rounds))},
          {"isomorphic_direction_valid",
           run_gi_isomorphic_direction(config.graph1, config.graph2)}};
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  expect_keys(doc,
              {"kind", "scheme", "code", "memory_bound", "circuit", "input",
               "strategy", "graph1", "graph2", "merlin", "rounds", "trials",
               "seed", "parallelism", "log_keys", "dump_state", "sweep"},
              "config");
  ExperimentConfig config;
  config.kind = doc.value("kind", std::string("protocol"));
  if (config.kind != "protocol" && config.kind != "gi") {
    throw ConfigError("config kind must be \"protocol\" or \"gi\"");
  }

  if (config.kind == "protocol") {
    const std::string scheme = doc.value("scheme", std::string("clifford"));
    if (scheme == "clifford") {
      config.scheme = SchemeTag::Clifford;
    } else if (scheme == "polynomial") {
      config.scheme = SchemeTag::Polynomial;
    } else {
      throw ConfigError("scheme must be \"clifford\" or \"polynomial\"");
    }
    if (doc.contains("code")) {
      expect_keys(doc["code"], {"q", "d", "m"}, "code");
      config.params = CodeParams::make(doc["code"].value("q", 5u),
                                       doc["code"].value("d", 1u),
                                       doc["code"].value("m", 3u));
    }
    config.memory_bound = doc.value("memory_bound", std::size_t{4});
    if (!doc.contains("circuit")) {
      throw ConfigError("protocol configs need a circuit");
    }
    config.circuit = parse_circuit(doc["circuit"]);
    config.input =
        doc.value("input", std::vector<std::uint32_t>(config.circuit.wires, 0));
    if (doc.contains("strategy")) {
      config.strategy = parse_strategy(doc["strategy"]);
    }
  } else {
    if (!doc.contains("graph1") || !doc.contains("graph2")) {
      throw ConfigError("gi configs need graph1 and graph2");
    }
    config.graph1 = parse_graph(doc["graph1"], "graph1");
    config.graph2 = parse_graph(doc["graph2"], "graph2");
    const std::string merlin = doc.value("merlin", std::string("honest"));
    if (merlin == "honest") {
      config.merlin = GIMerlin::Honest;
    } else if (merlin == "cheating") {
      config.merlin = GIMerlin::Cheating;
    } else {
      throw ConfigError("merlin must be \"honest\" or \"cheating\"");
    }
    config.rounds = doc.value("rounds", std::size_t{1});
    if (config.rounds < 1) throw ConfigError("rounds must be >= 1");
  }

  config.trials = doc.value("trials", std::size_t{100});
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  config.seed = doc.value("seed", std::uint64_t{1});
  config.parallelism = doc.value("parallelism", std::size_t{1});
  if (config.parallelism < 1) throw ConfigError("parallelism must be >= 1");
  config.log_keys = doc.value("log_keys", false);
  config.dump_state = doc.value("dump_state", false);

  if (doc.contains("sweep")) {
    expect_keys(doc["sweep"], {"parameter", "values"}, "sweep");
    config.sweep_parameter = doc["sweep"].at("parameter").get<std::string>();
    config.sweep_values = doc["sweep"].at("values").get<std::vector<double>>();
    const std::string& p = *config.sweep_parameter;
    if (p != "theta" && p != "trials" && p != "rounds") {
      throw ConfigError("sweep parameter must be theta, trials, or rounds");
    }
    if (config.sweep_values.empty()) {
      throw ConfigError("sweep needs at least one value");
    }
  }

  config.echo = doc;
  return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return from_json(doc);
}

json run_experiment(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  json results = config.kind == "gi" ? run_gi_experiment(config)
                                     : run_protocol_experiment(config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  // Everything outside "timestamp" is deterministic for a fixed config.
  return {{"schema_version", kReportSchemaVersion},
          {"config", config.echo},
          {"results", results},
          {"timestamp",
           {{"generated_at", iso_timestamp()}, {"runtime_seconds", seconds}}}};
}

std::string sweep_experiment(const ExperimentConfig& config) {
  if (!config.sweep_parameter) {
    throw ConfigError("sweep requires a sweep axis in the config");
  }
  const std::string& param = *config.sweep_parameter;
  if (param == "theta" &&
      (config.kind != "protocol" ||
       config.strategy.kind != StrategyKind::RandomUnitary)) {
    throw ConfigError("theta sweeps need the random_unitary strategy");
  }
  if (param == "rounds" && config.kind != "gi") {
    throw ConfigError("rounds sweeps apply to gi configs");
  }

  std::ostringstream csv;
  csv << "value,acceptance_rate,wilson_low,wilson_high,oracle\n";
  for (const double value : config.sweep_values) {
    ExperimentConfig point = config;
    point.sweep_parameter.reset();
    if (param == "theta") {
      point.strategy.theta = value;
    } else if (param == "trials") {
      point.trials = static_cast<std::size_t>(value);
      if (point.trials < 1) throw ConfigError("swept trials must be >= 1");
    } else {
      point.rounds = static_cast<std::size_t>(value);
      if (point.rounds < 1) throw ConfigError("swept rounds must be >= 1");
    }
    const json report = run_experiment(point);
    const json& r = report["results"];
    const double rate = config.kind == "gi"
                            ? r["convince_rate"].get<double>()
                            : r["acceptance_rate"].get<double>();
    csv << value << "," << rate << "," << r["wilson_low"].get<double>() << ","
        << r["wilson_high"].get<double>() << ",";
    if (config.kind == "gi") {
      csv << r["cheat_bound"].get<double>();
    } else if (r["oracle_acceptance"].is_null()) {
      csv << "";
    } else {
      csv << r["oracle_acceptance"].get<double>();
    }
    csv << "\n";
  }
  return csv.str();
}

}  // namespace qpip
