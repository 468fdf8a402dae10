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
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpip/experiment.hpp"

namespace {

using nlohmann::json;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << std::endl;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw qpip::ConfigError("cannot write to " + out_path);
  out << text << "\n";
}

std::vector<std::uint64_t> parse_factor_list(const std::string& text) {
  std::vector<std::uint64_t> factors;
  std::stringstream stream(text);
  for (std::string part; std::getline(stream, part, ',');) {
    try {
      factors.push_back(std::stoull(part));
    } catch (const std::exception&) {
      throw qpip::ConfigError("bad factor \"" + part + "\"");
    }
  }
  if (factors.empty()) throw qpip::ConfigError("empty factor list");
  return factors;
}

qpip::Graph builtin_graph(const std::string& pair, int which) {
  if (pair == "isomorphic") {
    // Two vertex relabelings of the 4-cycle.
    if (which == 1) {
      return qpip::Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    }
    return qpip::Graph::from_edges(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}});
  }
  if (pair == "nonisomorphic") {
    // Triangle plus an isolated vertex vs. the 4-path.
    if (which == 1) {
      return qpip::Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 0}});
    }
    return qpip::Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  }
  throw qpip::ConfigError("pair must be isomorphic or nonisomorphic");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Interactive-proof simulator for authenticated quantum "
               "storage and computation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t parallelism = 0;
  bool dump_state = false;
  bool log_keys = false;

  auto* run = app.add_subcommand("run", "Run an experiment from a config");
  run->add_option("--config", config_path, "Experiment config (JSON)")
      ->required();
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--trials", trials, "Override the trial count");
  run->add_option("--parallelism", parallelism, "Override worker threads");
  run->add_option("--out", out_path, "Report output path (default stdout)");
  run->add_flag("--dump-state", dump_state, "Include a state dump");
  run->add_flag("--log-keys", log_keys, "Log key material in transcripts");

  auto* oracle = app.add_subcommand("oracle", "Exact enumeration oracles");
  oracle->require_subcommand(1);
  auto* table = oracle->add_subcommand("clifford-table",
                                       "Two-qubit Clifford group size");
  std::string attack_name = "XX";
  auto* detection =
      oracle->add_subcommand("detection", "Key-averaged rejection of a Pauli");
  detection->add_option("--attack", attack_name, "Two-letter Pauli label");
  std::uint32_t oq = 5, od = 1, om = 3, oa = 0;
  auto* code_enum = oracle->add_subcommand("code-enum", "Codeword listing");
  code_enum->add_option("--q", oq, "Field size");
  code_enum->add_option("--d", od, "Degree bound");
  code_enum->add_option("--m", om, "Evaluation points");
  code_enum->add_option("--a", oa, "Logical value");

  auto* sweep = app.add_subcommand("sweep", "Sweep one config parameter");
  sweep->add_option("--config", config_path, "Experiment config (JSON)")
      ->required();
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");
  sweep->add_option("--seed", seed, "Override the master seed");
  sweep->add_option("--parallelism", parallelism, "Override worker threads");

  std::size_t gi_rounds = 10;
  std::size_t gi_trials = 1000;
  std::string gi_pair = "isomorphic";
  std::string gi_merlin = "honest";
  auto* gi = app.add_subcommand("gi-demo", "Graph-isomorphism IP demo");
  gi->add_option("--rounds", gi_rounds, "Rounds per run");
  gi->add_option("--trials", gi_trials, "Independent runs");
  gi->add_option("--pair", gi_pair, "isomorphic | nonisomorphic");
  gi->add_option("--merlin", gi_merlin, "honest | cheating");
  gi->add_option("--seed", seed, "Master seed");
  gi->add_option("--out", out_path, "Report output path (default stdout)");

  std::uint64_t fv_n = 0;
  std::string fv_factors;
  auto* fv = app.add_subcommand("factor-verify", "Check a claimed "
                                                 "factorization");
  fv->add_option("--n", fv_n, "The composite")->required();
  fv->add_option("--factors", fv_factors, "Comma-separated prime factors")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run) {
    qpip::ExperimentConfig config =
        qpip::ExperimentConfig::from_file(config_path);
    if (run->count("--seed")) config.seed = seed;
    if (run->count("--trials")) config.trials = trials;
    if (run->count("--parallelism")) config.parallelism = parallelism;
    if (dump_state) config.dump_state = true;
    if (log_keys) config.log_keys = true;
    write_output(qpip::run_experiment(config).dump(2), out_path);
  } else if (*table) {
    write_output(json{{"size", qpip::CliffordTable::instance().size()}}.dump(),
                 "");
  } else if (*detection) {
    const qpip::PauliPair p = qpip::PauliPair::from_name(attack_name);
    write_output(
        json{{"attack", attack_name},
             {"rejection", qpip::clifford_detection_probability(
                               qpip::pauli_pair_matrix(p))}}
            .dump(),
        "");
  } else if (*code_enum) {
    const qpip::CodeParams params = qpip::CodeParams::make(oq, od, om);
    const qpip::SignKey key = qpip::SignKey::trivial(params);
    json words = json::array();
    for (const auto& w : qpip::enumerate_codewords(params, key, oa)) {
      words.push_back(w);
    }
    write_output(json{{"q", oq}, {"d", od}, {"m", om}, {"a", oa},
                      {"count", words.size()}, {"codewords", words}}
                     .dump(),
                 "");
  } else if (*sweep) {
    qpip::ExperimentConfig config =
        qpip::ExperimentConfig::from_file(config_path);
    if (sweep->count("--seed")) config.seed = seed;
    if (sweep->count("--parallelism")) config.parallelism = parallelism;
    write_output(qpip::sweep_experiment(config), out_path);
  } else if (*gi) {
    qpip::ExperimentConfig config;
    config.kind = "gi";
    config.graph1 = builtin_graph(gi_pair, 1);
    config.graph2 = builtin_graph(gi_pair, 2);
    if (gi_merlin == "honest") {
      config.merlin = qpip::GIMerlin::Honest;
    } else if (gi_merlin == "cheating") {
      config.merlin = qpip::GIMerlin::Cheating;
    } else {
      throw qpip::ConfigError("merlin must be honest or cheating");
    }
    config.rounds = gi_rounds;
    config.trials = gi_trials;
    config.seed = gi->count("--seed") ? seed : 1;
    config.echo = {{"kind", "gi"},
                   {"pair", gi_pair},
                   {"merlin", gi_merlin},
                   {"rounds", gi_rounds},
                   {"trials", gi_trials},
                   {"seed", config.seed}};
    write_output(qpip::run_experiment(config).dump(2), out_path);
  } else if (*fv) {
    const auto factors = parse_factor_list(fv_factors);
    const bool valid = qpip::verify_factoring(fv_n, factors);
    write_output(
        json{{"n", fv_n}, {"factors", factors}, {"valid", valid}}.dump(), "");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const qpip::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  } catch (const qpip::ResourceError& e) {
    std::cerr << "resource guard: " << e.what() << std::endl;
    return 3;
  } catch (const qpip::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << std::endl;
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 4;
  }
}
