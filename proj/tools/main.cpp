// Copyright 2026 The cslpq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end; all computation goes through the C API of the
// cslpq shared library. Reports print to stdout (identical numbers in text
// and JSON form); wall-clock timing goes to stderr so seeded runs stay
// byte-identical on stdout.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cslpq/cslpq.h"

namespace {

using nlohmann::json;

constexpr int kExitSolved = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitVerificationFailed = 3;

struct NetworkHandle {
  cslpq_network* ptr = nullptr;
  ~NetworkHandle() { cslpq_network_free(ptr); }
};

struct ApiString {
  char* ptr = nullptr;
  ~ApiString() { cslpq_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

int fail() {
  std::cerr << "error: " << cslpq_last_error() << "\n";
  return kExitUsage;
}

std::string best_or_none(const json& value) {
  return value.is_null() ? "None" : value.get<std::string>();
}

void print_instance(const json& instance) {
  std::cout << "instance: " << instance["nodes"].get<int>() << " nodes, "
            << instance["trips"].get<int>() << " trips, range "
            << instance["range_miles"].get<double>() << " miles\n";
  if (instance.contains("validity_qubits")) {
    std::cout << "validity-circuit qubits: " << instance["validity_qubits"].get<int>()
              << "   grover-iteration qubits: " << instance["iteration_qubits"].get<int>()
              << "\n";
  }
}

int render_solve(const json& report, const std::string& format) {
  const json& outcome = report["outcome"];
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    print_instance(report["instance"]);
    const json& cfg = report["config"];
    std::cout << "mode: " << cfg["mode"].get<std::string>()
              << "   seed: " << cfg["seed"].get<uint64_t>()
              << "   repetitions: " << cfg["repetitions"].get<int>()
              << "   lambda: " << cfg["lambda"].get<double>()
              << "   budget: " << cfg["budget_formula"].get<std::string>() << "\n\n";
    std::cout << "experiment | initial tau | best result | weight | run_time\n";
    int index = 1;
    for (const json& rep : outcome["repetitions"]) {
      const std::string best = best_or_none(rep["best"]);
      std::cout << index++ << " | " << rep["initial_tau"].get<int>() << " | " << best
                << " | ";
      if (rep["best"].is_null()) {
        std::cout << "-";
      } else {
        int weight = 0;
        for (char c : best) weight += c == '1';
        std::cout << weight;
      }
      std::cout << " | " << rep["run_time"].get<double>() << "\n";
    }
    std::cout << "\nbest: " << best_or_none(outcome["best"]);
    if (!outcome["best"].is_null()) {
      std::cout << "  (stations at";
      for (const json& node : outcome["best_nodes"]) std::cout << " " << node.get<int>();
      std::cout << ", weight " << outcome["best_weight"].get<int>() << ")";
    }
    std::cout << "\n";
  }
  return outcome["best"].is_null() ? kExitInfeasible : kExitSolved;
}

int render_brute(const json& report, const std::string& format) {
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    print_instance(report["instance"]);
    std::cout << "combinations: " << report["combinations"].get<uint64_t>()
              << "   valid: " << report["valid_count"].get<uint64_t>() << "\n";
    if (report["minimum"].is_null()) {
      std::cout << "minimum: infeasible (no valid combination)\n";
    } else {
      std::cout << "minimum stations: " << report["minimum"].get<int>() << "\noptima:";
      for (const json& combo : report["optima"]) {
        std::cout << " " << combo.get<std::string>();
      }
      std::cout << "\n";
    }
    std::cout << "valid per weight:";
    int weight = 0;
    for (const json& count : report["valid_per_weight"]) {
      std::cout << " " << weight++ << ":" << count.get<uint64_t>();
    }
    std::cout << "\n";
  }
  return report["minimum"].is_null() ? kExitInfeasible : kExitSolved;
}

int render_check(const json& report, const std::string& format) {
  const bool passed = report["all_passed"].get<bool>();
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    print_instance(report["instance"]);
    for (const json& entry : report["oracle_equivalence"]) {
      std::cout << "tau " << entry["tau"].get<int>() << ": "
                << (entry["all_match"].get<bool>() ? "match" : "MISMATCH")
                << "  marked(circuit/functional/brute) "
                << entry["marked_circuit"].get<uint64_t>() << "/"
                << entry["marked_functional"].get<uint64_t>() << "/"
                << entry["marked_brute_force"].get<uint64_t>() << "  residual "
                << entry["residual_mass"].get<double>() << "\n";
    }
    const json& counter = report["counter"];
    std::cout << "counter exact (compact/full): "
              << (counter["compact_exact"].get<bool>() ? "yes" : "NO") << "/"
              << (counter["full_exact"].get<bool>() ? "yes" : "NO") << "\n";
    std::cout << "comparator exhaustive: "
              << (report["comparator"]["exhaustive_ok"].get<bool>() ? "pass" : "FAIL")
              << "\n";
    std::cout << "diffuser: " << (report["diffuser"]["ok"].get<bool>() ? "pass" : "FAIL")
              << "\n";
    std::cout << (passed ? "ALL CHECKS PASSED" : "CHECKS FAILED") << "\n";
  }
  return passed ? kExitSolved : kExitVerificationFailed;
}

int render_equivalence(const json& report, const std::string& format) {
  const bool passed = report["all_match"].get<bool>();
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    print_instance(report["instance"]);
    for (const json& entry : report["sweep"]) {
      std::cout << "tau " << entry["tau"].get<int>() << " residual "
                << entry["residual_mass"].get<double>() << "\n";
      std::cout << "pattern circuit functional match\n";
      for (const json& row : entry["rows"]) {
        std::cout << row["pattern"].get<std::string>() << " "
                  << row["circuit_sign"].get<int>() << " "
                  << row["functional_sign"].get<int>() << " "
                  << (row["match"].get<bool>() ? "yes" : "NO") << "\n";
      }
    }
    std::cout << (passed ? "ORACLES EQUIVALENT" : "ORACLE MISMATCH") << "\n";
  }
  return passed ? kExitSolved : kExitVerificationFailed;
}

int render_layout(const json& report, const std::string& format) {
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    print_instance(report["instance"]);
    std::cout << "counting bits: " << report["counting_bits"].get<int>() << "\n";
    std::cout << "validity-circuit qubits ((|Q|+1)(n+2)+1): "
              << report["validity_qubits_formula"].get<int>() << "\n";
    std::cout << "grover-iteration qubits (|Q|(n+2)+n+max{2ceil(log2(n+1)),n+1}+4): "
              << report["iteration_qubits_formula"].get<int>() << "\n";
    if (report.contains("single_path_validity_qubits")) {
      std::cout << "single-path validity qubits (no v_T): "
                << report["single_path_validity_qubits"].get<int>() << "\n";
    }
    std::cout << "register | offset | width\n";
    for (const json& reg : report["registers"]) {
      std::cout << reg["name"].get<std::string>() << " | " << reg["offset"].get<int>()
                << " | " << reg["width"].get<int>() << "\n";
    }
  }
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Charging-station placement by simulated Grover adaptive search"};
  app.require_subcommand(1);

  std::string network_path;
  std::string format = "text";
  std::string dump_path;
  uint64_t seed = 0;
  int repeats = 7;
  std::string mode = "functional";
  std::string initial_tau = "random";
  double lambda = 8.0 / 7.0;
  std::string budget = "alg3";

  app.add_option("--network", network_path, "network document (JSON)")->required();
  app.add_option("--seed", seed, "master seed (env CSLPQ_SEED)")->envname("CSLPQ_SEED");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--dump-circuit", dump_path,
                 "write the Grover-iteration circuit text to this path");

  CLI::App* solve = app.add_subcommand("solve", "run Grover adaptive search");
  solve->add_option("--repeats", repeats, "independent repetitions (default 7)");
  solve->add_option("--mode", mode, "oracle mode")
      ->check(CLI::IsMember({"functional", "circuit"}));
  solve->add_option("--initial-tau", initial_tau, "integer threshold or 'random'");
  solve->add_option("--lambda", lambda, "growth factor (default 8/7)");
  solve->add_option("--budget", budget, "budget formula")
      ->check(CLI::IsMember({"alg2", "alg3"}));

  CLI::App* brute = app.add_subcommand("brute", "exhaustive classical optimum");
  CLI::App* check = app.add_subcommand("check", "oracle equivalence and circuit checks");
  CLI::App* check_oracle =
      app.add_subcommand("check-oracle", "emit the oracle equivalence table");
  int check_tau = -1;
  check_oracle->add_option("--tau", check_tau, "single threshold (default: sweep)");
  CLI::App* layout = app.add_subcommand("layout", "register allocation and qubit counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  int parsed_tau = -1;  // -1 selects the random-threshold policy
  if (initial_tau != "random") {
    try {
      parsed_tau = std::stoi(initial_tau);
    } catch (const std::exception&) {
      std::cerr << "error: --initial-tau must be an integer or 'random'\n";
      return kExitUsage;
    }
    if (parsed_tau < 0) {
      std::cerr << "error: --initial-tau must be nonnegative\n";
      return kExitUsage;
    }
  }

  NetworkHandle network;
  if (cslpq_network_load_file(network_path.c_str(), &network.ptr) != CSLPQ_OK) {
    return fail();
  }

  if (!dump_path.empty()) {
    ApiString text;
    if (cslpq_dump_circuit(network.ptr, parsed_tau, &text.ptr) != CSLPQ_OK) {
      return fail();
    }
    std::ofstream out(dump_path);
    if (!out) {
      std::cerr << "error: cannot write '" << dump_path << "'\n";
      return kExitUsage;
    }
    out << text.str();
  }

  const auto started = std::chrono::steady_clock::now();
  int exit_code = kExitSolved;

  if (solve->parsed()) {
    cslpq_solve_options options;
    cslpq_solve_options_defaults(&options);
    options.seed = seed;
    options.repetitions = repeats;
    options.initial_tau = parsed_tau;
    options.lambda_growth = lambda;
    options.oracle_mode =
        mode == "circuit" ? CSLPQ_ORACLE_CIRCUIT : CSLPQ_ORACLE_FUNCTIONAL;
    options.budget_formula = budget == "alg2" ? CSLPQ_BUDGET_ALG2 : CSLPQ_BUDGET_ALG3;
    ApiString text;
    if (cslpq_solve_json(network.ptr, &options, &text.ptr) != CSLPQ_OK) {
      return fail();
    }
    exit_code = render_solve(json::parse(text.str()), format);
  } else if (brute->parsed()) {
    ApiString text;
    if (cslpq_brute_force_json(network.ptr, &text.ptr) != CSLPQ_OK) {
      return fail();
    }
    exit_code = render_brute(json::parse(text.str()), format);
  } else if (check->parsed()) {
    ApiString text;
    if (cslpq_check_json(network.ptr, &text.ptr) != CSLPQ_OK) {
      return fail();
    }
    exit_code = render_check(json::parse(text.str()), format);
  } else if (check_oracle->parsed()) {
    ApiString text;
    if (cslpq_oracle_equivalence_json(network.ptr, check_tau, &text.ptr) != CSLPQ_OK) {
      return fail();
    }
    exit_code = render_equivalence(json::parse(text.str()), format);
  } else if (layout->parsed()) {
    ApiString text;
    if (cslpq_layout_json(network.ptr, &text.ptr) != CSLPQ_OK) {
      return fail();
    }
    exit_code = render_layout(json::parse(text.str()), format);
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::cerr << "completed in " << elapsed.count() << " ms\n";
  return exit_code;
}
