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

#include "report.hpp"

#include <bit>
#include <cmath>
#include <complex>

#include "error.hpp"
#include "grover.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace cslpq::report {

using nlohmann::json;
using oracle::RegisterLayout;

json network_summary(const net::Network& network) {
  const int n = network.node_count();
  const int trips = static_cast<int>(network.trips().size());
  json summary;
  summary["nodes"] = n;
  summary["node_names"] = network.node_names();
  summary["trips"] = trips;
  summary["range_miles"] = network.range_miles();
  if (trips > 0) {
    summary["validity_qubits"] = RegisterLayout::validity_qubit_formula(n, trips);
    summary["iteration_qubits"] = RegisterLayout::iteration_qubit_formula(n, trips);
  }
  return summary;
}

json brute_force_report(const net::Network& network) {
  const net::BruteForceResult result = network.brute_force();
  json out;
  out["instance"] = network_summary(network);
  out["combinations"] = uint64_t{1} << network.node_count();
  out["valid_count"] = result.valid_count;
  out["valid_per_weight"] = result.valid_per_weight;
  if (result.minimum) {
    out["minimum"] = *result.minimum;
    json optima = json::array();
    json optima_nodes = json::array();
    for (const auto& combo : result.optima) {
      optima.push_back(combo.to_string());
      optima_nodes.push_back(combo.nodes());
    }
    out["optima"] = std::move(optima);
    out["optima_nodes"] = std::move(optima_nodes);
  } else {
    out["minimum"] = nullptr;
    out["optima"] = json::array();
  }
  return out;
}

json outcome_json(const gas::GasOutcome& outcome) {
  json out;
  out["seed"] = outcome.seed;
  out["initial_tau"] = outcome.initial_tau;
  out["final_tau"] = outcome.final_tau;
  out["run_time"] = outcome.run_time;
  out["budget"] = outcome.budget;
  out["best"] = outcome.best ? json(outcome.best->to_string()) : json(nullptr);
  json attempts = json::array();
  for (const gas::Attempt& a : outcome.attempts) {
    json row;
    row["m"] = a.m_before;
    row["j"] = a.j;
    row["measured"] = net::StationCombination(a.measured, outcome.n).to_string();
    row["valid"] = a.valid;
    row["weight"] = a.weight;
    row["accepted"] = a.accepted;
    row["run_time"] = a.run_time_after;
    attempts.push_back(std::move(row));
  }
  out["attempts"] = std::move(attempts);
  return out;
}

json solve_report(const net::Network& network, const gas::GasConfig& config,
                  const gas::RepeatOutcome& outcome) {
  json out;
  out["instance"] = network_summary(network);
  json cfg;
  cfg["mode"] = config.mode == gas::OracleMode::functional ? "functional" : "circuit";
  cfg["lambda"] = config.lambda;
  cfg["budget_formula"] = config.budget == gas::BudgetFormula::alg3 ? "alg3" : "alg2";
  cfg["repetitions"] = config.repetitions;
  cfg["initial_tau"] = config.initial_tau ? json(*config.initial_tau) : json("random");
  cfg["seed"] = config.seed;
  out["config"] = std::move(cfg);

  json reps = json::array();
  for (const gas::GasOutcome& rep : outcome.repetitions) {
    reps.push_back(outcome_json(rep));
  }
  json result;
  result["master_seed"] = outcome.master_seed;
  result["best"] = outcome.best ? json(outcome.best->to_string()) : json(nullptr);
  if (outcome.best) {
    result["best_nodes"] = outcome.best->nodes();
    result["best_weight"] = outcome.best->weight();
  }
  result["repetitions"] = std::move(reps);
  out["outcome"] = std::move(result);
  return out;
}

json layout_report(const net::Network& network) {
  const int n = network.node_count();
  const int trips = static_cast<int>(network.trips().size());
  if (trips < 1) {
    throw Error(ErrorCode::invalid_argument, "layout report needs at least one trip");
  }
  const RegisterLayout layout = RegisterLayout::grover_iteration(n, trips);
  sim::Circuit shell(layout.total_qubits);
  layout.declare_registers(shell);

  json out;
  out["instance"] = network_summary(network);
  out["counting_bits"] = RegisterLayout::counting_bits(n);
  out["validity_qubits_formula"] = RegisterLayout::validity_qubit_formula(n, trips);
  out["iteration_qubits_formula"] = RegisterLayout::iteration_qubit_formula(n, trips);
  if (trips == 1) {
    // Single-path form without v_T (the corridor's twelve-qubit circuit).
    out["single_path_validity_qubits"] = RegisterLayout::validity(n, 1, false).total_qubits;
  }
  json registers = json::array();
  for (const sim::RegisterSpan& r : shell.registers()) {
    json row;
    row["name"] = r.name;
    row["offset"] = r.offset;
    row["width"] = r.width;
    registers.push_back(std::move(row));
  }
  out["registers"] = std::move(registers);
  return out;
}

namespace {

json equivalence_entry(const net::Network& network, int tau, bool include_rows) {
  const oracle::EquivalenceReport rep = oracle::verify_oracle_equivalence(network, tau);
  const int n = network.node_count();

  uint64_t circuit_marked = 0;
  uint64_t functional_marked = 0;
  uint64_t brute_marked = 0;
  json rows = json::array();
  for (uint64_t x = 0; x < rep.rows.size(); ++x) {
    const oracle::EquivalenceRow& row = rep.rows[x];
    if (row.circuit_sign < 0) ++circuit_marked;
    if (row.functional_sign < 0) ++functional_marked;
    const net::StationCombination combo(x, n);
    if (network.is_valid(combo) && combo.weight() < tau) ++brute_marked;
    if (include_rows || !row.match) {
      json r;
      r["pattern"] = row.pattern;
      r["circuit_sign"] = row.circuit_sign;
      r["functional_sign"] = row.functional_sign;
      r["match"] = row.match;
      rows.push_back(std::move(r));
    }
  }

  json entry;
  entry["tau"] = tau;
  entry["all_match"] = rep.all_match;
  entry["residual_mass"] = rep.max_residual_mass;
  entry["marked_circuit"] = circuit_marked;
  entry["marked_functional"] = functional_marked;
  entry["marked_brute_force"] = brute_marked;
  entry["counts_agree"] =
      circuit_marked == functional_marked && functional_marked == brute_marked;
  entry[include_rows ? "rows" : "mismatches"] = std::move(rows);
  return entry;
}

bool counter_exact(int n, int counting_width) {
  const int total = n + counting_width;
  std::vector<int> station(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) station[static_cast<std::size_t>(i)] = i;
  std::vector<int> counting(static_cast<std::size_t>(counting_width));
  for (int i = 0; i < counting_width; ++i) counting[static_cast<std::size_t>(i)] = n + i;
  const sim::Circuit counter = grover::build_hamming_counter(total, station, counting);

  for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
    sim::Statevector state = sim::Statevector::basis_state(total, x);
    state.apply(counter);
    const uint64_t expected =
        x | (static_cast<uint64_t>(std::popcount(x)) << n);
    if (std::abs(state.amplitude(expected) - sim::Complex{1.0, 0.0}) > 1e-10) {
      return false;
    }
  }
  return true;
}

bool comparator_exhaustive(int t) {
  const int total = 2 * t;  // value t, carries t-1, result 1
  std::vector<int> value(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) value[static_cast<std::size_t>(i)] = i;
  std::vector<int> carries(static_cast<std::size_t>(t - 1));
  for (int i = 0; i + 1 < t; ++i) carries[static_cast<std::size_t>(i)] = t + i;
  const int result = 2 * t - 1;

  for (int tau = 0; tau <= (1 << t); ++tau) {
    const sim::Circuit cmp = grover::build_comparator(total, value, carries, result, tau);
    for (uint64_t v = 0; v < (uint64_t{1} << t); ++v) {
      sim::Statevector state = sim::Statevector::basis_state(total, v);
      state.apply(cmp);
      const uint64_t expected =
          v | (static_cast<uint64_t>(v < static_cast<uint64_t>(tau)) << result);
      if (std::abs(state.amplitude(expected) - sim::Complex{1.0, 0.0}) > 1e-10) {
        return false;
      }
    }
  }
  return true;
}

struct DiffuserCheck {
  bool ok = true;
  double max_matrix_deviation = 0.0;
  double max_mean_inversion_deviation = 0.0;
};

DiffuserCheck diffuser_check(int n) {
  DiffuserCheck check;
  std::vector<int> qubits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) qubits[static_cast<std::size_t>(i)] = i;
  const sim::Circuit diffuser = grover::build_diffuser(n, qubits);
  const uint64_t dim = uint64_t{1} << n;

  // The circuit's global phase, read off its action on the |+^n> eigenvector.
  sim::Statevector plus(n);
  for (int q = 0; q < n; ++q) plus.apply(sim::Gate::h(q));
  plus.apply(diffuser);
  const sim::Complex phase = plus.amplitude(0) * std::sqrt(static_cast<double>(dim));

  if (n <= 5) {
    const sim::UnitaryMatrix u = sim::circuit_unitary(diffuser);
    const double off = 2.0 / static_cast<double>(dim);
    for (uint64_t r = 0; r < dim; ++r) {
      for (uint64_t c = 0; c < dim; ++c) {
        const double ref = r == c ? off - 1.0 : off;
        const double dev = std::abs(u.at(r, c) - phase * sim::Complex{ref, 0.0});
        check.max_matrix_deviation = std::max(check.max_matrix_deviation, dev);
      }
    }
    check.ok = check.ok && check.max_matrix_deviation < 1e-10;
  }

  Rng rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<sim::Complex> amps(dim);
    double norm = 0.0;
    for (auto& a : amps) {
      a = sim::Complex{rng.uniform_double() - 0.5, rng.uniform_double() - 0.5};
      norm += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm);
    sim::Complex mean{0.0, 0.0};
    for (auto& a : amps) {
      a *= scale;
      mean += a;
    }
    mean /= static_cast<double>(dim);

    sim::Statevector state = sim::Statevector::from_amplitudes(amps);
    state.apply(diffuser);
    for (uint64_t x = 0; x < dim; ++x) {
      const sim::Complex want = phase * (2.0 * mean - amps[x]);
      check.max_mean_inversion_deviation =
          std::max(check.max_mean_inversion_deviation, std::abs(state.amplitude(x) - want));
    }
  }
  check.ok = check.ok && check.max_mean_inversion_deviation < 1e-10;
  return check;
}

}  // namespace

json equivalence_report(const net::Network& network, int tau) {
  const int n = network.node_count();
  json out;
  out["instance"] = network_summary(network);
  json sweep = json::array();
  bool all = true;
  const int lo = tau >= 0 ? tau : 0;
  const int hi = tau >= 0 ? tau : n + 1;
  for (int value = lo; value <= hi; ++value) {
    json entry = equivalence_entry(network, value, true);
    all = all && entry["all_match"].get<bool>() && entry["counts_agree"].get<bool>();
    sweep.push_back(std::move(entry));
  }
  out["sweep"] = std::move(sweep);
  out["all_match"] = all;
  return out;
}

json check_report(const net::Network& network) {
  const int n = network.node_count();
  json out;
  out["instance"] = network_summary(network);

  bool all = true;

  json sweep = json::array();
  for (int tau = 0; tau <= n + 1; ++tau) {
    json entry = equivalence_entry(network, tau, false);
    all = all && entry["all_match"].get<bool>() && entry["counts_agree"].get<bool>();
    sweep.push_back(std::move(entry));
  }
  out["oracle_equivalence"] = std::move(sweep);

  const bool compact_ok = counter_exact(n, RegisterLayout::counting_bits(n));
  const bool full_ok = n <= 7 ? counter_exact(n, n) : true;
  out["counter"] = {{"compact_exact", compact_ok}, {"full_exact", full_ok}};
  all = all && compact_ok && full_ok;

  const bool cmp_ok = comparator_exhaustive(RegisterLayout::counting_bits(n));
  out["comparator"] = {{"exhaustive_ok", cmp_ok}};
  all = all && cmp_ok;

  const DiffuserCheck diff = diffuser_check(n);
  out["diffuser"] = {{"ok", diff.ok},
                     {"max_matrix_deviation", diff.max_matrix_deviation},
                     {"max_mean_inversion_deviation", diff.max_mean_inversion_deviation}};
  all = all && diff.ok;

  out["all_passed"] = all;
  return out;
}

std::string dump_iteration_circuit(const net::Network& network, int tau) {
  const int n = network.node_count();
  const int trips = static_cast<int>(network.trips().size());
  if (trips < 1) {
    throw Error(ErrorCode::invalid_argument, "circuit dump needs at least one trip");
  }
  const RegisterLayout layout = RegisterLayout::grover_iteration(n, trips);
  return grover::build_full_iteration(network, layout, tau).dump();
}

}  // namespace cslpq::report
