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

#ifndef CSLPQ_SRC_ORACLE_HPP
#define CSLPQ_SRC_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "net.hpp"
#include "sim.hpp"

namespace cslpq::oracle {

/// Qubit assignment for the validity circuit and for one full Grover
/// iteration. Qubit 0 is S_O, qubits 1..n are the station variables, qubit
/// n+1 is S_D, followed by one (n+1)-wide ancilla block plus validity qubit
/// per trip. The iteration form appends v_T, the compact counting register
/// (t = ceil(log2(n+1))), its t-1 ripple carries, the comparator result, the
/// phase qubit, and a reserved block sized so the total matches the
/// published formula (the slack a full-width counting register would use).
struct RegisterLayout {
  struct TripBlock {
    int anc_offset = -1;
    int anc_width = 0;
    int validity_qubit = -1;
  };

  int n = 0;
  int num_trips = 0;

  int origin_qubit = 0;
  int node_offset = 1;  // S_i at qubit i
  int dest_qubit = -1;

  std::vector<TripBlock> trips;
  int total_validity_qubit = -1;  // v_T; -1 in the single-trip form
  int counting_offset = -1;
  int counting_width = 0;
  int carry_offset = -1;
  int carry_width = 0;
  int comparator_result_qubit = -1;
  int phase_qubit = -1;
  int reserved_offset = -1;
  int reserved_width = 0;
  int total_qubits = 0;

  /// Validity-only layout (single path: 12 qubits for the 4-node corridor;
  /// network form adds v_T for (|Q|+1)(n+2)+1 total).
  static RegisterLayout validity(int n, int num_trips, bool include_total_validity);

  /// Layout for one full Grover iteration.
  static RegisterLayout grover_iteration(int n, int num_trips);

  static int validity_qubit_formula(int n, int num_trips);
  static int iteration_qubit_formula(int n, int num_trips);
  static int counting_bits(int n);  // ceil(log2(n+1))

  std::vector<int> node_qubits() const;
  std::vector<int> counting_qubits() const;
  std::vector<int> carry_qubits() const;

  /// Basis index with the given station pattern, S_O = S_D = 1, and all
  /// other qubits 0 (phase qubit 0 as well).
  uint64_t basis_index(uint64_t station_pattern) const;

  void declare_registers(sim::Circuit& circuit) const;
};

/// X on S_O and S_D, H on every station qubit; ancillas untouched.
sim::Circuit build_initialization(const RegisterLayout& layout);

/// Per-node isolation checks for one trip: an MCX with positive control on
/// S_i and X-conjugated (negative) controls on every member of A_i^q flips
/// the node's ancilla exactly on basis states where node i is an isolated
/// station. Detectors are emitted in path order, the origin first.
sim::Circuit build_isolation_detector(const net::TripPath& trip,
                                      const RegisterLayout& layout, int trip_index);

/// Flips v_q when every ancilla of the trip block is |0>; ancillas are
/// X-conjugated around the MCX and end up restored.
sim::Circuit build_labeler(const RegisterLayout& layout, int trip_index);

/// Gates of the forward fragment emitted in reverse (and inverted), so
/// forward followed by restoration is the identity.
sim::Circuit build_restoration(const sim::Circuit& forward);

/// Detect+label chained over every trip; with a network layout a final MCX
/// over all v_q flips v_T. Ancillas remain dirty until the inverse runs.
sim::Circuit build_network_validity(const net::Network& network,
                                    const RegisterLayout& layout);

/// Diagonal phase-flip oracle over the n-qubit station register: negates the
/// amplitude of x exactly when expr(x) holds and popcount(x) < tau.
class FunctionalPhaseOracle {
 public:
  FunctionalPhaseOracle(net::BooleanExpr expr, int n, int tau);

  int n() const { return n_; }
  int tau() const { return tau_; }
  bool marks(uint64_t station_pattern) const;
  void apply(sim::Statevector& state) const;
  uint64_t marked_count() const;

 private:
  net::BooleanExpr expr_;
  int n_;
  int tau_;
  std::vector<bool> marked_;  // precomputed over all 2^n patterns
};

struct EquivalenceRow {
  std::string pattern;  // S_1 leftmost
  int circuit_sign = 1;
  int functional_sign = 1;
  bool match = true;
};

struct EquivalenceReport {
  int tau = 0;
  std::vector<EquivalenceRow> rows;
  bool all_match = true;
  /// Largest amplitude mass found outside the clean-ancilla support.
  double max_residual_mass = 0.0;
};

/// Runs the explicit circuit oracle (validity network + counter + comparator
/// + phase kickback + uncompute) on the uniform station superposition and
/// compares the sign of every basis pattern against the functional oracle.
EquivalenceReport verify_oracle_equivalence(const net::Network& network, int tau);

}  // namespace cslpq::oracle

#endif  // CSLPQ_SRC_ORACLE_HPP
