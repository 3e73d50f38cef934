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

#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include "error.hpp"
#include "grover.hpp"

namespace cslpq::oracle {

using sim::Circuit;
using sim::ControlBit;
using sim::Gate;

int RegisterLayout::counting_bits(int n) {
  if (n < 1) {
    throw Error(ErrorCode::invalid_argument, "counting register needs n >= 1");
  }
  return std::bit_width(static_cast<unsigned>(n));  // ceil(log2(n+1))
}

int RegisterLayout::validity_qubit_formula(int n, int num_trips) {
  return (num_trips + 1) * (n + 2) + 1;
}

int RegisterLayout::iteration_qubit_formula(int n, int num_trips) {
  const int t = counting_bits(n);
  return num_trips * (n + 2) + n + std::max(2 * t, n + 1) + 4;
}

namespace {

RegisterLayout base_layout(int n, int num_trips) {
  if (n < 1) {
    throw Error(ErrorCode::invalid_argument, "layout needs at least one station node");
  }
  if (num_trips < 1) {
    throw Error(ErrorCode::invalid_argument, "layout needs at least one trip");
  }
  RegisterLayout layout;
  layout.n = n;
  layout.num_trips = num_trips;
  layout.origin_qubit = 0;
  layout.node_offset = 1;
  layout.dest_qubit = n + 1;
  int next = n + 2;
  for (int q = 0; q < num_trips; ++q) {
    RegisterLayout::TripBlock block;
    block.anc_offset = next;
    block.anc_width = n + 1;
    next += n + 1;
    block.validity_qubit = next++;
    layout.trips.push_back(block);
  }
  layout.total_qubits = next;
  return layout;
}

}  // namespace

RegisterLayout RegisterLayout::validity(int n, int num_trips, bool include_total_validity) {
  RegisterLayout layout = base_layout(n, num_trips);
  if (include_total_validity) {
    layout.total_validity_qubit = layout.total_qubits++;
    if (layout.total_qubits != validity_qubit_formula(n, num_trips)) {
      throw Error(ErrorCode::internal, "validity layout does not match its formula");
    }
  }
  return layout;
}

RegisterLayout RegisterLayout::grover_iteration(int n, int num_trips) {
  RegisterLayout layout = base_layout(n, num_trips);
  layout.total_validity_qubit = layout.total_qubits++;

  const int t = counting_bits(n);
  layout.counting_offset = layout.total_qubits;
  layout.counting_width = t;
  layout.total_qubits += t;

  layout.carry_offset = layout.total_qubits;
  layout.carry_width = t - 1;
  layout.total_qubits += t - 1;

  layout.comparator_result_qubit = layout.total_qubits++;
  layout.phase_qubit = layout.total_qubits++;

  const int reserved = std::max(2 * t, n + 1) - 2 * t;
  if (reserved > 0) {
    layout.reserved_offset = layout.total_qubits;
    layout.reserved_width = reserved;
    layout.total_qubits += reserved;
  }
  if (layout.total_qubits != iteration_qubit_formula(n, num_trips)) {
    throw Error(ErrorCode::internal, "iteration layout does not match its formula");
  }
  return layout;
}

std::vector<int> RegisterLayout::node_qubits() const {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = node_offset + i;
  return out;
}

std::vector<int> RegisterLayout::counting_qubits() const {
  std::vector<int> out(static_cast<std::size_t>(counting_width));
  for (int i = 0; i < counting_width; ++i) out[static_cast<std::size_t>(i)] = counting_offset + i;
  return out;
}

std::vector<int> RegisterLayout::carry_qubits() const {
  std::vector<int> out(static_cast<std::size_t>(carry_width));
  for (int i = 0; i < carry_width; ++i) out[static_cast<std::size_t>(i)] = carry_offset + i;
  return out;
}

uint64_t RegisterLayout::basis_index(uint64_t station_pattern) const {
  return uint64_t{1} | (station_pattern << 1) | (uint64_t{1} << dest_qubit);
}

void RegisterLayout::declare_registers(Circuit& circuit) const {
  circuit.declare_register("S_O", origin_qubit, 1);
  circuit.declare_register("S", node_offset, n);
  circuit.declare_register("S_D", dest_qubit, 1);
  for (std::size_t q = 0; q < trips.size(); ++q) {
    const std::string tag = std::to_string(q + 1);
    circuit.declare_register("anc" + tag, trips[q].anc_offset, trips[q].anc_width);
    circuit.declare_register("v" + tag, trips[q].validity_qubit, 1);
  }
  if (total_validity_qubit >= 0) circuit.declare_register("v_T", total_validity_qubit, 1);
  if (counting_width > 0) circuit.declare_register("count", counting_offset, counting_width);
  if (carry_width > 0) circuit.declare_register("carry", carry_offset, carry_width);
  if (comparator_result_qubit >= 0)
    circuit.declare_register("cmp", comparator_result_qubit, 1);
  if (phase_qubit >= 0) circuit.declare_register("phase", phase_qubit, 1);
  if (reserved_width > 0) circuit.declare_register("reserved", reserved_offset, reserved_width);
}

Circuit build_initialization(const RegisterLayout& layout) {
  Circuit circuit(layout.total_qubits);
  circuit.add(Gate::x(layout.origin_qubit));
  for (int i = 0; i < layout.n; ++i) circuit.add(Gate::h(layout.node_offset + i));
  circuit.add(Gate::x(layout.dest_qubit));
  return circuit;
}

namespace {

// One Fig.-6 style check: X-conjugate the accessible members, then an MCX
// with positive controls on the checked qubit and every member.
void emit_detector(Circuit& circuit, const RegisterLayout& layout, int checked_qubit,
                   const net::AccessibleSet& access, int ancilla_qubit) {
  std::vector<int> members;
  for (int j : access.nodes) members.push_back(layout.node_offset + j - 1);
  if (access.contains_dest) members.push_back(layout.dest_qubit);

  for (int q : members) circuit.add(Gate::x(q));
  std::vector<ControlBit> controls;
  controls.push_back(ControlBit{checked_qubit, true});
  for (int q : members) controls.push_back(ControlBit{q, true});
  circuit.add(Gate::mcx(std::move(controls), ancilla_qubit));
  for (int q : members) circuit.add(Gate::x(q));
}

}  // namespace

Circuit build_isolation_detector(const net::TripPath& trip, const RegisterLayout& layout,
                                 int trip_index) {
  const auto& block = layout.trips.at(static_cast<std::size_t>(trip_index));
  const int checks = static_cast<int>(trip.sequence.size()) + 1;  // O plus each node
  if (checks > block.anc_width) {
    throw Error(ErrorCode::invalid_argument, "trip has more nodes than the ancilla block");
  }
  Circuit circuit(layout.total_qubits);
  emit_detector(circuit, layout, layout.origin_qubit, trip.origin_access, block.anc_offset);
  for (std::size_t k = 0; k < trip.sequence.size(); ++k) {
    emit_detector(circuit, layout, layout.node_offset + trip.sequence[k] - 1,
                  trip.node_access[k], block.anc_offset + 1 + static_cast<int>(k));
  }
  return circuit;
}

Circuit build_labeler(const RegisterLayout& layout, int trip_index) {
  const auto& block = layout.trips.at(static_cast<std::size_t>(trip_index));
  Circuit circuit(layout.total_qubits);
  for (int a = 0; a < block.anc_width; ++a) circuit.add(Gate::x(block.anc_offset + a));
  std::vector<ControlBit> controls;
  for (int a = 0; a < block.anc_width; ++a) {
    controls.push_back(ControlBit{block.anc_offset + a, true});
  }
  circuit.add(Gate::mcx(std::move(controls), block.validity_qubit));
  for (int a = 0; a < block.anc_width; ++a) circuit.add(Gate::x(block.anc_offset + a));
  return circuit;
}

Circuit build_restoration(const Circuit& forward) { return forward.inverse(); }

Circuit build_network_validity(const net::Network& network, const RegisterLayout& layout) {
  const auto& trips = network.trips();
  if (static_cast<int>(trips.size()) != layout.num_trips) {
    throw Error(ErrorCode::invalid_argument, "layout trip count does not match network");
  }
  Circuit circuit(layout.total_qubits);
  for (std::size_t q = 0; q < trips.size(); ++q) {
    circuit.append(build_isolation_detector(trips[q], layout, static_cast<int>(q)));
    circuit.append(build_labeler(layout, static_cast<int>(q)));
  }
  if (layout.total_validity_qubit >= 0) {
    std::vector<ControlBit> controls;
    for (const auto& block : layout.trips) {
      controls.push_back(ControlBit{block.validity_qubit, true});
    }
    circuit.add(Gate::mcx(std::move(controls), layout.total_validity_qubit));
  } else if (layout.num_trips != 1) {
    throw Error(ErrorCode::invalid_argument,
                "network validity over several trips needs the v_T qubit");
  }
  return circuit;
}

FunctionalPhaseOracle::FunctionalPhaseOracle(net::BooleanExpr expr, int n, int tau)
    : expr_(std::move(expr)), n_(n), tau_(tau) {
  if (n < 1 || n > net::kMaxBruteForceNodes) {
    throw Error(ErrorCode::invalid_argument, "functional oracle register out of range");
  }
  if (tau < 0 || tau > n + 1) {
    throw Error(ErrorCode::invalid_argument, "tau outside [0, n+1]");
  }
  marked_.resize(uint64_t{1} << n);
  for (uint64_t x = 0; x < marked_.size(); ++x) {
    marked_[x] = std::popcount(x) < tau &&
                 expr_.evaluate(net::StationCombination(x, n));
  }
}

bool FunctionalPhaseOracle::marks(uint64_t station_pattern) const {
  return marked_[station_pattern];
}

void FunctionalPhaseOracle::apply(sim::Statevector& state) const {
  if (state.num_qubits() != n_) {
    throw Error(ErrorCode::invalid_argument, "oracle register does not match state");
  }
  state.apply_sign_flips(marked_);
}

uint64_t FunctionalPhaseOracle::marked_count() const {
  return static_cast<uint64_t>(std::count(marked_.begin(), marked_.end(), true));
}

EquivalenceReport verify_oracle_equivalence(const net::Network& network, int tau) {
  const int n = network.node_count();
  const int num_trips = static_cast<int>(network.trips().size());
  const RegisterLayout layout = RegisterLayout::grover_iteration(n, num_trips);
  if (layout.total_qubits > sim::kMaxSimQubits) {
    throw Error(ErrorCode::unsupported,
                "instance too large for the full-circuit oracle (" +
                    std::to_string(layout.total_qubits) + " qubits)");
  }

  const FunctionalPhaseOracle functional(network.build_validity_expression(), n, tau);
  const Circuit oracle_circuit = grover::build_full_oracle(network, layout, tau);

  // One pass over the uniform station superposition reads the sign of every
  // pattern at once: the oracle is diagonal, so the state stays supported on
  // basis states with S_O = S_D = 1, clean ancillas, and the |-> phase qubit.
  sim::Statevector state(layout.total_qubits);
  state.apply(build_initialization(layout));
  state.apply(Gate::x(layout.phase_qubit));
  state.apply(Gate::h(layout.phase_qubit));
  state.apply(oracle_circuit);

  const uint64_t count = uint64_t{1} << n;
  const double expected_mag = 1.0 / std::sqrt(static_cast<double>(count) * 2.0);
  const uint64_t phase_mask = uint64_t{1} << layout.phase_qubit;

  EquivalenceReport report;
  report.tau = tau;

  std::vector<bool> on_support(state.dimension(), false);
  for (uint64_t x = 0; x < count; ++x) {
    const uint64_t idx0 = layout.basis_index(x);
    const uint64_t idx1 = idx0 | phase_mask;
    on_support[idx0] = true;
    on_support[idx1] = true;

    const sim::Complex a0 = state.amplitude(idx0);
    const sim::Complex a1 = state.amplitude(idx1);
    EquivalenceRow row;
    row.pattern = net::StationCombination(x, n).to_string();
    row.circuit_sign = a0.real() >= 0.0 ? 1 : -1;
    row.functional_sign = functional.marks(x) ? -1 : 1;
    // The phase qubit must still read |->, and the magnitude must be intact.
    const double defect = std::max(std::abs(a0 - sim::Complex(row.circuit_sign * expected_mag, 0.0)),
                                   std::abs(a1 + sim::Complex(row.circuit_sign * expected_mag, 0.0)));
    row.match = row.circuit_sign == row.functional_sign && defect < 1e-9;
    report.all_match = report.all_match && row.match;
    report.rows.push_back(std::move(row));
  }

  double residual = 0.0;
  for (uint64_t i = 0; i < state.dimension(); ++i) {
    if (!on_support[i]) residual += std::norm(state.amplitude(i));
  }
  report.max_residual_mass = residual;
  report.all_match = report.all_match && residual < 1e-10;
  return report;
}

}  // namespace cslpq::oracle
