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

#include "grover.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "error.hpp"

namespace cslpq::grover {

using sim::Circuit;
using sim::ControlBit;
using sim::Gate;

GroverGeometry GroverGeometry::from_counts(uint64_t search_space, uint64_t marked) {
  if (search_space == 0 || marked > search_space) {
    throw Error(ErrorCode::invalid_argument, "need 0 <= M <= N with N > 0");
  }
  GroverGeometry g;
  g.search_space = search_space;
  g.marked = marked;
  g.theta = 2.0 * std::asin(std::sqrt(static_cast<double>(marked) /
                                      static_cast<double>(search_space)));
  g.iteration_bound = marked == 0 ? 0 : grover::iteration_bound(search_space, marked);
  return g;
}

double success_probability(int k, uint64_t search_space, uint64_t marked) {
  if (marked == 0) return 0.0;
  const double half_theta = std::asin(
      std::sqrt(static_cast<double>(marked) / static_cast<double>(search_space)));
  const double s = std::sin(static_cast<double>(2 * k + 1) * half_theta);
  return s * s;
}

uint64_t iteration_bound(uint64_t search_space, uint64_t marked) {
  if (marked == 0) {
    throw Error(ErrorCode::invalid_argument, "iteration bound undefined for M = 0");
  }
  const double ratio = static_cast<double>(search_space) / static_cast<double>(marked);
  return static_cast<uint64_t>(
      std::ceil(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

sim::Circuit build_hamming_counter(int num_qubits, std::span<const int> station_qubits,
                                   std::span<const int> counting_qubits) {
  const int n = static_cast<int>(station_qubits.size());
  const int width = static_cast<int>(counting_qubits.size());
  if (n < 1) {
    throw Error(ErrorCode::invalid_argument, "counter needs at least one station qubit");
  }
  if (width < oracle::RegisterLayout::counting_bits(n)) {
    throw Error(ErrorCode::invalid_argument,
                "counting register too narrow for weights up to " + std::to_string(n));
  }

  Circuit circuit(num_qubits);
  for (int q : counting_qubits) circuit.add(Gate::h(q));
  // Counting bit j accumulates phase 2*pi*2^j/2^width per set station qubit.
  for (int j = 0; j < width; ++j) {
    for (int s : station_qubits) {
      circuit.add(Gate::cphase({ControlBit{counting_qubits[j], true}}, s, width - j));
    }
  }
  std::vector<int> counting(counting_qubits.begin(), counting_qubits.end());
  circuit.add(Gate::qft_inverse(std::move(counting)));
  return circuit;
}

sim::Circuit build_comparator(int num_qubits, std::span<const int> value_qubits,
                              std::span<const int> carry_qubits, int result_qubit,
                              int tau) {
  const int t = static_cast<int>(value_qubits.size());
  if (t < 1) {
    throw Error(ErrorCode::invalid_argument, "comparator needs a value register");
  }
  const int limit = 1 << t;
  if (tau < 0 || tau > limit) {
    throw Error(ErrorCode::invalid_argument, "tau outside [0, 2^t]");
  }
  if (static_cast<int>(carry_qubits.size()) < t - 1) {
    throw Error(ErrorCode::invalid_argument, "comparator needs t-1 carry qubits");
  }

  Circuit circuit(num_qubits);
  if (tau == 0) return circuit;  // nothing is below zero
  if (tau == limit) {            // everything fits in t bits
    circuit.add(Gate::x(result_qubit));
    return circuit;
  }

  // Ripple the carry of value + (2^t - tau): the final carry is set exactly
  // when value >= tau, so the flag is its complement. Carry i+1 lands in
  // carry_qubits[i], except the last which goes straight to the result.
  const int addend = limit - tau;
  std::vector<Gate> carry_writes;  // the part mirrored for uncomputation
  auto emit = [&](const Gate& gate, bool is_final) {
    circuit.add(gate);
    if (!is_final) carry_writes.push_back(gate);
  };
  for (int i = 0; i < t; ++i) {
    const bool final_step = i == t - 1;
    const int into = final_step ? result_qubit : carry_qubits[i];
    const bool bit = (addend >> i) & 1;
    if (i == 0) {
      if (bit) emit(Gate::cx(value_qubits[0], into), final_step);
      // addend bit 0 clear: carry_1 = 0, the ancilla already reads it.
    } else {
      const int prev = carry_qubits[i - 1];
      if (bit) {
        // carry OR value bit, as NOT(AND of complements)
        emit(Gate::mcx({ControlBit{value_qubits[i], false}, ControlBit{prev, false}}, into),
             final_step);
        emit(Gate::x(into), final_step);
      } else {
        emit(Gate::mcx({ControlBit{value_qubits[i], true}, ControlBit{prev, true}}, into),
             final_step);
      }
    }
  }
  circuit.add(Gate::x(result_qubit));  // flag = NOT carry_t

  for (auto it = carry_writes.rbegin(); it != carry_writes.rend(); ++it) {
    circuit.add(*it);  // X and MCX are involutions
  }
  return circuit;
}

sim::Circuit build_diffuser(int num_qubits, std::span<const int> register_qubits) {
  if (register_qubits.empty()) {
    throw Error(ErrorCode::invalid_argument, "diffuser needs a register");
  }
  Circuit circuit(num_qubits);
  for (int q : register_qubits) circuit.add(Gate::h(q));
  for (int q : register_qubits) circuit.add(Gate::x(q));
  std::vector<ControlBit> controls;
  for (std::size_t i = 0; i + 1 < register_qubits.size(); ++i) {
    controls.push_back(ControlBit{register_qubits[i], true});
  }
  circuit.add(Gate::cphase(std::move(controls), register_qubits.back(), 1));
  for (int q : register_qubits) circuit.add(Gate::x(q));
  for (int q : register_qubits) circuit.add(Gate::h(q));
  return circuit;
}

sim::Circuit build_full_oracle(const net::Network& network,
                               const oracle::RegisterLayout& layout, int tau) {
  const Circuit validity = oracle::build_network_validity(network, layout);
  const Circuit counter = build_hamming_counter(layout.total_qubits, layout.node_qubits(),
                                                layout.counting_qubits());
  const Circuit comparator =
      build_comparator(layout.total_qubits, layout.counting_qubits(),
                       layout.carry_qubits(), layout.comparator_result_qubit, tau);

  Circuit circuit(layout.total_qubits);
  layout.declare_registers(circuit);
  circuit.append(validity);
  circuit.append(counter);
  circuit.append(comparator);
  circuit.add(Gate::mcx({ControlBit{layout.total_validity_qubit, true},
                         ControlBit{layout.comparator_result_qubit, true}},
                        layout.phase_qubit));
  circuit.append(comparator.inverse());
  circuit.append(counter.inverse());
  circuit.append(validity.inverse());
  return circuit;
}

sim::Circuit build_full_iteration(const net::Network& network,
                                  const oracle::RegisterLayout& layout, int tau) {
  Circuit circuit = build_full_oracle(network, layout, tau);
  circuit.append(build_diffuser(layout.total_qubits, layout.node_qubits()));
  return circuit;
}

void functional_iteration(sim::Statevector& state,
                          const oracle::FunctionalPhaseOracle& oracle,
                          const sim::Circuit& diffuser) {
  oracle.apply(state);
  state.apply(diffuser);
}

}  // namespace cslpq::grover
