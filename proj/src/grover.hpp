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

#ifndef CSLPQ_SRC_GROVER_HPP
#define CSLPQ_SRC_GROVER_HPP

#include <cstdint>
#include <span>

#include "net.hpp"
#include "oracle.hpp"
#include "sim.hpp"

namespace cslpq::grover {

/// Rotation geometry of a search with M marked states out of N.
struct GroverGeometry {
  uint64_t search_space = 0;   // N
  uint64_t marked = 0;         // M
  double theta = 0.0;          // sin(theta/2) = sqrt(M/N)
  uint64_t iteration_bound = 0;  // K = ceil((pi/4) sqrt(N/M)); 0 when M = 0

  static GroverGeometry from_counts(uint64_t search_space, uint64_t marked);
};

/// sin^2((2k+1) theta/2); defined as 0 for M = 0.
double success_probability(int k, uint64_t search_space, uint64_t marked);

/// ceil((pi/4) sqrt(N/M)). Requires M >= 1.
uint64_t iteration_bound(uint64_t search_space, uint64_t marked);

/// Phase-estimation station counter: Hadamards on the counting register,
/// one controlled phase of angle 2*pi*2^j/2^t per (counting bit j, station
/// qubit) pair, then an inverse QFT. Because every Hamming weight is an
/// exact t-bit fraction of the phase, the register reads the weight with
/// probability 1. Width t = ceil(log2(n+1)) is the compact form; width n
/// reproduces the full-register variant.
sim::Circuit build_hamming_counter(int num_qubits, std::span<const int> station_qubits,
                                   std::span<const int> counting_qubits);

/// Reversible threshold test: result ^= (value < tau), strict. Ripple-carries
/// the constant 2^t - tau through `carries` (t-1 qubits, uncomputed in
/// place); the value register is only read. tau must lie in [0, 2^t].
sim::Circuit build_comparator(int num_qubits, std::span<const int> value_qubits,
                              std::span<const int> carry_qubits, int result_qubit,
                              int tau);

/// Inversion about the mean on the given register: H / X / multi-controlled
/// Z / X / H, equal to 2|+^n><+^n| - I up to a global phase.
sim::Circuit build_diffuser(int num_qubits, std::span<const int> register_qubits);

/// Valid -> counter -> comparator -> CCNOT onto the phase qubit -> uncompute
/// in reverse. Diagonal on the station register; every ancilla (trip blocks,
/// v_T, counting, carries, result) returns to |0>.
sim::Circuit build_full_oracle(const net::Network& network,
                               const oracle::RegisterLayout& layout, int tau);

/// Full oracle followed by the diffuser on the station-node qubits.
sim::Circuit build_full_iteration(const net::Network& network,
                                  const oracle::RegisterLayout& layout, int tau);

/// Compact-mode Grover iteration: functional sign flip, then the diffuser
/// (prebuilt on the same n qubits as the state).
void functional_iteration(sim::Statevector& state,
                          const oracle::FunctionalPhaseOracle& oracle,
                          const sim::Circuit& diffuser);

}  // namespace cslpq::grover

#endif  // CSLPQ_SRC_GROVER_HPP
