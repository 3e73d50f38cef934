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

#ifndef CSLPQ_SRC_SIM_HPP
#define CSLPQ_SRC_SIM_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rng.hpp"

namespace cslpq::sim {

using Complex = std::complex<double>;

/// One control wire of a controlled gate. `positive == false` means the gate
/// fires when the control qubit is |0> (rendered as `!q` in dumps).
struct ControlBit {
  int qubit = -1;
  bool positive = true;
};

/// Gate in the simulator's native set. Targets and controls are qubit indices
/// with qubit 0 the least significant bit of a basis-state index.
///
/// `phase` gates apply diag(1, exp(2*pi*i / 2^k)) to the target, the textbook
/// R_k rotation; a negative exponent denotes the adjoint. `qft` blocks act on
/// the qubit list in `span` (least significant first) and expand to the
/// standard H / controlled-phase / swap network when applied.
struct Gate {
  enum class Kind { x, h, phase, qft, qft_inverse };

  Kind kind = Kind::x;
  int target = -1;
  int phase_exponent = 0;
  std::vector<ControlBit> controls;
  std::vector<int> span;

  static Gate x(int target);
  static Gate h(int target);
  static Gate phase(int target, int exponent);
  static Gate cx(int control, int target);
  static Gate mcx(std::vector<ControlBit> controls, int target);
  static Gate cphase(std::vector<ControlBit> controls, int target, int exponent);
  static Gate qft(std::vector<int> qubits);
  static Gate qft_inverse(std::vector<int> qubits);

  Gate inverse() const;
};

/// Named, disjoint qubit region of a circuit; used for layout reporting.
struct RegisterSpan {
  std::string name;
  int offset = 0;
  int width = 0;
};

/// Ordered gate list over a fixed-width qubit register.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  void add(Gate gate);
  void append(const Circuit& other);

  /// Gates reversed and individually inverted; undoes this circuit exactly.
  Circuit inverse() const;

  void declare_register(const std::string& name, int offset, int width);
  const std::vector<RegisterSpan>& registers() const { return registers_; }

  /// Line-oriented text form (`H q3`, `MCX c:0,1,!2 t:5`, `PHASE n=3 q2`,
  /// `CPHASE n=2 c:4 t:1`, `QFT q0..q3`). Stable for golden-file tests.
  std::string dump() const;

 private:
  void check_gate(const Gate& gate) const;

  int num_qubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<RegisterSpan> registers_;
};

/// Dense 2^k-amplitude state. Norm is preserved by every gate; callers own
/// the vector exclusively while mutating it.
class Statevector {
 public:
  explicit Statevector(int num_qubits);
  static Statevector basis_state(int num_qubits, uint64_t index);

  /// Wraps explicit amplitudes (must have power-of-two length and unit norm
  /// within 1e-9); mainly for tests and verification drivers.
  static Statevector from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  uint64_t dimension() const { return uint64_t{1} << num_qubits_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex amplitude(uint64_t index) const { return amps_[index]; }

  void apply(const Gate& gate);
  void apply(const Circuit& circuit);

  /// Diagonal +/-1 operator: negates amps_[x] wherever flip[x] is set.
  void apply_sign_flips(const std::vector<bool>& flip);

  double norm() const;

  /// Probability that the given qubits read exactly `pattern` (packed in the
  /// order of `qubits`, element 0 = bit 0).
  double subset_probability(std::span<const int> qubits, uint64_t pattern) const;

  /// Born-rule sample of the given qubits; collapses and renormalizes the
  /// state. Returns the outcome packed in the order of `qubits`.
  uint64_t measure(std::span<const int> qubits, Rng& rng);

 private:
  int num_qubits_;
  std::vector<Complex> amps_;
};

/// Dense matrix of a circuit (columns are images of basis states).
/// Restricted to small registers; intended for tests and verification.
struct UnitaryMatrix {
  uint64_t dim = 0;
  std::vector<Complex> entries;  // row-major

  Complex at(uint64_t row, uint64_t col) const { return entries[row * dim + col]; }
};

UnitaryMatrix circuit_unitary(const Circuit& circuit);

constexpr int kMaxUnitaryQubits = 10;

/// Largest register the dense simulator will allocate (16 MiB of amplitudes
/// per qubit past 20; full-circuit instances above this must use the
/// functional oracle path).
constexpr int kMaxSimQubits = 24;

}  // namespace cslpq::sim

#endif  // CSLPQ_SRC_SIM_HPP
