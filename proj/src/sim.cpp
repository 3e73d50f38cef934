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

#include "sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "error.hpp"

namespace cslpq::sim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct ControlMasks {
  uint64_t positive = 0;
  uint64_t negative = 0;

  bool satisfied(uint64_t index) const {
    return (index & positive) == positive && (index & negative) == 0;
  }
};

ControlMasks control_masks(const std::vector<ControlBit>& controls) {
  ControlMasks masks;
  for (const ControlBit& c : controls) {
    (c.positive ? masks.positive : masks.negative) |= uint64_t{1} << c.qubit;
  }
  return masks;
}

}  // namespace

Gate Gate::x(int target) {
  Gate g;
  g.kind = Kind::x;
  g.target = target;
  return g;
}

Gate Gate::h(int target) {
  Gate g;
  g.kind = Kind::h;
  g.target = target;
  return g;
}

Gate Gate::phase(int target, int exponent) {
  Gate g;
  g.kind = Kind::phase;
  g.target = target;
  g.phase_exponent = exponent;
  return g;
}

Gate Gate::cx(int control, int target) {
  return mcx({ControlBit{control, true}}, target);
}

Gate Gate::mcx(std::vector<ControlBit> controls, int target) {
  Gate g;
  g.kind = Kind::x;
  g.target = target;
  g.controls = std::move(controls);
  return g;
}

Gate Gate::cphase(std::vector<ControlBit> controls, int target, int exponent) {
  Gate g = phase(target, exponent);
  g.controls = std::move(controls);
  return g;
}

Gate Gate::qft(std::vector<int> qubits) {
  Gate g;
  g.kind = Kind::qft;
  g.span = std::move(qubits);
  return g;
}

Gate Gate::qft_inverse(std::vector<int> qubits) {
  Gate g;
  g.kind = Kind::qft_inverse;
  g.span = std::move(qubits);
  return g;
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case Kind::x:
    case Kind::h:
      break;  // self-inverse
    case Kind::phase:
      g.phase_exponent = -phase_exponent;
      break;
    case Kind::qft:
      g.kind = Kind::qft_inverse;
      break;
    case Kind::qft_inverse:
      g.kind = Kind::qft;
      break;
  }
  return g;
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) {
    throw Error(ErrorCode::invalid_argument, "circuit needs at least one qubit");
  }
}

void Circuit::check_gate(const Gate& gate) const {
  auto check_index = [&](int q) {
    if (q < 0 || q >= num_qubits_) {
      throw Error(ErrorCode::invalid_argument,
                  "gate qubit index " + std::to_string(q) + " out of range");
    }
  };
  if (gate.kind == Gate::Kind::qft || gate.kind == Gate::Kind::qft_inverse) {
    if (gate.span.empty()) {
      throw Error(ErrorCode::invalid_argument, "QFT block needs a qubit list");
    }
    uint64_t seen = 0;
    for (int q : gate.span) {
      check_index(q);
      if (seen & (uint64_t{1} << q)) {
        throw Error(ErrorCode::invalid_argument, "QFT block repeats a qubit");
      }
      seen |= uint64_t{1} << q;
    }
    return;
  }
  check_index(gate.target);
  if (gate.kind == Gate::Kind::phase && gate.phase_exponent == 0) {
    throw Error(ErrorCode::invalid_argument, "phase gate needs a nonzero exponent");
  }
  uint64_t seen = uint64_t{1} << gate.target;
  for (const ControlBit& c : gate.controls) {
    check_index(c.qubit);
    if (seen & (uint64_t{1} << c.qubit)) {
      throw Error(ErrorCode::invalid_argument,
                  "control qubits must be distinct from the target and each other");
    }
    seen |= uint64_t{1} << c.qubit;
  }
}

void Circuit::add(Gate gate) {
  check_gate(gate);
  gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit& other) {
  if (other.num_qubits_ != num_qubits_) {
    throw Error(ErrorCode::invalid_argument, "appending circuit of different width");
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

Circuit Circuit::inverse() const {
  Circuit inv(num_qubits_);
  inv.registers_ = registers_;
  inv.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    inv.gates_.push_back(it->inverse());
  }
  return inv;
}

void Circuit::declare_register(const std::string& name, int offset, int width) {
  if (offset < 0 || width < 0 || offset + width > num_qubits_) {
    throw Error(ErrorCode::invalid_argument, "register '" + name + "' out of range");
  }
  for (const RegisterSpan& r : registers_) {
    const bool disjoint = offset >= r.offset + r.width || r.offset >= offset + width;
    if (!disjoint && width > 0 && r.width > 0) {
      throw Error(ErrorCode::invalid_argument,
                  "register '" + name + "' overlaps '" + r.name + "'");
    }
  }
  registers_.push_back(RegisterSpan{name, offset, width});
}

namespace {

std::string control_list(const std::vector<ControlBit>& controls) {
  std::ostringstream out;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (i) out << ',';
    if (!controls[i].positive) out << '!';
    out << controls[i].qubit;
  }
  return out.str();
}

std::string span_list(const std::vector<int>& span) {
  bool contiguous = true;
  for (std::size_t i = 1; i < span.size(); ++i) {
    if (span[i] != span[i - 1] + 1) {
      contiguous = false;
      break;
    }
  }
  std::ostringstream out;
  if (contiguous) {
    out << 'q' << span.front();
    if (span.size() > 1) out << ".." << 'q' << span.back();
  } else {
    out << "q:";
    for (std::size_t i = 0; i < span.size(); ++i) {
      if (i) out << ',';
      out << span[i];
    }
  }
  return out.str();
}

}  // namespace

std::string Circuit::dump() const {
  std::ostringstream out;
  for (const Gate& g : gates_) {
    switch (g.kind) {
      case Gate::Kind::x:
        if (g.controls.empty()) {
          out << "X q" << g.target;
        } else {
          out << "MCX c:" << control_list(g.controls) << " t:" << g.target;
        }
        break;
      case Gate::Kind::h:
        if (g.controls.empty()) {
          out << "H q" << g.target;
        } else {
          out << "MCH c:" << control_list(g.controls) << " t:" << g.target;
        }
        break;
      case Gate::Kind::phase:
        if (g.controls.empty()) {
          out << "PHASE n=" << g.phase_exponent << " q" << g.target;
        } else {
          out << "CPHASE n=" << g.phase_exponent << " c:" << control_list(g.controls)
              << " t:" << g.target;
        }
        break;
      case Gate::Kind::qft:
        out << "QFT " << span_list(g.span);
        break;
      case Gate::Kind::qft_inverse:
        out << "IQFT " << span_list(g.span);
        break;
    }
    out << '\n';
  }
  return out.str();
}

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxSimQubits) {
    throw Error(ErrorCode::unsupported,
                "statevector size " + std::to_string(num_qubits) + " outside [1, " +
                    std::to_string(kMaxSimQubits) + "]");
  }
  amps_.assign(uint64_t{1} << num_qubits_, Complex{0.0, 0.0});
  amps_[0] = Complex{1.0, 0.0};
}

Statevector Statevector::basis_state(int num_qubits, uint64_t index) {
  Statevector state(num_qubits);
  if (index >= state.dimension()) {
    throw Error(ErrorCode::invalid_argument, "basis index out of range");
  }
  state.amps_[0] = Complex{0.0, 0.0};
  state.amps_[index] = Complex{1.0, 0.0};
  return state;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes) {
  const auto size = amplitudes.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw Error(ErrorCode::invalid_argument, "amplitude count must be a power of two");
  }
  const int num_qubits = std::countr_zero(size);
  Statevector state(std::max(num_qubits, 1));
  if (state.dimension() != size) {
    throw Error(ErrorCode::invalid_argument, "amplitude count out of range");
  }
  state.amps_ = std::move(amplitudes);
  if (std::abs(state.norm() - 1.0) > 1e-9) {
    throw Error(ErrorCode::invalid_argument, "amplitudes must be normalized");
  }
  return state;
}

void Statevector::apply(const Gate& gate) {
  // QFT blocks expand to the standard network; everything else is a bitmask
  // sweep over amplitude pairs (or a diagonal sweep for phases).
  if (gate.kind == Gate::Kind::qft || gate.kind == Gate::Kind::qft_inverse) {
    const std::vector<int>& qs = gate.span;
    const int t = static_cast<int>(qs.size());
    std::vector<Gate> expansion;
    for (int i = t - 1; i >= 0; --i) {
      expansion.push_back(Gate::h(qs[i]));
      for (int k = i - 1; k >= 0; --k) {
        expansion.push_back(Gate::cphase({ControlBit{qs[k], true}}, qs[i], i - k + 1));
      }
    }
    for (int k = 0; k < t / 2; ++k) {
      const int a = qs[k];
      const int b = qs[t - 1 - k];
      expansion.push_back(Gate::cx(a, b));
      expansion.push_back(Gate::cx(b, a));
      expansion.push_back(Gate::cx(a, b));
    }
    if (gate.kind == Gate::Kind::qft_inverse) {
      std::reverse(expansion.begin(), expansion.end());
      for (Gate& g : expansion) g = g.inverse();
    }
    for (const Gate& g : expansion) apply(g);
    return;
  }

  if (gate.target < 0 || gate.target >= num_qubits_) {
    throw Error(ErrorCode::invalid_argument, "gate target out of range");
  }
  for (const ControlBit& c : gate.controls) {
    if (c.qubit < 0 || c.qubit >= num_qubits_ || c.qubit == gate.target) {
      throw Error(ErrorCode::invalid_argument, "gate control out of range");
    }
  }

  const ControlMasks masks = control_masks(gate.controls);
  const uint64_t tmask = uint64_t{1} << gate.target;

  if (gate.kind == Gate::Kind::phase) {
    const double angle = (gate.phase_exponent > 0 ? 1.0 : -1.0) * 2.0 *
                         std::numbers::pi /
                         static_cast<double>(uint64_t{1} << std::abs(gate.phase_exponent));
    const Complex factor = std::polar(1.0, angle);
    for (uint64_t i = 0; i < amps_.size(); ++i) {
      if ((i & tmask) && masks.satisfied(i)) {
        amps_[i] *= factor;
      }
    }
    return;
  }

  const uint64_t lo_mask = tmask - 1;
  const uint64_t hi_mask = ~lo_mask;
  const uint64_t half = amps_.size() >> 1;
  for (uint64_t i = 0; i < half; ++i) {
    const uint64_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
    if (!masks.satisfied(i0)) continue;
    const uint64_t i1 = i0 | tmask;
    if (gate.kind == Gate::Kind::x) {
      std::swap(amps_[i0], amps_[i1]);
    } else {  // Hadamard
      const Complex a = amps_[i0];
      const Complex b = amps_[i1];
      amps_[i0] = (a + b) * kInvSqrt2;
      amps_[i1] = (a - b) * kInvSqrt2;
    }
  }
}

void Statevector::apply(const Circuit& circuit) {
  if (circuit.num_qubits() != num_qubits_) {
    throw Error(ErrorCode::invalid_argument, "circuit width does not match state");
  }
  for (const Gate& g : circuit.gates()) {
    apply(g);
  }
}

void Statevector::apply_sign_flips(const std::vector<bool>& flip) {
  if (flip.size() != amps_.size()) {
    throw Error(ErrorCode::invalid_argument, "sign-flip table does not match state size");
  }
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    if (flip[i]) amps_[i] = -amps_[i];
  }
}

double Statevector::norm() const {
  double sum = 0.0;
  for (const Complex& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

double Statevector::subset_probability(std::span<const int> qubits, uint64_t pattern) const {
  uint64_t mask = 0;
  uint64_t want = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    mask |= uint64_t{1} << qubits[k];
    if (pattern >> k & 1) want |= uint64_t{1} << qubits[k];
  }
  double p = 0.0;
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == want) p += std::norm(amps_[i]);
  }
  return p;
}

uint64_t Statevector::measure(std::span<const int> qubits, Rng& rng) {
  if (qubits.empty()) {
    throw Error(ErrorCode::invalid_argument, "measurement needs at least one qubit");
  }
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits_) {
      throw Error(ErrorCode::invalid_argument, "measured qubit out of range");
    }
  }
  double total = 0.0;
  for (const Complex& a : amps_) total += std::norm(a);
  if (total < 1e-12) {
    throw Error(ErrorCode::invalid_argument, "cannot measure a zero-norm state");
  }

  // Sample a full basis index; its restriction to `qubits` is a sample of the
  // subset marginal.
  const double r = rng.uniform_double() * total;
  double cumulative = 0.0;
  uint64_t chosen = amps_.size() - 1;
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    cumulative += std::norm(amps_[i]);
    if (r < cumulative) {
      chosen = i;
      break;
    }
  }

  uint64_t mask = 0;
  for (int q : qubits) mask |= uint64_t{1} << q;
  const uint64_t want = chosen & mask;

  double kept = 0.0;
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == want) {
      kept += std::norm(amps_[i]);
    } else {
      amps_[i] = Complex{0.0, 0.0};
    }
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (Complex& a : amps_) a *= scale;

  uint64_t outcome = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if (chosen >> qubits[k] & 1) outcome |= uint64_t{1} << k;
  }
  return outcome;
}

UnitaryMatrix circuit_unitary(const Circuit& circuit) {
  if (circuit.num_qubits() > kMaxUnitaryQubits) {
    throw Error(ErrorCode::unsupported, "unitary extraction limited to 10 qubits");
  }
  const uint64_t dim = uint64_t{1} << circuit.num_qubits();
  UnitaryMatrix u;
  u.dim = dim;
  u.entries.assign(dim * dim, Complex{0.0, 0.0});
  for (uint64_t col = 0; col < dim; ++col) {
    Statevector state = Statevector::basis_state(circuit.num_qubits(), col);
    state.apply(circuit);
    for (uint64_t row = 0; row < dim; ++row) {
      u.entries[row * dim + col] = state.amplitude(row);
    }
  }
  return u;
}

}  // namespace cslpq::sim
