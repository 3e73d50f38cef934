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

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "error.hpp"
#include "net.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "sim.hpp"

namespace cslpq::grover {
namespace {

using net::Network;
using oracle::RegisterLayout;
using sim::Complex;
using sim::Statevector;

const std::string kDataDir = CSLPQ_DATA_DIR;

Network corridor() { return Network::load_file(kDataDir + "/corridor.json"); }

std::vector<int> iota(int count, int start = 0) {
  std::vector<int> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + i;
  return out;
}

// The register must land exactly on |expected> as a basis state.
void expect_basis(const Statevector& state, uint64_t expected, const std::string& what) {
  EXPECT_NEAR(std::abs(state.amplitude(expected) - Complex{1.0, 0.0}), 0.0, 1e-10) << what;
}

TEST(Counter, ReadsWeightTwoFromFourBits) {
  const auto counter = build_hamming_counter(7, iota(4), iota(3, 4));
  // S = |0110> in the paper's S_4..S_1 rendering: bits 1 and 2 set.
  Statevector state = Statevector::basis_state(7, 0b0110);
  state.apply(counter);
  expect_basis(state, 0b0110 | (2ull << 4), "weight 2");
}

TEST(Counter, ZeroAndFullWeights) {
  const auto counter5 = build_hamming_counter(8, iota(5), iota(3, 5));
  Statevector zero = Statevector::basis_state(8, 0);
  zero.apply(counter5);
  expect_basis(zero, 0, "weight 0");

  Statevector full = Statevector::basis_state(8, 0b11111);
  full.apply(counter5);
  expect_basis(full, 0b11111 | (5ull << 5), "weight 5");
}

TEST(Counter, ExactOnEveryBasisStateCompactAndFull) {
  for (int n = 1; n <= 5; ++n) {
    for (const bool full : {false, true}) {
      const int width = full ? n : RegisterLayout::counting_bits(n);
      const int total = n + width;
      const auto counter = build_hamming_counter(total, iota(n), iota(width, n));
      for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
        Statevector state = Statevector::basis_state(total, x);
        state.apply(counter);
        const uint64_t expected = x | (static_cast<uint64_t>(std::popcount(x)) << n);
        expect_basis(state, expected,
                     "n=" + std::to_string(n) + " x=" + std::to_string(x) +
                         (full ? " full" : " compact"));
      }
    }
  }
}

TEST(Counter, LeavesStationRegisterUntouchedOnSuperpositions) {
  const int n = 4;
  const int t = RegisterLayout::counting_bits(n);
  const auto counter = build_hamming_counter(n + t, iota(n), iota(t, n));
  Statevector state(n + t);
  for (int q = 0; q < n; ++q) state.apply(sim::Gate::h(q));
  state.apply(counter);
  for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
    const uint64_t idx = x | (static_cast<uint64_t>(std::popcount(x)) << n);
    EXPECT_NEAR(std::abs(state.amplitude(idx) - Complex{0.25, 0.0}), 0.0, 1e-10);
  }
}

TEST(Counter, RejectsNarrowRegister) {
  EXPECT_THROW(build_hamming_counter(6, iota(4), iota(2, 4)), Error);
}

TEST(Comparator, SpotValues) {
  const int t = 3;
  const auto layout_value = iota(t);
  const auto layout_carry = iota(t - 1, t);
  const int result = 2 * t - 1;

  {
    const auto cmp = build_comparator(2 * t, layout_value, layout_carry, result, 3);
    Statevector state = Statevector::basis_state(2 * t, 2);
    state.apply(cmp);
    expect_basis(state, 2 | (1ull << result), "2 < 3");
  }
  {
    const auto cmp = build_comparator(2 * t, layout_value, layout_carry, result, 3);
    Statevector state = Statevector::basis_state(2 * t, 3);
    state.apply(cmp);
    expect_basis(state, 3, "3 < 3 is false");
  }
  {
    const auto cmp = build_comparator(2 * t, layout_value, layout_carry, result, 0);
    Statevector state = Statevector::basis_state(2 * t, 5);
    state.apply(cmp);
    expect_basis(state, 5, "nothing is below zero");
  }
}

TEST(Comparator, ExhaustiveTruthTableUpToFourBits) {
  for (int t = 1; t <= 4; ++t) {
    const int total = 2 * t;
    const auto value = iota(t);
    const auto carries = iota(t - 1, t);
    const int result = 2 * t - 1;
    for (int tau = 0; tau <= (1 << t); ++tau) {
      const auto cmp = build_comparator(total, value, carries, result, tau);
      for (uint64_t v = 0; v < (uint64_t{1} << t); ++v) {
        Statevector state = Statevector::basis_state(total, v);
        state.apply(cmp);
        const uint64_t expected =
            v | (static_cast<uint64_t>(v < static_cast<uint64_t>(tau)) << result);
        expect_basis(state, expected,
                     "t=" + std::to_string(t) + " tau=" + std::to_string(tau) +
                         " v=" + std::to_string(v));
      }
    }
  }
}

TEST(Comparator, AppliedTwiceRestoresResult) {
  const int t = 3;
  const auto cmp = build_comparator(2 * t, iota(t), iota(t - 1, t), 2 * t - 1, 5);
  for (uint64_t v = 0; v < 8; ++v) {
    Statevector state = Statevector::basis_state(2 * t, v);
    state.apply(cmp);
    state.apply(cmp);
    expect_basis(state, v, "involution at v=" + std::to_string(v));
  }
}

TEST(Comparator, RejectsBadTau) {
  EXPECT_THROW(build_comparator(6, iota(3), iota(2, 3), 5, -1), Error);
  EXPECT_THROW(build_comparator(6, iota(3), iota(2, 3), 5, 9), Error);
}

TEST(Diffuser, UniformStateIsFixedUpToPhase) {
  for (int n = 1; n <= 5; ++n) {
    const auto diffuser = build_diffuser(n, iota(n));
    Statevector state(n);
    for (int q = 0; q < n; ++q) state.apply(sim::Gate::h(q));
    state.apply(diffuser);
    const double inv = 1.0 / std::sqrt(std::ldexp(1.0, n));
    for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
      EXPECT_NEAR(std::abs(state.amplitude(x)), inv, 1e-10);
    }
  }
}

TEST(Diffuser, MeanInversionOnRandomStates) {
  Rng rng(2024);
  for (int n : {2, 3, 5}) {
    const uint64_t dim = uint64_t{1} << n;
    const auto diffuser = build_diffuser(n, iota(n));

    // Global phase of this diffuser realization, from its |+^n> action.
    Statevector plus(n);
    for (int q = 0; q < n; ++q) plus.apply(sim::Gate::h(q));
    plus.apply(diffuser);
    const Complex phase = plus.amplitude(0) * std::sqrt(static_cast<double>(dim));

    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Complex> amps(dim);
      double norm = 0.0;
      for (auto& a : amps) {
        a = Complex{rng.uniform_double() - 0.5, rng.uniform_double() - 0.5};
        norm += std::norm(a);
      }
      Complex mean{0.0, 0.0};
      for (auto& a : amps) {
        a /= std::sqrt(norm);
        mean += a;
      }
      mean /= static_cast<double>(dim);

      Statevector state = Statevector::from_amplitudes(amps);
      state.apply(diffuser);
      for (uint64_t x = 0; x < dim; ++x) {
        const Complex want = phase * (2.0 * mean - amps[x]);
        EXPECT_NEAR(std::abs(state.amplitude(x) - want), 0.0, 1e-10);
      }
    }
  }
}

TEST(Diffuser, MatrixEqualsProjectorFormUpToPhase) {
  for (int n = 1; n <= 5; ++n) {
    sim::Circuit circuit(n);
    circuit.append(build_diffuser(n, iota(n)));
    const sim::UnitaryMatrix u = sim::circuit_unitary(circuit);
    const uint64_t dim = uint64_t{1} << n;
    const double off = 2.0 / static_cast<double>(dim);
    // Off-diagonal reference entry; the diagonal vanishes at n = 1.
    const Complex phase = u.at(0, 1) / Complex{off, 0.0};
    EXPECT_NEAR(std::abs(phase), 1.0, 1e-10);
    for (uint64_t r = 0; r < dim; ++r) {
      for (uint64_t c = 0; c < dim; ++c) {
        const double want = r == c ? off - 1.0 : off;
        EXPECT_NEAR(std::abs(u.at(r, c) - phase * Complex{want, 0.0}), 0.0, 1e-10);
      }
    }
  }
}

TEST(Geometry, SuccessProbabilityClosedForms) {
  EXPECT_NEAR(success_probability(0, 16, 2), 2.0 / 16.0, 1e-15);  // k=0 is M/N
  EXPECT_NEAR(success_probability(1, 4, 1), 1.0, 1e-12);
  EXPECT_NEAR(success_probability(2, 16, 2), 0.9453125, 1e-12);
  EXPECT_EQ(success_probability(3, 16, 0), 0.0);
}

TEST(Geometry, IterationBounds) {
  EXPECT_EQ(iteration_bound(16, 2), 3u);
  EXPECT_EQ(iteration_bound(16, 16), 1u);
  EXPECT_EQ(iteration_bound(128, 1), 9u);
  EXPECT_THROW(iteration_bound(16, 0), Error);
}

TEST(Geometry, FromCounts) {
  const GroverGeometry g = GroverGeometry::from_counts(16, 2);
  EXPECT_NEAR(std::sin(g.theta / 2.0), std::sqrt(2.0 / 16.0), 1e-15);
  EXPECT_EQ(g.iteration_bound, 3u);
  EXPECT_THROW(GroverGeometry::from_counts(4, 5), Error);
}

// Marked probability of a simulated compact-mode search against the closed
// form, for synthetic marked sets.
double simulated_marked_probability(int n, const std::vector<bool>& marked, int k) {
  Statevector state(n);
  for (int q = 0; q < n; ++q) state.apply(sim::Gate::h(q));
  const auto diffuser = build_diffuser(n, iota(n));
  for (int it = 0; it < k; ++it) {
    state.apply_sign_flips(marked);
    state.apply(diffuser);
  }
  double p = 0.0;
  for (uint64_t x = 0; x < state.dimension(); ++x) {
    if (marked[x]) p += std::norm(state.amplitude(x));
  }
  return p;
}

TEST(AmplitudeLaw, MatchesClosedFormForSyntheticSets) {
  Rng rng(31337);
  for (const int n : {3, 4, 5}) {
    const uint64_t dim = uint64_t{1} << n;
    for (const uint64_t m : {1ull, 2ull, 4ull}) {
      // One leading block and one random placement per (N, M).
      std::vector<std::vector<bool>> sets;
      sets.emplace_back(dim, false);
      for (uint64_t i = 0; i < m; ++i) sets.back()[i] = true;
      sets.emplace_back(dim, false);
      for (uint64_t placed = 0; placed < m;) {
        const uint64_t slot = rng.uniform_below(dim);
        if (!sets.back()[slot]) {
          sets.back()[slot] = true;
          ++placed;
        }
      }
      for (const auto& marked : sets) {
        for (int k = 0; k <= 6; ++k) {
          const double sim_p = simulated_marked_probability(n, marked, k);
          const double law_p = success_probability(k, dim, m);
          EXPECT_NEAR(sim_p, law_p, 1e-9)
              << "N=" << dim << " M=" << m << " k=" << k;
        }
      }
    }
  }
}

TEST(AmplitudeLaw, SpecialCaseExactlyOne) {
  std::vector<bool> marked(4, false);
  marked[2] = true;
  EXPECT_NEAR(simulated_marked_probability(2, marked, 1), 1.0, 1e-12);
}

TEST(AmplitudeLaw, ZeroMarkedLeavesUniformFixed) {
  const int n = 4;
  const std::vector<bool> marked(16, false);
  Statevector state(n);
  for (int q = 0; q < n; ++q) state.apply(sim::Gate::h(q));
  state.apply_sign_flips(marked);
  state.apply(build_diffuser(n, iota(n)));
  for (uint64_t x = 0; x < 16; ++x) {
    EXPECT_NEAR(std::abs(state.amplitude(x)), 0.25, 1e-12);
  }
}

TEST(FullIteration, CorridorMatchesAmplitudeLaw) {
  const Network net = corridor();
  const RegisterLayout layout = RegisterLayout::grover_iteration(4, 1);
  const oracle::FunctionalPhaseOracle functional(net.build_validity_expression(), 4, 3);
  const uint64_t marked = functional.marked_count();
  ASSERT_EQ(marked, 2u);

  const sim::Circuit iteration = build_full_iteration(net, layout, 3);
  Statevector state(layout.total_qubits);
  state.apply(oracle::build_initialization(layout));
  state.apply(sim::Gate::x(layout.phase_qubit));
  state.apply(sim::Gate::h(layout.phase_qubit));

  const std::vector<int> nodes = layout.node_qubits();
  for (int k = 0; k <= 3; ++k) {
    if (k > 0) state.apply(iteration);
    double p = 0.0;
    for (uint64_t x = 0; x < 16; ++x) {
      if (functional.marks(x)) p += state.subset_probability(nodes, x);
    }
    EXPECT_NEAR(p, success_probability(k, 16, marked), 1e-9) << "k=" << k;
  }
}

TEST(FullIteration, AncillasCleanAfterEachIteration) {
  const Network net = corridor();
  const RegisterLayout layout = RegisterLayout::grover_iteration(4, 1);
  const sim::Circuit iteration = build_full_iteration(net, layout, 3);

  Statevector state(layout.total_qubits);
  state.apply(oracle::build_initialization(layout));
  state.apply(sim::Gate::x(layout.phase_qubit));
  state.apply(sim::Gate::h(layout.phase_qubit));
  state.apply(iteration);
  state.apply(iteration);

  // Everything except station nodes and the phase qubit must read zero
  // (S_O and S_D must read one).
  std::vector<int> ancilla_bits;
  for (int q = 0; q < layout.total_qubits; ++q) {
    if (q == layout.origin_qubit || q == layout.dest_qubit || q == layout.phase_qubit) {
      continue;
    }
    bool is_node = q >= layout.node_offset && q < layout.node_offset + layout.n;
    if (!is_node) ancilla_bits.push_back(q);
  }
  EXPECT_NEAR(state.subset_probability(ancilla_bits, 0), 1.0, 1e-10);
  const std::vector<int> endpoints = {layout.origin_qubit, layout.dest_qubit};
  EXPECT_NEAR(state.subset_probability(endpoints, 0b11), 1.0, 1e-10);
}

}  // namespace
}  // namespace cslpq::grover
