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

#include <bit>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "error.hpp"
#include "grover.hpp"
#include "net.hpp"
#include "sim.hpp"

namespace cslpq::oracle {
namespace {

using net::Network;
using net::StationCombination;
using sim::Complex;
using sim::Statevector;

const std::string kDataDir = CSLPQ_DATA_DIR;

Network corridor() { return Network::load_file(kDataDir + "/corridor.json"); }
Network illinois() { return Network::load_file(kDataDir + "/illinois.json"); }

// Classical replay of the isolation rule: node i (or O) is isolated when it
// carries a station (O always counts) and no accessible member does, with
// the destination D counting as a station.
bool classically_isolated(const net::AccessibleSet& acc, bool occupied,
                          const StationCombination& combo) {
  if (!occupied) return false;
  if (acc.contains_dest) return false;
  for (int j : acc.nodes) {
    if (combo.has(j)) return false;
  }
  return true;
}

TEST(Layout, FormulasHoldForSmallGrid) {
  for (int n = 1; n <= 10; ++n) {
    for (int trips = 1; trips <= 5; ++trips) {
      const RegisterLayout validity = RegisterLayout::validity(n, trips, true);
      EXPECT_EQ(validity.total_qubits, (trips + 1) * (n + 2) + 1);

      const RegisterLayout iteration = RegisterLayout::grover_iteration(n, trips);
      const int t = RegisterLayout::counting_bits(n);
      EXPECT_EQ(iteration.total_qubits,
                trips * (n + 2) + n + std::max(2 * t, n + 1) + 4);
    }
  }
}

TEST(Layout, CorridorTotals) {
  EXPECT_EQ(RegisterLayout::validity(4, 1, false).total_qubits, 12);
  EXPECT_EQ(RegisterLayout::validity(4, 1, true).total_qubits, 13);
  EXPECT_EQ(RegisterLayout::grover_iteration(4, 1).total_qubits, 20);
  EXPECT_EQ(RegisterLayout::validity_qubit_formula(1, 1), 7);
  EXPECT_EQ(RegisterLayout::iteration_qubit_formula(7, 15), 154);
}

TEST(Layout, RegionsAreDisjointAndCover) {
  const RegisterLayout layout = RegisterLayout::grover_iteration(5, 2);
  sim::Circuit shell(layout.total_qubits);
  layout.declare_registers(shell);  // overlap would throw
  int covered = 0;
  for (const sim::RegisterSpan& r : shell.registers()) covered += r.width;
  EXPECT_EQ(covered, layout.total_qubits);
}

TEST(Initialization, CorridorUniformPattern) {
  const Network net = corridor();
  const RegisterLayout layout = RegisterLayout::validity(4, 1, false);
  ASSERT_EQ(layout.total_qubits, 12);
  Statevector state(layout.total_qubits);
  state.apply(build_initialization(layout));
  for (uint64_t x = 0; x < 16; ++x) {
    const Complex amp = state.amplitude(layout.basis_index(x));
    EXPECT_NEAR(std::abs(amp - Complex{0.25, 0.0}), 0.0, 1e-12);
  }
  EXPECT_NEAR(state.subset_probability(layout.node_qubits(), 0b0000), 1.0 / 16.0, 1e-12);
  (void)net;
}

TEST(Initialization, SingleNodeNetwork) {
  const RegisterLayout layout = RegisterLayout::validity(1, 1, false);
  Statevector state(layout.total_qubits);
  state.apply(build_initialization(layout));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(state.amplitude(layout.basis_index(0)) - Complex{inv_sqrt2, 0.0}),
              0.0, 1e-12);
  EXPECT_NEAR(std::abs(state.amplitude(layout.basis_index(1)) - Complex{inv_sqrt2, 0.0}),
              0.0, 1e-12);
}

TEST(Detector, StationOnlyAtNodeTwo) {
  const Network net = corridor();
  const RegisterLayout layout = RegisterLayout::validity(4, 1, false);
  const sim::Circuit detector = build_isolation_detector(net.trips()[0], layout, 0);

  const uint64_t pattern = 0b0010;  // S = 0100 rendered S_1-leftmost
  Statevector state =
      Statevector::basis_state(layout.total_qubits, layout.basis_index(pattern));
  state.apply(detector);
  // Ancilla slot 2 (node 2's check) flips; everything else stays.
  const uint64_t expected =
      layout.basis_index(pattern) | (uint64_t{1} << (layout.trips[0].anc_offset + 2));
  EXPECT_NEAR(std::abs(state.amplitude(expected) - Complex{1.0, 0.0}), 0.0, 1e-12);
}

TEST(Detector, NoStationsFlagsOrigin) {
  const Network net = corridor();
  const RegisterLayout layout = RegisterLayout::validity(4, 1, false);
  const sim::Circuit detector = build_isolation_detector(net.trips()[0], layout, 0);

  Statevector state = Statevector::basis_state(layout.total_qubits, layout.basis_index(0));
  state.apply(detector);
  const uint64_t expected =
      layout.basis_index(0) | (uint64_t{1} << layout.trips[0].anc_offset);
  EXPECT_NEAR(std::abs(state.amplitude(expected) - Complex{1.0, 0.0}), 0.0, 1e-12);
}

TEST(Detector, AllStationsLeaveAncillasClear) {
  const Network net = corridor();
  const RegisterLayout layout = RegisterLayout::validity(4, 1, false);
  const sim::Circuit detector = build_isolation_detector(net.trips()[0], layout, 0);

  Statevector state =
      Statevector::basis_state(layout.total_qubits, layout.basis_index(0b1111));
  state.apply(detector);
  EXPECT_NEAR(std::abs(state.amplitude(layout.basis_index(0b1111)) - Complex{1.0, 0.0}),
              0.0, 1e-12);
}

TEST(Detector, MatchesClassicalReplayExhaustively) {
  const Network net = corridor();
  const net::TripPath& trip = net.trips()[0];
  const RegisterLayout layout = RegisterLayout::validity(4, 1, false);
  const sim::Circuit detector = build_isolation_detector(trip, layout, 0);

  for (uint64_t pattern = 0; pattern < 16; ++pattern) {
    const StationCombination combo(pattern, 4);
    uint64_t anc_bits = 0;
    if (classically_isolated(trip.origin_access, true, combo)) anc_bits |= 1;
    for (std::size_t k = 0; k < trip.sequence.size(); ++k) {
      if (classically_isolated(trip.node_access[k], combo.has(trip.sequence[k]), combo)) {
        anc_bits |= uint64_t{1} << (k + 1);
      }
    }
    Statevector state =
        Statevector::basis_state(layout.total_qubits, layout.basis_index(pattern));
    state.apply(detector);
    const uint64_t expected =
        layout.basis_index(pattern) | (anc_bits << layout.trips[0].anc_offset);
    EXPECT_NEAR(std::abs(state.amplitude(expected) - Complex{1.0, 0.0}), 0.0, 1e-12)
        << "pattern " << combo.to_string();
  }
}

TEST(Labeler, FlipsValidityWhenAncillasClear) {
  const RegisterLayout layout = RegisterLayout::validity(4, 1, false);
  const sim::Circuit labeler = build_labeler(layout, 0);

  Statevector clear(layout.total_qubits);
  clear.apply(labeler);
  EXPECT_NEAR(std::abs(clear.amplitude(uint64_t{1} << layout.trips[0].validity_qubit) -
                       Complex{1.0, 0.0}),
              0.0, 1e-12);

  const uint64_t dirty = uint64_t{1} << (layout.trips[0].anc_offset + 3);
  Statevector flagged = Statevector::basis_state(layout.total_qubits, dirty);
  flagged.apply(labeler);
  EXPECT_NEAR(std::abs(flagged.amplitude(dirty) - Complex{1.0, 0.0}), 0.0, 1e-12);
}

TEST(Labeler, CorridorValidityBitMatchesPredicate) {
  const Network net = corridor();
  const RegisterLayout layout = RegisterLayout::validity(4, 1, false);
  sim::Circuit pipeline(layout.total_qubits);
  const sim::Circuit detector = build_isolation_detector(net.trips()[0], layout, 0);
  pipeline.append(detector);
  pipeline.append(build_labeler(layout, 0));
  pipeline.append(build_restoration(detector));

  for (uint64_t pattern = 0; pattern < 16; ++pattern) {
    Statevector state =
        Statevector::basis_state(layout.total_qubits, layout.basis_index(pattern));
    state.apply(pipeline);
    const bool valid = net.is_valid(StationCombination(pattern, 4));
    const uint64_t expected =
        layout.basis_index(pattern) |
        (static_cast<uint64_t>(valid) << layout.trips[0].validity_qubit);
    EXPECT_NEAR(std::abs(state.amplitude(expected) - Complex{1.0, 0.0}), 0.0, 1e-12)
        << "pattern " << pattern;
  }
}

TEST(Restoration, UndoesDetectorOnSuperposition) {
  const Network net = corridor();
  const RegisterLayout layout = RegisterLayout::validity(4, 1, false);
  const sim::Circuit detector = build_isolation_detector(net.trips()[0], layout, 0);

  Statevector state(layout.total_qubits);
  state.apply(build_initialization(layout));
  state.apply(detector);
  state.apply(build_restoration(detector));

  double off_support = 0.0;
  for (uint64_t x = 0; x < 16; ++x) {
    const Complex amp = state.amplitude(layout.basis_index(x));
    off_support += 1.0 / 16.0 - std::norm(amp);
  }
  EXPECT_LT(std::abs(off_support), 1e-10);
}

TEST(Restoration, EmptyFragmentIsIdentity) {
  const sim::Circuit empty(3);
  EXPECT_EQ(build_restoration(empty).size(), 0u);
}

TEST(Restoration, PipelineKeepsStationMarginalAndEntanglesOnlyValidity) {
  const Network net = corridor();
  const RegisterLayout layout = RegisterLayout::validity(4, 1, false);
  const sim::Circuit detector = build_isolation_detector(net.trips()[0], layout, 0);

  Statevector state(layout.total_qubits);
  state.apply(build_initialization(layout));
  state.apply(detector);
  state.apply(build_labeler(layout, 0));
  state.apply(build_restoration(detector));

  // Support must be exactly {basis(x) + v_1 = is_valid(x)}: station marginal
  // uniform, ancillas clean, v_1 a function of the pattern.
  double support_mass = 0.0;
  for (uint64_t x = 0; x < 16; ++x) {
    const bool valid = net.is_valid(StationCombination(x, 4));
    const uint64_t idx =
        layout.basis_index(x) |
        (static_cast<uint64_t>(valid) << layout.trips[0].validity_qubit);
    const double p = std::norm(state.amplitude(idx));
    EXPECT_NEAR(p, 1.0 / 16.0, 1e-12);
    support_mass += p;
  }
  EXPECT_NEAR(support_mass, 1.0, 1e-10);
}

TEST(NetworkValidity, CorridorTotalFlagMatchesPredicate) {
  const Network net = corridor();
  const RegisterLayout layout = RegisterLayout::validity(4, 1, true);
  ASSERT_EQ(layout.total_qubits, 13);
  const sim::Circuit validity = build_network_validity(net, layout);

  for (uint64_t pattern = 0; pattern < 16; ++pattern) {
    Statevector state =
        Statevector::basis_state(layout.total_qubits, layout.basis_index(pattern));
    state.apply(validity);
    const bool valid = net.is_valid(StationCombination(pattern, 4));
    // v_1 and v_T are both set on valid patterns; ancillas stay dirty until
    // the inverse runs, so only check the flags via marginals.
    const std::vector<int> v_bits = {layout.trips[0].validity_qubit,
                                     layout.total_validity_qubit};
    EXPECT_NEAR(state.subset_probability(v_bits, valid ? 0b11 : 0b00), 1.0, 1e-12)
        << "pattern " << pattern;
  }
}

TEST(NetworkValidity, DuplicateTripGivesSameTotalFlag) {
  const Network once = corridor();
  const Network twice = Network::parse(R"({
    "range_miles": 100,
    "nodes": ["1", "2", "3", "4"],
    "edges": [["1", "2", 40], ["2", "3", 70], ["3", "4", 30]],
    "trips": [{"origin": "1", "dest": "4"}, {"origin": "1", "dest": "4"}]
  })");
  const RegisterLayout layout2 = RegisterLayout::validity(4, 2, true);
  const sim::Circuit validity2 = build_network_validity(twice, layout2);

  for (uint64_t pattern = 0; pattern < 16; ++pattern) {
    Statevector state =
        Statevector::basis_state(layout2.total_qubits, layout2.basis_index(pattern));
    state.apply(validity2);
    const bool valid = once.is_valid(StationCombination(pattern, 4));
    const std::vector<int> vt = {layout2.total_validity_qubit};
    EXPECT_NEAR(state.subset_probability(vt, valid ? 1 : 0), 1.0, 1e-12);
  }
}

TEST(FunctionalOracle, CorridorTauThreeMarksTheTwoOptima) {
  const Network net = corridor();
  const FunctionalPhaseOracle oracle(net.build_validity_expression(), 4, 3);
  const std::set<uint64_t> expected = {0b0110, 0b1010};  // {2,3} and {2,4}
  for (uint64_t x = 0; x < 16; ++x) {
    EXPECT_EQ(oracle.marks(x), expected.count(x) == 1) << "pattern " << x;
  }
  EXPECT_EQ(oracle.marked_count(), 2u);
}

TEST(FunctionalOracle, TauZeroIsIdentity) {
  const Network net = corridor();
  const FunctionalPhaseOracle oracle(net.build_validity_expression(), 4, 0);
  EXPECT_EQ(oracle.marked_count(), 0u);

  Statevector state(4);
  for (int q = 0; q < 4; ++q) state.apply(sim::Gate::h(q));
  oracle.apply(state);
  for (uint64_t x = 0; x < 16; ++x) {
    EXPECT_NEAR(std::abs(state.amplitude(x) - Complex{0.25, 0.0}), 0.0, 1e-12);
  }
}

TEST(FunctionalOracle, IllinoisMarkedCountsMatchBruteForce) {
  const Network net = illinois();
  const net::BooleanExpr expr = net.build_validity_expression();
  for (int tau = 0; tau <= 8; ++tau) {
    uint64_t brute = 0;
    for (uint64_t x = 0; x < 128; ++x) {
      const StationCombination combo(x, 7);
      if (net.is_valid(combo) && combo.weight() < tau) ++brute;
    }
    const FunctionalPhaseOracle oracle(expr, 7, std::min(tau, 8));
    EXPECT_EQ(oracle.marked_count(), brute) << "tau " << tau;
  }
}

TEST(FunctionalOracle, DiagonalityPreservesStationProbabilities) {
  const Network net = corridor();
  const FunctionalPhaseOracle oracle(net.build_validity_expression(), 4, 3);
  Statevector state(4);
  for (int q = 0; q < 4; ++q) state.apply(sim::Gate::h(q));
  std::vector<double> before(16);
  for (uint64_t x = 0; x < 16; ++x) before[x] = std::norm(state.amplitude(x));
  oracle.apply(state);
  for (uint64_t x = 0; x < 16; ++x) {
    EXPECT_NEAR(std::norm(state.amplitude(x)), before[x], 1e-15);
  }
}

TEST(Equivalence, CorridorFullSweepAgrees) {
  const Network net = corridor();
  for (int tau = 0; tau <= 5; ++tau) {
    const EquivalenceReport report = verify_oracle_equivalence(net, tau);
    EXPECT_TRUE(report.all_match) << "tau " << tau;
    EXPECT_LT(report.max_residual_mass, 1e-10);
    uint64_t marked = 0;
    for (const EquivalenceRow& row : report.rows) {
      if (row.circuit_sign < 0) ++marked;
    }
    const FunctionalPhaseOracle functional(net.build_validity_expression(), 4, tau);
    EXPECT_EQ(marked, functional.marked_count());
  }
}

TEST(Equivalence, InfeasibleRangeMarksNothing) {
  const Network net = Network::parse(R"({
    "range_miles": 30,
    "nodes": ["1", "2", "3", "4"],
    "edges": [["1", "2", 40], ["2", "3", 70], ["3", "4", 30]],
    "trips": [{"origin": "1", "dest": "4"}]
  })");
  const EquivalenceReport report = verify_oracle_equivalence(net, 3);
  EXPECT_TRUE(report.all_match);
  for (const EquivalenceRow& row : report.rows) {
    EXPECT_EQ(row.circuit_sign, 1);
    EXPECT_EQ(row.functional_sign, 1);
  }
}

TEST(Equivalence, DetectsCorruptedAccessibleSets) {
  // Negative control: the circuit side built from a network whose range was
  // tampered with (accessible sets lose members) must disagree with the
  // honest functional oracle.
  const Network good = corridor();
  const Network corrupted = Network::parse(R"({
    "range_miles": 90,
    "nodes": ["1", "2", "3", "4"],
    "edges": [["1", "2", 40], ["2", "3", 70], ["3", "4", 30]],
    "trips": [{"origin": "1", "dest": "4"}]
  })");

  const RegisterLayout layout = RegisterLayout::grover_iteration(4, 1);
  const sim::Circuit bad_oracle = grover::build_full_oracle(corrupted, layout, 3);

  Statevector state(layout.total_qubits);
  state.apply(build_initialization(layout));
  state.apply(sim::Gate::x(layout.phase_qubit));
  state.apply(sim::Gate::h(layout.phase_qubit));
  state.apply(bad_oracle);

  const FunctionalPhaseOracle honest(good.build_validity_expression(), 4, 3);
  int mismatches = 0;
  for (uint64_t x = 0; x < 16; ++x) {
    const int circuit_sign =
        state.amplitude(layout.basis_index(x)).real() >= 0.0 ? 1 : -1;
    if ((circuit_sign < 0) != honest.marks(x)) ++mismatches;
  }
  EXPECT_GT(mismatches, 0);
}

TEST(Equivalence, RejectsOversizeInstances) {
  EXPECT_THROW(verify_oracle_equivalence(illinois(), 4), Error);
}

TEST(FunctionalOracle, ValidatesArguments) {
  const Network net = corridor();
  EXPECT_THROW(FunctionalPhaseOracle(net.build_validity_expression(), 4, -1), Error);
  EXPECT_THROW(FunctionalPhaseOracle(net.build_validity_expression(), 4, 6), Error);
}

}  // namespace
}  // namespace cslpq::oracle
