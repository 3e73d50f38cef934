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

#ifndef CSLPQ_SRC_GAS_HPP
#define CSLPQ_SRC_GAS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "net.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "sim.hpp"

namespace cslpq::gas {

enum class OracleMode { functional, circuit };
enum class BudgetFormula { alg3, alg2 };

struct GasConfig {
  double lambda = 8.0 / 7.0;           // growth factor, 1 < lambda
  std::optional<int> initial_tau;      // unset: uniform over [1, n+1]
  BudgetFormula budget = BudgetFormula::alg3;
  int repetitions = 7;
  OracleMode mode = OracleMode::functional;
  uint64_t seed = 0;
};

/// One prepare/iterate/measure attempt of the search loop.
struct Attempt {
  double m_before = 1.0;
  int j = 0;
  uint64_t measured = 0;
  bool valid = false;
  int weight = 0;
  bool accepted = false;
  double run_time_after = 0.0;
};

struct GasOutcome {
  int n = 0;
  uint64_t seed = 0;
  int initial_tau = 0;
  std::optional<net::StationCombination> best;  // unset: no feasible result found
  int final_tau = 0;
  double run_time = 0.0;
  double budget = 0.0;
  std::vector<Attempt> attempts;
};

struct RepeatOutcome {
  uint64_t master_seed = 0;
  std::optional<net::StationCombination> best;
  std::vector<GasOutcome> repetitions;
};

/// Oracle-call budget: 22.5*sqrt(2^n) plus 1.4*n (the network-procedure
/// form) or 1.4*n^2 (the generic adaptive-search form).
double budget_limit(BudgetFormula formula, int n);

/// Simulation backend for the search loops: prepares the initial state,
/// applies Grover iterations at a threshold, and measures the station
/// pattern. Functional mode simulates only the n station qubits; circuit
/// mode runs the explicit oracle on the full iteration layout.
class SearchDriver {
 public:
  SearchDriver(const net::Network& network, OracleMode mode);

  int n() const { return n_; }
  double m_cap() const;  // sqrt(2^n), the growth ceiling of Alg-style loops
  bool pattern_valid(uint64_t station_pattern) const;
  bool marks(uint64_t station_pattern, int tau) const;
  uint64_t marked_count(int tau) const;

  uint64_t run_attempt(int iterations, int tau, Rng& rng);

 private:
  const net::Network* network_;
  OracleMode mode_;
  int n_;
  net::BooleanExpr expr_;
  std::vector<bool> valid_;  // per station pattern

  sim::Circuit diffuser_;  // functional mode, n qubits

  oracle::RegisterLayout layout_;  // circuit mode
  sim::Circuit init_;
  std::map<int, sim::Circuit> iterations_by_tau_;
};

struct ExponentialSearchOutcome {
  std::optional<uint64_t> found;
  std::vector<Attempt> attempts;
};

/// Boyer-style exponential search at a fixed threshold: j is drawn uniformly
/// among the integers below m, m grows by lambda up to `cap` on failure, and
/// the first measured marked pattern is returned. Exhaustion (attempt limit
/// or budget) leaves `found` unset.
ExponentialSearchOutcome exponential_search(SearchDriver& driver, int tau, double lambda,
                                            double cap, Rng& rng, int max_attempts);

/// Full network procedure: inlined exponential search with threshold
/// adaptation, run_time += n + j accounting, and m reset on improvement.
GasOutcome solve_cslp(const net::Network& network, const GasConfig& config, uint64_t seed);

/// Generic adaptive search: repeated exponential-search calls under the
/// shared budget, threshold updated on strict improvement.
GasOutcome adaptive_search(const net::Network& network, const GasConfig& config,
                           uint64_t seed);

/// Best of `config.repetitions` independent runs (child seeds derived from
/// config.seed); ties resolve to the earliest repetition.
RepeatOutcome repeat_solve(const net::Network& network, const GasConfig& config);

}  // namespace cslpq::gas

#endif  // CSLPQ_SRC_GAS_HPP
