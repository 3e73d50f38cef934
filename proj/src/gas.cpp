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

#include "gas.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "error.hpp"
#include "grover.hpp"

namespace cslpq::gas {

double budget_limit(BudgetFormula formula, int n) {
  const double sqrt_space = std::sqrt(std::ldexp(1.0, n));
  switch (formula) {
    case BudgetFormula::alg3:
      return 22.5 * sqrt_space + 1.4 * n;
    case BudgetFormula::alg2:
      return 22.5 * sqrt_space + 1.4 * n * n;
  }
  throw Error(ErrorCode::internal, "unknown budget formula");
}

namespace {

void validate_config(const GasConfig& config, int n) {
  if (!(config.lambda > 1.0)) {
    throw Error(ErrorCode::invalid_argument, "lambda must exceed 1");
  }
  if (config.repetitions < 1) {
    throw Error(ErrorCode::invalid_argument, "repetitions must be at least 1");
  }
  if (config.initial_tau && (*config.initial_tau < 0 || *config.initial_tau > n + 1)) {
    throw Error(ErrorCode::invalid_argument, "initial tau outside [0, n+1]");
  }
}

int draw_initial_tau(const GasConfig& config, int n, Rng& rng) {
  if (config.initial_tau) return *config.initial_tau;
  return static_cast<int>(rng.uniform_int(1, n + 1));
}

// Integers strictly below m (m >= 1, possibly fractional).
int draw_j(double m, Rng& rng) {
  const auto count = static_cast<uint64_t>(std::ceil(m));
  return static_cast<int>(rng.uniform_below(std::max<uint64_t>(count, 1)));
}

}  // namespace

SearchDriver::SearchDriver(const net::Network& network, OracleMode mode)
    : network_(&network),
      mode_(mode),
      n_(network.node_count()),
      expr_(network.build_validity_expression()) {
  if (n_ < 1) {
    throw Error(ErrorCode::invalid_argument, "network has no station nodes");
  }
  if (n_ > sim::kMaxSimQubits) {
    throw Error(ErrorCode::unsupported, "too many station nodes to simulate");
  }
  valid_.resize(uint64_t{1} << n_);
  for (uint64_t x = 0; x < valid_.size(); ++x) {
    valid_[x] = expr_.evaluate(net::StationCombination(x, n_));
  }

  if (mode_ == OracleMode::functional) {
    std::vector<int> qubits(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) qubits[static_cast<std::size_t>(i)] = i;
    diffuser_ = grover::build_diffuser(n_, qubits);
  } else {
    layout_ = oracle::RegisterLayout::grover_iteration(
        n_, static_cast<int>(network.trips().size()));
    if (layout_.total_qubits > sim::kMaxSimQubits) {
      throw Error(ErrorCode::unsupported,
                  "full-circuit mode needs " + std::to_string(layout_.total_qubits) +
                      " qubits; use the functional oracle mode");
    }
    init_ = oracle::build_initialization(layout_);
    init_.add(sim::Gate::x(layout_.phase_qubit));
    init_.add(sim::Gate::h(layout_.phase_qubit));
  }
}

double SearchDriver::m_cap() const { return std::sqrt(std::ldexp(1.0, n_)); }

bool SearchDriver::pattern_valid(uint64_t station_pattern) const {
  return valid_[station_pattern];
}

bool SearchDriver::marks(uint64_t station_pattern, int tau) const {
  return valid_[station_pattern] &&
         std::popcount(station_pattern) < tau;
}

uint64_t SearchDriver::marked_count(int tau) const {
  uint64_t count = 0;
  for (uint64_t x = 0; x < valid_.size(); ++x) {
    if (marks(x, tau)) ++count;
  }
  return count;
}

uint64_t SearchDriver::run_attempt(int iterations, int tau, Rng& rng) {
  if (mode_ == OracleMode::functional) {
    std::vector<bool> flips(valid_.size());
    for (uint64_t x = 0; x < valid_.size(); ++x) flips[x] = marks(x, tau);

    sim::Statevector state(n_);
    for (int q = 0; q < n_; ++q) state.apply(sim::Gate::h(q));
    for (int k = 0; k < iterations; ++k) {
      state.apply_sign_flips(flips);
      state.apply(diffuser_);
    }
    std::vector<int> qubits(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) qubits[static_cast<std::size_t>(i)] = i;
    return state.measure(qubits, rng);
  }

  auto it = iterations_by_tau_.find(tau);
  if (it == iterations_by_tau_.end()) {
    it = iterations_by_tau_
             .emplace(tau, grover::build_full_iteration(*network_, layout_, tau))
             .first;
  }
  sim::Statevector state(layout_.total_qubits);
  state.apply(init_);
  for (int k = 0; k < iterations; ++k) state.apply(it->second);
  const std::vector<int> nodes = layout_.node_qubits();
  return state.measure(nodes, rng);
}

ExponentialSearchOutcome exponential_search(SearchDriver& driver, int tau, double lambda,
                                            double cap, Rng& rng, int max_attempts) {
  ExponentialSearchOutcome outcome;
  double m = 1.0;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Attempt record;
    record.m_before = m;
    record.j = draw_j(m, rng);
    record.measured = driver.run_attempt(record.j, tau, rng);
    record.weight = std::popcount(record.measured);
    record.valid = driver.pattern_valid(record.measured);
    record.accepted = driver.marks(record.measured, tau);
    outcome.attempts.push_back(record);
    if (record.accepted) {
      outcome.found = record.measured;
      return outcome;
    }
    m = std::min(lambda * m, cap);
  }
  return outcome;
}

GasOutcome solve_cslp(const net::Network& network, const GasConfig& config, uint64_t seed) {
  SearchDriver driver(network, config.mode);
  const int n = driver.n();
  validate_config(config, n);

  Rng rng(seed);
  GasOutcome outcome;
  outcome.n = n;
  outcome.seed = seed;
  outcome.budget = budget_limit(config.budget, n);
  outcome.initial_tau = draw_initial_tau(config, n, rng);

  int tau = outcome.initial_tau;
  double m = 1.0;
  double run_time = 0.0;
  const double cap = driver.m_cap();

  while (run_time <= outcome.budget) {
    Attempt record;
    record.m_before = m;
    record.j = draw_j(m, rng);
    run_time += n + record.j;
    record.measured = driver.run_attempt(record.j, tau, rng);
    record.weight = std::popcount(record.measured);
    record.valid = driver.pattern_valid(record.measured);
    record.accepted = record.valid && record.weight < tau;
    record.run_time_after = run_time;
    if (record.accepted) {
      tau = record.weight;
      m = 1.0;
      outcome.best = net::StationCombination(record.measured, n);
    } else {
      m = std::min(config.lambda * m, cap);
    }
    outcome.attempts.push_back(record);
  }

  outcome.final_tau = tau;
  outcome.run_time = run_time;
  return outcome;
}

GasOutcome adaptive_search(const net::Network& network, const GasConfig& config,
                           uint64_t seed) {
  SearchDriver driver(network, config.mode);
  const int n = driver.n();
  validate_config(config, n);

  Rng rng(seed);
  GasOutcome outcome;
  outcome.n = n;
  outcome.seed = seed;
  outcome.budget = budget_limit(config.budget, n);
  outcome.initial_tau = draw_initial_tau(config, n, rng);

  int tau = outcome.initial_tau;
  double run_time = 0.0;
  const double cap = driver.m_cap();

  // Each round restarts the exponential search (m back to 1) with an oracle
  // marking costs strictly below the current threshold.
  while (run_time <= outcome.budget) {
    double m = 1.0;
    std::optional<uint64_t> found;
    while (run_time <= outcome.budget) {
      Attempt record;
      record.m_before = m;
      record.j = draw_j(m, rng);
      run_time += n + record.j;
      record.measured = driver.run_attempt(record.j, tau, rng);
      record.weight = std::popcount(record.measured);
      record.valid = driver.pattern_valid(record.measured);
      record.accepted = driver.marks(record.measured, tau);
      record.run_time_after = run_time;
      outcome.attempts.push_back(record);
      if (record.accepted) {
        found = record.measured;
        break;
      }
      m = std::min(config.lambda * m, cap);
    }
    if (!found) break;
    const int weight = std::popcount(*found);
    if (driver.pattern_valid(*found) && weight < tau) {
      tau = weight;
      outcome.best = net::StationCombination(*found, n);
    }
  }

  outcome.final_tau = tau;
  outcome.run_time = run_time;
  return outcome;
}

RepeatOutcome repeat_solve(const net::Network& network, const GasConfig& config) {
  if (config.repetitions < 1) {
    throw Error(ErrorCode::invalid_argument, "repetitions must be at least 1");
  }
  RepeatOutcome result;
  result.master_seed = config.seed;
  for (int r = 0; r < config.repetitions; ++r) {
    const uint64_t child = Rng::child_seed(config.seed, static_cast<uint64_t>(r));
    GasOutcome outcome = solve_cslp(network, config, child);
    if (outcome.best &&
        (!result.best || outcome.best->weight() < result.best->weight())) {
      result.best = outcome.best;
    }
    result.repetitions.push_back(std::move(outcome));
  }
  return result;
}

}  // namespace cslpq::gas
