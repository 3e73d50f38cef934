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

#ifndef CSLPQ_SRC_REPORT_HPP
#define CSLPQ_SRC_REPORT_HPP

#include <string>

#include <json.hpp>

#include "gas.hpp"
#include "net.hpp"

namespace cslpq::report {

/// n, |Q|, R, and the two qubit-count formulas evaluated for the instance.
nlohmann::json network_summary(const net::Network& network);

nlohmann::json brute_force_report(const net::Network& network);

/// Deterministic serialization of one run (seed, thresholds, attempt trace).
nlohmann::json outcome_json(const gas::GasOutcome& outcome);

/// Outcome of repeat_solve plus the config that produced it. Identical seeds
/// serialize byte-identically; wall-clock timing is deliberately absent.
nlohmann::json solve_report(const net::Network& network, const gas::GasConfig& config,
                            const gas::RepeatOutcome& outcome);

nlohmann::json layout_report(const net::Network& network);

/// Oracle-equivalence rows for one tau (or the whole sweep when tau < 0).
nlohmann::json equivalence_report(const net::Network& network, int tau);

/// Equivalence sweep plus counter, comparator, and diffuser invariant
/// suites; `all_passed` aggregates every check.
nlohmann::json check_report(const net::Network& network);

/// Text of the full Grover-iteration circuit at the given threshold.
std::string dump_iteration_circuit(const net::Network& network, int tau);

}  // namespace cslpq::report

#endif  // CSLPQ_SRC_REPORT_HPP
