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

#ifndef CSLPQ_SRC_NET_HPP
#define CSLPQ_SRC_NET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cslpq::net {

/// Assignment of the binary station variables S_1..S_n. S_O and S_D are
/// implicitly 1 wherever a combination is evaluated. Bit i-1 of `bits` is
/// S_i; the canonical string renders S_1 leftmost.
class StationCombination {
 public:
  StationCombination(uint64_t bits, int n) : bits_(bits), n_(n) {}

  uint64_t bits() const { return bits_; }
  int size() const { return n_; }
  bool has(int node) const { return bits_ >> (node - 1) & 1; }
  int weight() const;
  std::vector<int> nodes() const;
  std::string to_string() const;

  friend bool operator==(const StationCombination&, const StationCombination&) = default;

 private:
  uint64_t bits_;
  int n_;
};

/// Nodes reachable from one position of a trip within the range rules.
/// The auxiliary destination D is tracked separately from network nodes.
struct AccessibleSet {
  std::vector<int> nodes;  // path order
  bool contains_dest = false;

  bool empty() const { return nodes.empty() && !contains_dest; }
};

/// One origin->destination route with cumulative mileage and per-position
/// accessible sets (including the auxiliary endpoints O and D; A_D is
/// always empty and therefore not stored).
struct TripPath {
  int origin = 0;
  int dest = 0;
  std::vector<int> sequence;             // node indices from origin to dest
  std::vector<double> cumulative_miles;  // same length as sequence
  AccessibleSet origin_access;           // A_O
  std::vector<AccessibleSet> node_access;  // A_i per sequence position

  double total_miles() const { return cumulative_miles.back(); }
};

/// AND/OR/NOT tree over the station variables. Variable ids: 0 is S_O,
/// 1..n are the network nodes, n+1 is S_D; S_O and S_D evaluate as 1.
class BooleanExpr {
 public:
  enum class Kind { variable, negation, conjunction, disjunction };

  static BooleanExpr variable(int id);
  static BooleanExpr negation(BooleanExpr operand);
  static BooleanExpr conjunction(std::vector<BooleanExpr> operands);
  static BooleanExpr disjunction(std::vector<BooleanExpr> operands);

  Kind kind() const { return kind_; }
  int variable_id() const { return variable_id_; }
  const std::vector<BooleanExpr>& operands() const { return operands_; }

  bool evaluate(const StationCombination& combo) const;

  /// Number of top-level conjuncts (1 if the root is not a conjunction).
  int clause_count() const;

 private:
  BooleanExpr() = default;

  Kind kind_ = Kind::variable;
  int variable_id_ = 0;
  std::vector<BooleanExpr> operands_;
};

struct Edge {
  int a = 0;
  int b = 0;
  double miles = 0.0;
};

struct BruteForceResult {
  std::optional<int> minimum;  // nullopt when no combination is valid
  std::vector<StationCombination> optima;
  uint64_t valid_count = 0;
  std::vector<uint64_t> valid_per_weight;  // index = station count
};

/// Immutable problem instance: road graph, vehicle range, trip set, and the
/// preprocessed routes with their accessible sets. Safe to share across
/// threads once constructed.
class Network {
 public:
  static Network load_file(const std::string& path);
  static Network parse(const std::string& text);

  int node_count() const { return static_cast<int>(node_names_.size()); }
  const std::vector<std::string>& node_names() const { return node_names_; }
  const std::vector<Edge>& edges() const { return edges_; }
  double range_miles() const { return range_miles_; }
  const std::vector<TripPath>& trips() const { return trips_; }

  int node_index(const std::string& name) const;  // 1-based; throws if unknown

  /// Minimum-mileage route; equal-length ties resolved toward the
  /// lexicographically smallest node-index sequence.
  std::vector<int> shortest_route(int origin, int dest) const;

  bool is_valid(const StationCombination& combo) const;

  /// Exhaustive optimum over all 2^n combinations; guarded at n <= 25.
  BruteForceResult brute_force() const;

  /// (S_O ∧ S_D) ∧ ⋀_q ⋀_{i ∈ N_q ∪ {O}} (¬S_i ∨ ⋁_{j ∈ A_i^q} S_j)
  BooleanExpr build_validity_expression() const;

 private:
  Network() = default;

  double edge_miles(int a, int b) const;
  TripPath preprocess_trip(int origin, int dest, const std::vector<int>& explicit_route) const;

  std::vector<std::string> node_names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;  // per 1-based node
  double range_miles_ = 0.0;
  std::vector<TripPath> trips_;
};

/// Accessible sets for an explicit path. Thresholds are inclusive: a node j
/// after position i joins A_i when the gap is <= R (<= R/2 from O), and D
/// joins A_i when the remaining distance to the destination is <= R/2.
void compute_accessible_sets(TripPath& trip, double range_miles);

constexpr int kMaxBruteForceNodes = 25;

}  // namespace cslpq::net

#endif  // CSLPQ_SRC_NET_HPP
