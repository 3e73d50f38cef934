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

#include "net.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "error.hpp"

namespace cslpq::net {

using nlohmann::json;

int StationCombination::weight() const { return std::popcount(bits_); }

std::vector<int> StationCombination::nodes() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i) {
    if (has(i)) out.push_back(i);
  }
  return out;
}

std::string StationCombination::to_string() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 1; i <= n_; ++i) {
    if (has(i)) s[static_cast<std::size_t>(i - 1)] = '1';
  }
  return s;
}

BooleanExpr BooleanExpr::variable(int id) {
  BooleanExpr e;
  e.kind_ = Kind::variable;
  e.variable_id_ = id;
  return e;
}

BooleanExpr BooleanExpr::negation(BooleanExpr operand) {
  BooleanExpr e;
  e.kind_ = Kind::negation;
  e.operands_.push_back(std::move(operand));
  return e;
}

BooleanExpr BooleanExpr::conjunction(std::vector<BooleanExpr> operands) {
  BooleanExpr e;
  e.kind_ = Kind::conjunction;
  e.operands_ = std::move(operands);
  return e;
}

BooleanExpr BooleanExpr::disjunction(std::vector<BooleanExpr> operands) {
  if (operands.empty()) {
    throw Error(ErrorCode::invalid_argument, "disjunction needs operands");
  }
  BooleanExpr e;
  e.kind_ = Kind::disjunction;
  e.operands_ = std::move(operands);
  return e;
}

bool BooleanExpr::evaluate(const StationCombination& combo) const {
  switch (kind_) {
    case Kind::variable:
      // S_O (id 0) and S_D (id n+1) are fixed at 1 by the model.
      if (variable_id_ == 0 || variable_id_ > combo.size()) return true;
      return combo.has(variable_id_);
    case Kind::negation:
      return !operands_[0].evaluate(combo);
    case Kind::conjunction:
      for (const BooleanExpr& op : operands_) {
        if (!op.evaluate(combo)) return false;
      }
      return true;
    case Kind::disjunction:
      for (const BooleanExpr& op : operands_) {
        if (op.evaluate(combo)) return true;
      }
      return false;
  }
  return false;
}

int BooleanExpr::clause_count() const {
  return kind_ == Kind::conjunction ? static_cast<int>(operands_.size()) : 1;
}

void compute_accessible_sets(TripPath& trip, double range_miles) {
  const auto& seq = trip.sequence;
  const auto& dist = trip.cumulative_miles;
  const double half_range = range_miles / 2.0;
  const double total = dist.back();

  trip.origin_access = AccessibleSet{};
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (dist[k] <= half_range) trip.origin_access.nodes.push_back(seq[k]);
  }
  trip.origin_access.contains_dest = total <= half_range;

  trip.node_access.assign(seq.size(), AccessibleSet{});
  for (std::size_t k = 0; k < seq.size(); ++k) {
    AccessibleSet& acc = trip.node_access[k];
    for (std::size_t m = k + 1; m < seq.size(); ++m) {
      if (dist[m] - dist[k] <= range_miles) acc.nodes.push_back(seq[m]);
    }
    acc.contains_dest = total - dist[k] <= half_range;
  }
}

namespace {

[[noreturn]] void parse_fail(const std::string& message) {
  throw Error(ErrorCode::parse, "network document: " + message);
}

int resolve_node(const std::vector<std::string>& names, const std::string& name,
                 const std::string& context) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i) + 1;
  }
  parse_fail("unknown node '" + name + "' in " + context);
}

}  // namespace

Network Network::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open network file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

Network Network::parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object()) parse_fail("top level must be an object");

  Network net;

  if (!doc.contains("range_miles") || !doc["range_miles"].is_number()) {
    parse_fail("missing numeric 'range_miles'");
  }
  net.range_miles_ = doc["range_miles"].get<double>();
  if (net.range_miles_ <= 0.0) parse_fail("'range_miles' must be positive");

  if (!doc.contains("nodes") || !doc["nodes"].is_array() || doc["nodes"].empty()) {
    parse_fail("missing nonempty 'nodes' array");
  }
  for (const auto& item : doc["nodes"]) {
    if (!item.is_string()) parse_fail("'nodes' entries must be strings");
    const std::string name = item.get<std::string>();
    if (std::find(net.node_names_.begin(), net.node_names_.end(), name) !=
        net.node_names_.end()) {
      parse_fail("duplicate node name '" + name + "'");
    }
    net.node_names_.push_back(name);
  }
  const int n = net.node_count();

  net.adjacency_.assign(static_cast<std::size_t>(n) + 1, {});
  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    parse_fail("missing 'edges' array");
  }
  std::set<std::pair<int, int>> seen_edges;
  for (const auto& item : doc["edges"]) {
    if (!item.is_array() || item.size() != 3 || !item[0].is_string() ||
        !item[1].is_string() || !item[2].is_number()) {
      parse_fail("edges must be [nameA, nameB, miles]");
    }
    Edge edge;
    edge.a = resolve_node(net.node_names_, item[0].get<std::string>(), "edges");
    edge.b = resolve_node(net.node_names_, item[1].get<std::string>(), "edges");
    edge.miles = item[2].get<double>();
    if (edge.a == edge.b) parse_fail("self-loop edge on '" + item[0].get<std::string>() + "'");
    if (edge.miles <= 0.0) parse_fail("edge distance must be positive");
    const auto key = std::minmax(edge.a, edge.b);
    if (!seen_edges.insert(key).second) parse_fail("duplicate edge");
    net.adjacency_[static_cast<std::size_t>(edge.a)].emplace_back(edge.b, edge.miles);
    net.adjacency_[static_cast<std::size_t>(edge.b)].emplace_back(edge.a, edge.miles);
    net.edges_.push_back(edge);
  }

  if (!doc.contains("trips")) parse_fail("missing 'trips'");
  struct TripSpec {
    int origin;
    int dest;
    std::vector<int> route;
  };
  std::vector<TripSpec> specs;
  const json& trips = doc["trips"];
  if (trips.is_string()) {
    if (trips.get<std::string>() != "all_pairs") {
      parse_fail("'trips' string form must be \"all_pairs\"");
    }
    std::vector<bool> excluded(static_cast<std::size_t>(n) + 1, false);
    if (doc.contains("exclude_hubs")) {
      if (!doc["exclude_hubs"].is_array()) parse_fail("'exclude_hubs' must be an array");
      for (const auto& hub : doc["exclude_hubs"]) {
        if (!hub.is_string()) parse_fail("'exclude_hubs' entries must be strings");
        excluded[static_cast<std::size_t>(
            resolve_node(net.node_names_, hub.get<std::string>(), "exclude_hubs"))] = true;
      }
    }
    for (int a = 1; a <= n; ++a) {
      if (excluded[static_cast<std::size_t>(a)]) continue;
      for (int b = a + 1; b <= n; ++b) {
        if (excluded[static_cast<std::size_t>(b)]) continue;
        specs.push_back(TripSpec{a, b, {}});
      }
    }
  } else if (trips.is_array()) {
    for (const auto& item : trips) {
      if (!item.is_object() || !item.contains("origin") || !item.contains("dest") ||
          !item["origin"].is_string() || !item["dest"].is_string()) {
        parse_fail("explicit trips must be {origin, dest, route?}");
      }
      TripSpec spec;
      spec.origin = resolve_node(net.node_names_, item["origin"].get<std::string>(), "trips");
      spec.dest = resolve_node(net.node_names_, item["dest"].get<std::string>(), "trips");
      if (spec.origin == spec.dest) parse_fail("trip origin equals destination");
      if (item.contains("route")) {
        if (!item["route"].is_array()) parse_fail("trip 'route' must be an array");
        for (const auto& stop : item["route"]) {
          if (!stop.is_string()) parse_fail("trip 'route' entries must be strings");
          spec.route.push_back(
              resolve_node(net.node_names_, stop.get<std::string>(), "trips"));
        }
      }
      specs.push_back(std::move(spec));
    }
  } else {
    parse_fail("'trips' must be \"all_pairs\" or an array");
  }

  for (const TripSpec& spec : specs) {
    net.trips_.push_back(net.preprocess_trip(spec.origin, spec.dest, spec.route));
  }
  return net;
}

int Network::node_index(const std::string& name) const {
  for (std::size_t i = 0; i < node_names_.size(); ++i) {
    if (node_names_[i] == name) return static_cast<int>(i) + 1;
  }
  throw Error(ErrorCode::invalid_argument, "unknown node '" + name + "'");
}

double Network::edge_miles(int a, int b) const {
  for (const auto& [v, miles] : adjacency_[static_cast<std::size_t>(a)]) {
    if (v == b) return miles;
  }
  throw Error(ErrorCode::parse, "route uses nonexistent edge " + node_names_[a - 1] +
                                    " -- " + node_names_[b - 1]);
}

std::vector<int> Network::shortest_route(int origin, int dest) const {
  if (origin < 1 || origin > node_count() || dest < 1 || dest > node_count()) {
    throw Error(ErrorCode::invalid_argument, "route endpoint out of range");
  }

  // Dijkstra keyed on (distance, node sequence); the sequence component
  // settles ties toward the lexicographically smallest route. Appending a
  // node preserves the order because edge weights are strictly positive.
  struct Entry {
    double dist;
    std::vector<int> path;
    bool operator>(const Entry& other) const {
      if (dist != other.dist) return dist > other.dist;
      return path > other.path;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  std::vector<Entry> best(static_cast<std::size_t>(node_count()) + 1,
                          Entry{-1.0, {}});  // dist < 0 marks "unreached"
  auto better = [](const Entry& cand, const Entry& cur) {
    if (cur.dist < 0.0) return true;
    if (cand.dist != cur.dist) return cand.dist < cur.dist;
    return cand.path < cur.path;
  };

  Entry start{0.0, {origin}};
  best[static_cast<std::size_t>(origin)] = start;
  queue.push(start);
  while (!queue.empty()) {
    Entry cur = queue.top();
    queue.pop();
    const int u = cur.path.back();
    const Entry& settled = best[static_cast<std::size_t>(u)];
    if (cur.dist != settled.dist || cur.path != settled.path) continue;  // stale
    for (const auto& [v, miles] : adjacency_[static_cast<std::size_t>(u)]) {
      Entry cand{cur.dist + miles, cur.path};
      cand.path.push_back(v);
      if (better(cand, best[static_cast<std::size_t>(v)])) {
        best[static_cast<std::size_t>(v)] = cand;
        queue.push(std::move(cand));
      }
    }
  }

  const Entry& found = best[static_cast<std::size_t>(dest)];
  if (found.dist < 0.0) {
    throw Error(ErrorCode::parse, "no route between '" + node_names_[origin - 1] +
                                      "' and '" + node_names_[dest - 1] + "'");
  }
  return found.path;
}

TripPath Network::preprocess_trip(int origin, int dest,
                                  const std::vector<int>& explicit_route) const {
  TripPath trip;
  trip.origin = origin;
  trip.dest = dest;

  if (!explicit_route.empty()) {
    if (explicit_route.front() != origin || explicit_route.back() != dest) {
      parse_fail("explicit route must run from the trip origin to its destination");
    }
    std::set<int> distinct(explicit_route.begin(), explicit_route.end());
    if (distinct.size() != explicit_route.size()) {
      parse_fail("explicit route revisits a node");
    }
    trip.sequence = explicit_route;
  } else {
    trip.sequence = shortest_route(origin, dest);
  }

  trip.cumulative_miles.resize(trip.sequence.size());
  trip.cumulative_miles[0] = 0.0;
  for (std::size_t k = 1; k < trip.sequence.size(); ++k) {
    trip.cumulative_miles[k] =
        trip.cumulative_miles[k - 1] + edge_miles(trip.sequence[k - 1], trip.sequence[k]);
  }

  compute_accessible_sets(trip, range_miles_);
  return trip;
}

bool Network::is_valid(const StationCombination& combo) const {
  if (combo.size() != node_count()) {
    throw Error(ErrorCode::invalid_argument, "combination length does not match network");
  }
  auto covered = [&combo](const AccessibleSet& acc) {
    if (acc.contains_dest) return true;
    for (int j : acc.nodes) {
      if (combo.has(j)) return true;
    }
    return false;
  };
  for (const TripPath& trip : trips_) {
    if (!covered(trip.origin_access)) return false;  // O is always occupied
    for (std::size_t k = 0; k < trip.sequence.size(); ++k) {
      if (!combo.has(trip.sequence[k])) continue;
      if (!covered(trip.node_access[k])) return false;
    }
  }
  return true;
}

BruteForceResult Network::brute_force() const {
  const int n = node_count();
  if (n > kMaxBruteForceNodes) {
    throw Error(ErrorCode::unsupported,
                "instance too large for exhaustive enumeration (n > 25)");
  }
  BruteForceResult result;
  result.valid_per_weight.assign(static_cast<std::size_t>(n) + 1, 0);
  int best = n + 1;
  for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
    StationCombination combo(bits, n);
    if (!is_valid(combo)) continue;
    ++result.valid_count;
    const int w = combo.weight();
    ++result.valid_per_weight[static_cast<std::size_t>(w)];
    if (w < best) {
      best = w;
      result.optima.clear();
      result.optima.push_back(combo);
    } else if (w == best) {
      result.optima.push_back(combo);
    }
  }
  if (!result.optima.empty()) result.minimum = best;
  return result;
}

BooleanExpr Network::build_validity_expression() const {
  const int n = node_count();
  const int dest_id = n + 1;

  auto coverage_clause = [&](int var_id, const AccessibleSet& acc) {
    std::vector<BooleanExpr> literals;
    literals.push_back(BooleanExpr::negation(BooleanExpr::variable(var_id)));
    for (int j : acc.nodes) literals.push_back(BooleanExpr::variable(j));
    if (acc.contains_dest) literals.push_back(BooleanExpr::variable(dest_id));
    return BooleanExpr::disjunction(std::move(literals));
  };

  std::vector<BooleanExpr> clauses;
  clauses.push_back(BooleanExpr::conjunction(
      {BooleanExpr::variable(0), BooleanExpr::variable(dest_id)}));
  for (const TripPath& trip : trips_) {
    clauses.push_back(coverage_clause(0, trip.origin_access));
    for (std::size_t k = 0; k < trip.sequence.size(); ++k) {
      clauses.push_back(coverage_clause(trip.sequence[k], trip.node_access[k]));
    }
  }
  return BooleanExpr::conjunction(std::move(clauses));
}

}  // namespace cslpq::net
