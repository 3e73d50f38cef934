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

#include "cslpq/cslpq.h"

#include <cstring>
#include <new>
#include <string>

#include "error.hpp"
#include "gas.hpp"
#include "net.hpp"
#include "report.hpp"

namespace {

thread_local std::string t_last_error;

cslpq_status status_of(cslpq::ErrorCode code) {
  switch (code) {
    case cslpq::ErrorCode::io:
      return CSLPQ_ERROR_IO;
    case cslpq::ErrorCode::parse:
      return CSLPQ_ERROR_PARSE;
    case cslpq::ErrorCode::invalid_argument:
      return CSLPQ_ERROR_INVALID_ARGUMENT;
    case cslpq::ErrorCode::unsupported:
      return CSLPQ_ERROR_UNSUPPORTED;
    case cslpq::ErrorCode::internal:
      return CSLPQ_ERROR_INTERNAL;
  }
  return CSLPQ_ERROR_INTERNAL;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

template <typename Fn>
cslpq_status guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return CSLPQ_OK;
  } catch (const cslpq::Error& e) {
    t_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return CSLPQ_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return CSLPQ_ERROR_INTERNAL;
  }
}

const cslpq::net::Network& unwrap(const cslpq_network* network) {
  if (network == nullptr) {
    throw cslpq::Error(cslpq::ErrorCode::invalid_argument, "network handle is null");
  }
  return *reinterpret_cast<const cslpq::net::Network*>(network);
}

cslpq::gas::GasConfig to_config(const cslpq_solve_options* options) {
  cslpq::gas::GasConfig config;
  if (options == nullptr) return config;
  config.seed = options->seed;
  config.repetitions = options->repetitions;
  if (options->initial_tau >= 0) config.initial_tau = options->initial_tau;
  config.lambda = options->lambda_growth;
  config.mode = options->oracle_mode == CSLPQ_ORACLE_CIRCUIT
                    ? cslpq::gas::OracleMode::circuit
                    : cslpq::gas::OracleMode::functional;
  config.budget = options->budget_formula == CSLPQ_BUDGET_ALG2
                      ? cslpq::gas::BudgetFormula::alg2
                      : cslpq::gas::BudgetFormula::alg3;
  return config;
}

}  // namespace

extern "C" {

void cslpq_solve_options_defaults(cslpq_solve_options* options) {
  if (options == nullptr) return;
  options->seed = 0;
  options->repetitions = 7;
  options->initial_tau = -1;
  options->lambda_growth = 8.0 / 7.0;
  options->oracle_mode = CSLPQ_ORACLE_FUNCTIONAL;
  options->budget_formula = CSLPQ_BUDGET_ALG3;
}

cslpq_status cslpq_network_load_file(const char* path, cslpq_network** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr) {
      throw cslpq::Error(cslpq::ErrorCode::invalid_argument, "null argument");
    }
    auto* network = new cslpq::net::Network(cslpq::net::Network::load_file(path));
    *out = reinterpret_cast<cslpq_network*>(network);
  });
}

cslpq_status cslpq_network_parse(const char* text, cslpq_network** out) {
  return guarded([&] {
    if (text == nullptr || out == nullptr) {
      throw cslpq::Error(cslpq::ErrorCode::invalid_argument, "null argument");
    }
    auto* network = new cslpq::net::Network(cslpq::net::Network::parse(text));
    *out = reinterpret_cast<cslpq_network*>(network);
  });
}

void cslpq_network_free(cslpq_network* network) {
  delete reinterpret_cast<cslpq::net::Network*>(network);
}

cslpq_status cslpq_network_summary_json(const cslpq_network* network, char** json_out) {
  return guarded([&] {
    if (json_out == nullptr) {
      throw cslpq::Error(cslpq::ErrorCode::invalid_argument, "null output argument");
    }
    *json_out = copy_string(cslpq::report::network_summary(unwrap(network)).dump(2));
  });
}

cslpq_status cslpq_brute_force_json(const cslpq_network* network, char** json_out) {
  return guarded([&] {
    if (json_out == nullptr) {
      throw cslpq::Error(cslpq::ErrorCode::invalid_argument, "null output argument");
    }
    *json_out = copy_string(cslpq::report::brute_force_report(unwrap(network)).dump(2));
  });
}

cslpq_status cslpq_solve_json(const cslpq_network* network,
                              const cslpq_solve_options* options, char** json_out) {
  return guarded([&] {
    if (json_out == nullptr) {
      throw cslpq::Error(cslpq::ErrorCode::invalid_argument, "null output argument");
    }
    const cslpq::net::Network& net = unwrap(network);
    const cslpq::gas::GasConfig config = to_config(options);
    const cslpq::gas::RepeatOutcome outcome = cslpq::gas::repeat_solve(net, config);
    *json_out = copy_string(cslpq::report::solve_report(net, config, outcome).dump(2));
  });
}

cslpq_status cslpq_oracle_equivalence_json(const cslpq_network* network, int32_t tau,
                                           char** json_out) {
  return guarded([&] {
    if (json_out == nullptr) {
      throw cslpq::Error(cslpq::ErrorCode::invalid_argument, "null output argument");
    }
    *json_out =
        copy_string(cslpq::report::equivalence_report(unwrap(network), tau).dump(2));
  });
}

cslpq_status cslpq_check_json(const cslpq_network* network, char** json_out) {
  return guarded([&] {
    if (json_out == nullptr) {
      throw cslpq::Error(cslpq::ErrorCode::invalid_argument, "null output argument");
    }
    *json_out = copy_string(cslpq::report::check_report(unwrap(network)).dump(2));
  });
}

cslpq_status cslpq_layout_json(const cslpq_network* network, char** json_out) {
  return guarded([&] {
    if (json_out == nullptr) {
      throw cslpq::Error(cslpq::ErrorCode::invalid_argument, "null output argument");
    }
    *json_out = copy_string(cslpq::report::layout_report(unwrap(network)).dump(2));
  });
}

cslpq_status cslpq_dump_circuit(const cslpq_network* network, int32_t tau,
                                char** text_out) {
  return guarded([&] {
    if (text_out == nullptr) {
      throw cslpq::Error(cslpq::ErrorCode::invalid_argument, "null output argument");
    }
    const cslpq::net::Network& net = unwrap(network);
    const int threshold = tau >= 0 ? tau : net.node_count() + 1;
    *text_out = copy_string(cslpq::report::dump_iteration_circuit(net, threshold));
  });
}

void cslpq_string_free(char* text) { delete[] text; }

const char* cslpq_last_error(void) { return t_last_error.c_str(); }

const char* cslpq_version(void) { return "1.0.0"; }

}  // extern "C"
