/* Copyright 2026 The cslpq authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the cslpq shared library: charging-station placement on
 * road networks via simulated Grover adaptive search, plus exhaustive
 * baselines and circuit verification.
 *
 * All structured results are returned as JSON strings allocated by the
 * library; release them with cslpq_string_free. Networks are opaque handles
 * released with cslpq_network_free. Functions return CSLPQ_OK on success and
 * leave a human-readable message for cslpq_last_error otherwise.
 */

#ifndef CSLPQ_CSLPQ_H
#define CSLPQ_CSLPQ_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cslpq_status {
  CSLPQ_OK = 0,
  CSLPQ_ERROR_IO = 1,
  CSLPQ_ERROR_PARSE = 2,
  CSLPQ_ERROR_INVALID_ARGUMENT = 3,
  CSLPQ_ERROR_UNSUPPORTED = 4,
  CSLPQ_ERROR_INTERNAL = 5
} cslpq_status;

typedef enum cslpq_oracle_mode {
  CSLPQ_ORACLE_FUNCTIONAL = 0, /* diagonal predicate oracle on the n station qubits */
  CSLPQ_ORACLE_CIRCUIT = 1     /* explicit ancilla circuit on the full layout */
} cslpq_oracle_mode;

typedef enum cslpq_budget_formula {
  CSLPQ_BUDGET_ALG3 = 0, /* 22.5*sqrt(2^n) + 1.4*n   */
  CSLPQ_BUDGET_ALG2 = 1  /* 22.5*sqrt(2^n) + 1.4*n^2 */
} cslpq_budget_formula;

typedef struct cslpq_network cslpq_network;

typedef struct cslpq_solve_options {
  uint64_t seed;
  int32_t repetitions;   /* >= 1; 7 by default */
  int32_t initial_tau;   /* -1 draws uniformly from [1, n+1] per repetition */
  double lambda_growth;  /* > 1; 8/7 by default */
  int32_t oracle_mode;   /* cslpq_oracle_mode */
  int32_t budget_formula; /* cslpq_budget_formula */
} cslpq_solve_options;

/* Fills the documented defaults (seed 0, 7 repetitions, random tau,
 * lambda 8/7, functional oracle, ALG3 budget). */
void cslpq_solve_options_defaults(cslpq_solve_options* options);

cslpq_status cslpq_network_load_file(const char* path, cslpq_network** out);
cslpq_status cslpq_network_parse(const char* text, cslpq_network** out);
void cslpq_network_free(cslpq_network* network);

/* Instance summary: node count, trip count, range, qubit formulas. */
cslpq_status cslpq_network_summary_json(const cslpq_network* network, char** json_out);

/* Exhaustive optimum over all 2^n combinations (n <= 25). */
cslpq_status cslpq_brute_force_json(const cslpq_network* network, char** json_out);

/* Grover adaptive search; repetitions and traces are fully seeded, so equal
 * options produce byte-identical JSON. */
cslpq_status cslpq_solve_json(const cslpq_network* network,
                              const cslpq_solve_options* options, char** json_out);

/* Explicit-circuit vs functional oracle comparison for one threshold, or the
 * whole sweep 0..n+1 when tau is negative. */
cslpq_status cslpq_oracle_equivalence_json(const cslpq_network* network, int32_t tau,
                                           char** json_out);

/* Equivalence sweep plus counter/comparator/diffuser verification suites. */
cslpq_status cslpq_check_json(const cslpq_network* network, char** json_out);

/* Register allocation and the evaluated qubit-count formulas. */
cslpq_status cslpq_layout_json(const cslpq_network* network, char** json_out);

/* Text dump of one full Grover iteration at threshold tau (tau < 0 uses
 * n+1, which marks every valid combination). */
cslpq_status cslpq_dump_circuit(const cslpq_network* network, int32_t tau,
                                char** text_out);

void cslpq_string_free(char* text);

/* Message for the most recent failure on this thread ("" if none). */
const char* cslpq_last_error(void);

const char* cslpq_version(void);

#ifdef __cplusplus
}
#endif

#endif /* CSLPQ_CSLPQ_H */
