#pragma once
// Verification driver shared by the CLI, the regression corpus runner, and
// the acceptance suite: pair enumeration, the tau grid policy, three-way
// comparison records, the factor / operator-calculus suites, and
// deterministic NDJSON + CSV report serialization.

#include <json.hpp>
#include <string>
#include <vector>

#include "relchar/phase.hpp"

namespace rc {

using njson = nlohmann::ordered_json;

// ---- reports -------------------------------------------------------------

struct Report {
  std::vector<njson> records;
  long long n_pass = 0, n_fail = 0;
  void add(njson rec);
  std::string ndjson() const;
  std::string csv() const;
};

// ---- pair selection ------------------------------------------------------

struct PairCase {
  std::string kind;  // "ps" | "sc-unram" | "sc-ram"
  PairData pd;
  std::string id;    // deterministic, printable
};

// character (de)serialization: {"m": 2, "exps": [e_i], "wpi": "n/d"} with
// phase at gens[i] = e_i / gen_order[i]
MulChar char_from_json(const njson& j, const Ring& R);
njson char_to_json(const MulChar& c);
std::string char_id(const MulChar& c);

// all generic pairs of the given kind; rep_cmax bounds c(chi0) (PS) resp.
// the w-digit conductor of xi (SC); chi runs over ramified characters with
// conductor <= chi_cmax.  For SC kinds, pair_cw_max > 0 additionally bounds
// the w-digit conductor of xi * (chi o Nm)^{-1}.
std::vector<PairCase> enumerate_pairs(int p, const std::string& kind, int rep_cmax,
                                      int chi_cmax, int pair_cw_max = 0);

// ---- main-identity verification ------------------------------------------

struct VerifyOptions {
  int N_lo = -1;   // < 0: start at ceil(c(chi)/2)
  int N_hi = 3;
  bool tau_zero_only = false;
  double tol = 1e-8;
};

// full tau grid for one pair: grid records plus one pair-summary record
void run_main_pair(const PairCase& pc, const VerifyOptions& opt, Report& rep);

// multi-pair driver; threads > 1 runs pairs concurrently, gathered in order
void run_main(const std::vector<PairCase>& pairs, const VerifyOptions& opt, Report& rep,
              int threads = 1);

// ---- constituent suites --------------------------------------------------

void run_factor_suite(int p, Report& rep);
void run_opcalc_suite(int p, Report& rep);

// ---- config dispatch -----------------------------------------------------

// run one job config ("cmd": verify-main | verify-factors | verify-opcalc |
// sweep); throws std::invalid_argument naming the violated hypothesis
Report run_config(const njson& config, int threads = 1);

// ---- corpus --------------------------------------------------------------

// run the config of one corpus case and return the NDJSON report body
std::string corpus_render(const njson& config);

int env_threads();  // RELCHAR_THREADS, default 1

}  // namespace rc
