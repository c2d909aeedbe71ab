#pragma once

#include "construct.hpp"

namespace holobrace {

struct LemmaSuiteOptions {
  std::vector<AbelianType> ambients;  // defaults to C9, C3xC3, C27
  int corpus_per_ambient = 100;       // random subgroups per ambient
  uint64_t seed = 1;
  int threads = 1;
};

struct Lemma6Row {
  std::string ambient;
  uint64_t sub_order = 0;
  bool regular = false;
  bool pass = false;
  bool must_pass = false;  // p > n
};

struct LemmaSuiteReport {
  uint64_t corpus_size = 0;
  uint64_t sylow_agreements = 0;  // classify_action vs transitive_via_sylow
  bool sylow_agreement_pass = false;
  std::vector<Lemma6Row> lemma6;
  bool lemma6_pass_where_required = false;
  uint32_t delta_max_index = 0;
  bool delta_bound_ok = false;  // never exceeds n on the regular corpus
  bool power_formula_ok = false;  // binomial p-th power expression
  bool all_pass = false;
};

// Random-subgroup corpus for the Sylow transitivity equivalence, plus the
// regular-subgroup corpora for the order equivalence, the delta nilpotency
// bound and the binomial p-th power formula.
LemmaSuiteReport run_lemma_suite(const LemmaSuiteOptions& opt = {});

// hol_pow(h, p) against ((p Id + C(p,2) d + ... + C(p,n) d^{n-1})(x), phi^p)
// with d = phi - Id; the expression needs d^n = 0, which holds on regular
// p-subgroup gammas.
bool binomial_power_matches(const AbelianType& t, const HolElement& h);

}  // namespace holobrace
