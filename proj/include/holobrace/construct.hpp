#pragma once

#include "realize.hpp"

namespace holobrace {

// Thrown when the source group's commutator subgroup does not have order
// p, so no abelian target can be derived.
struct ConstructionInapplicable : InvalidInput {
  uint64_t derived_order;
  explicit ConstructionInapplicable(uint64_t d)
      : InvalidInput("construction needs |[N,N]| = p, got derived subgroup of order " +
                     std::to_string(d)),
        derived_order(d) {}
};

// Abelian target A for a nonabelian N with |[N,N]| = p, together with the
// bookkeeping to express the alpha generators and d inside A's canonical
// coordinates.
struct ConstructionPlan {
  PcPresentation source;
  enum class Case { Split, ExtraD } kase;
  AbelianType target;
  int i0 = -1;                 // split: least source index whose lift gains a factor p
  std::vector<int> alpha_pos;  // source generator i -> coordinate in target
  int d_pos = -1;              // coordinate carrying d
  Element d;                   // in target coordinates

  std::string case_name() const { return kase == Case::Split ? "split" : "extra_d"; }
};

// Builds A: alpha_i of the same order as the lift beta_i; either some lift
// gained a factor p (then d = alpha_{i0}^{ord/p}) or none did (then a new
// direct factor <d> of order p is appended). Verifies that the order
// statistics of A match those of the source.
ConstructionPlan derive_abelian_target(const PcPresentation& src);

// Dispatch that also accepts the catalog's negative fixture; throws
// ConstructionInapplicable when |[N,N]| != p.
ConstructionPlan derive_abelian_target(const GroupHandle& src);

struct PhiFamily {
  std::vector<Mat> phis;  // one per source generator
};

// phi_i(d) = d, phi_i(alpha_j) = d^{k_ij/2} alpha_j with k/2 taken modulo
// p. Verifies phi_i(alpha_j^p) = alpha_j^p, phi_i^p = Id, pairwise
// commutation, and d fixed; failure escalates.
PhiFamily build_phi(const ConstructionPlan& plan);

// Closure of {(alpha_i, phi_i)} and (d, Id): regular of order |N|, with
// (alpha_i,phi_i)(alpha_j,phi_j)(alpha_i,phi_i)^-1 = d^{k_ij} (alpha_j,phi_j)
// and (d, Id) central. Failure escalates with the violating pair.
HolSubgroup build_regular_nprime(const ConstructionPlan& plan, const PhiFamily& phis);

struct NonabOptions {
  int threads = 1;
  uint64_t scan_budget = 2000000000ull;
  bool progress = false;
};

struct NonabReport {
  std::string source_label;
  std::string target_desc;
  std::string case_name;
  bool regular = false;
  bool isomorphic_to_n = false;
  bool order_stats_match = false;
  bool d_central = false;
  bool conjugation_law = false;
  bool ambient_normalizes = false;  // every (x, Id) normalizes N'
  uint64_t normalizer_order = 0;
  uint64_t aut_n_order = 0;       // |Aut(N)| by brute force
  uint64_t hol_nprime_order = 0;  // |N| * |Aut(N)|
  bool normalizer_equality = false;
  bool theorem_holds = false;
};

// Runs the whole pipeline and the exhaustive normalizer scan.
NonabReport verify_nonab_theorem(const PcPresentation& src, const NonabOptions& opt = {});

struct RemarkNegativeReport {
  uint32_t p = 0;
  uint64_t derived_order = 0;  // p^2: construction inapplicable
  bool construction_applicable = false;
  bool witness_found = false;
  uint64_t search_nodes = 0;
  uint64_t normalizer_order = 0;
  uint64_t aut_n_order = 0;
  uint64_t hol_n_order = 0;  // |N| * |Aut(N)|
  bool orders_differ = false;
};

// The companion negative check: the order-p^4 group with |[N,N]| = p^2 is
// rejected by the construction, yet Hol(C_{p^2} x C_p x C_p) contains a
// regular copy of it whose normalizer order differs from |Hol(N)|.
RemarkNegativeReport verify_remark_negative(uint32_t p, const NonabOptions& opt = {});

}  // namespace holobrace
