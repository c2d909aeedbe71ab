#pragma once

#include "gamma.hpp"

namespace holobrace {

// Pool of automorphisms a search is allowed to use for the Aut(N)
// component of candidate generators.
struct AutPool {
  std::vector<Mat> elems;              // ascending mat_code order
  std::unordered_set<uint64_t> codes;
  bool sylow_restricted = false;
  uint64_t aut_order_full = 0;  // |Aut(N)|

  bool contains(const AbelianType& t, const Mat& m) const {
    return codes.count(t.mat_code(m)) > 0;
  }
};

// One Sylow p-subgroup of Aut(N), enumerated directly: validated matrices
// whose equal-exponent diagonal blocks are upper unitriangular mod p. A
// validated matrix is block lower triangular mod p, so these form a
// subgroup, every member is unipotent mod p (hence of p-power order), and
// the count matches the p-part of |Aut(N)| exactly; the order equality is
// asserted against the independent counting pass on every call.
AutPool sylow_p_of_aut(const AbelianType& t, uint64_t p_part_budget = 1000000ull);

// All of Aut(N), for unrestricted searches on small ambients.
AutPool full_aut_pool(const AbelianType& t, uint64_t budget = 1000000ull);

struct SearchCertificate {
  std::string space;
  std::string reduction;
  uint64_t nodes = 0;
  bool restricted = true;
  uint64_t pool_size = 0;
};

enum class SearchStatus { Found, Exhausted, Budget };

struct SearchOutcome {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<HolSubgroup> witness;
  SearchCertificate cert;
};

struct SearchOptions {
  bool restrict_sylow = true;
  uint64_t max_nodes = UINT64_MAX;
  int threads = 1;
  uint64_t seed = 1;  // recorded; the search itself is deterministic
  bool verify_witness = true;
  bool progress = false;
};

// Backtracking over generator images: target generators are assigned
// images in N x pool of equal order; partial closures must stay
// point-injective and match the target's prefix subgroup orders; the
// target's defining relations are checked as soon as their participants
// are assigned. A found witness is verified (regular + iso_check + gamma
// round-trip). Exhaustion with restrict_sylow constitutes non-existence
// up to the Sylow reduction.
SearchOutcome search_regular(const AbelianType& ambient, const GroupHandle& target,
                             const SearchOptions& opt = {});

struct Census {
  std::vector<HolSubgroup> subs;
  uint64_t nodes = 0;
  bool restricted = true;
};

struct CensusOptions {
  bool restrict_sylow = true;
  int threads = 1;
  uint64_t max_nodes = UINT64_MAX;
  bool progress = false;
};

// Every regular subgroup of N x| pool, each exactly once: a regular
// subgroup contains exactly one element over each point, so extending by
// the unique element over the least uncovered point makes the enumeration
// chain per subgroup unique.
Census enumerate_regular(const AbelianType& ambient, const CensusOptions& opt = {});

struct ConjugacyClasses {
  std::vector<std::vector<size_t>> classes;  // indices into the census list
  std::vector<TypeLabel> types;              // multiplicative type per class
};

// Partition under conjugation by (e_N, chi), chi in Aut(N). For a census
// closed under the pool action the partition is computed by generator
// linking; across Sylow orbits representatives are fused by a backtracking
// search for the conjugating automorphism.
ConjugacyClasses classify_conjugacy(const AbelianType& ambient,
                                    const std::vector<HolSubgroup>& subs,
                                    bool restricted, int threads = 1);

// Conjugating automorphism chi with chi R1 chi^-1 = R2, or nullopt.
// Equivalent to a brace isomorphism: chi is an additive automorphism with
// chi(x o1 y) = chi(x) o2 chi(y).
std::optional<Mat> find_aut_conjugator(const AbelianType& t, const GammaFunction& g1,
                                       const GammaFunction& g2);

struct RealizabilityReport {
  std::string target_label;
  std::string ambient_label;
  // "yes", "no", "unknown" (budget ran out)
  std::string realizable;
  std::optional<HolSubgroup> witness;
  SearchCertificate cert;
};

RealizabilityReport realizability_report(const AbelianType& ambient, const GroupHandle& target,
                                         const SearchOptions& opt = {});

// Shared verification: regularity, iso_check against the target (orders
// <= 1000), gamma round-trip, brace extraction. Throws PropertyViolation.
void verify_witness(const HolSubgroup& witness, const GroupHandle& target);

}  // namespace holobrace
