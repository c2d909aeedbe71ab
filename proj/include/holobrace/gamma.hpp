#pragma once

#include <map>
#include <variant>

#include "fixtures.hpp"
#include "holomorph.hpp"

namespace holobrace {

// Total map N -> Aut(N) whose graph {(x, table[x])} is a regular subgroup
// of Hol(N); indexed by packed element index.
struct GammaFunction {
  AbelianType ambient;
  std::vector<Mat> table;

  const Mat& at(const Element& x) const { return table[ambient.pack(x)]; }
};

// For a regular subgroup the evaluation map h -> h . e_N is bijective and
// h . e_N = point(h), so each x carries exactly one automorphism.
GammaFunction gamma_from_regular(const HolSubgroup& sub);

struct GammaReject {
  uint32_t x, y;  // packed witnesses of the first failing closure pair
};

// Inverse direction: accepts iff gamma(x . gamma(x)(y)) = gamma(x) gamma(y)
// for all pairs, then returns the graph subgroup.
std::variant<HolSubgroup, GammaReject> regular_from_gamma(const GammaFunction& g);

// Two-operation structure on the carrier of N: dot is the ambient addition
// and x o y = x . gamma(x)(y).
struct Brace {
  AbelianType ambient;
  GammaFunction gamma;

  Element circ(const Element& x, const Element& y) const {
    return ambient.add(x, ambient.apply(gamma.at(x), y));
  }
  bool is_trivial() const;  // circ == dot
};

// Extracts the brace and verifies both group axioms and the brace property
// a o (b . c) = (a o b) . a^{-1} . (a o c); exhaustively for order <= 125,
// on 10^6 deterministic samples above. Axiom failure escalates.
Brace brace_from_regular(const HolSubgroup& sub, uint64_t exhaustive_cap = 125);

// Multiplicative group (carrier, circ) as a GroupView.
class CircGroupView : public GroupView {
 public:
  explicit CircGroupView(const Brace& b);
  uint32_t order() const override { return n_; }
  uint32_t id() const override { return 0; }
  uint32_t mul(uint32_t a, uint32_t b) const override { return table_[a * n_ + b]; }
  uint32_t inv(uint32_t a) const override { return inv_[a]; }
  std::string name() const override { return "brace-circ"; }

 private:
  uint32_t n_;
  std::vector<uint32_t> table_;
  std::vector<uint32_t> inv_;
};

struct TypeLabel {
  enum class Kind { Abelian, Family, Fingerprint } kind;
  // Abelian: recovered exponent list
  std::vector<uint32_t> abelian_exponents;
  // Family: catalog key
  int family = 0;
  uint32_t p = 0, n = 0;
  // Fingerprint for groups outside the catalog
  uint64_t order = 0;
  uint64_t exponent = 0;
  uint64_t center = 0;
  uint64_t derived = 0;
  std::map<uint64_t, uint64_t> stats;
  std::string describe() const;
};

// Identifies (carrier, circ) up to isomorphism: abelian types are read off
// the order statistics, nonabelian ones are matched against the catalog
// families of the same order, otherwise a fingerprint is returned.
TypeLabel multiplicative_type(const Brace& b);

// Identify any small group the same way (used for census reporting).
TypeLabel identify_group(const GroupView& g, uint32_t p);

struct DeltaProfile {
  std::vector<uint32_t> index;  // per packed element: least m with delta^m = 0
  uint32_t max_index = 0;
  bool all_nilpotent = true;    // false only for invalid input tables
};

// delta(x) = gamma(x) - Id in End(N); nilpotency index per element.
DeltaProfile delta_profile(const GammaFunction& g);

struct LemmaOrderViolation {
  uint32_t element;  // packed point of the offending (a, phi)
  uint32_t k;
};

struct LemmaOrderReport {
  bool pass = true;
  uint64_t checked = 0;
  uint32_t p = 0, n = 0;
  bool hypothesis_p_gt_n = false;
  std::vector<LemmaOrderViolation> violations;
};

// For every h = (a, phi) in the subgroup and every k: a^{p^k} = e_N iff
// h^{p^k} fixes e_N. Must hold when p > n; merely reported otherwise.
LemmaOrderReport lemma_order_check(const HolSubgroup& sub);

}  // namespace holobrace
