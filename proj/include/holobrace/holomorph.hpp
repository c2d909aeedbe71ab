#pragma once

#include <unordered_map>
#include <unordered_set>

#include "abelian.hpp"
#include "group_view.hpp"

namespace holobrace {

// Element (a, phi) of Hol(N) = N x| Aut(N) with the product
// (x,phi)(y,psi) = (x phi(y), phi psi).
struct HolElement {
  Element pt;
  Mat aut;
  friend bool operator==(const HolElement&, const HolElement&) = default;
};

inline HolElement hol_identity(const AbelianType& t) {
  return HolElement{t.zero(), t.mat_identity()};
}

inline HolElement hol_mul(const AbelianType& t, const HolElement& a, const HolElement& b) {
  return HolElement{t.add(a.pt, t.apply(a.aut, b.pt)), t.compose(a.aut, b.aut)};
}

inline HolElement hol_inv(const AbelianType& t, const HolElement& h) {
  Mat inv = t.inverse(h.aut);
  return HolElement{t.apply(inv, t.neg(h.pt)), inv};
}

HolElement hol_pow(const AbelianType& t, const HolElement& h, uint64_t k);
// ((Id + phi + ... + phi^{k-1})(a), phi^k); must agree with hol_pow.
HolElement hol_pow_closed_form(const AbelianType& t, const HolElement& h, uint64_t k);

inline Element hol_act(const AbelianType& t, const HolElement& h, const Element& y) {
  return t.add(h.pt, t.apply(h.aut, y));
}

// Packed key (aut code, point index); unique per element of Hol(N).
inline uint64_t hol_key(const AbelianType& t, const HolElement& h) {
  return t.mat_code(h.aut) * t.order() + t.pack(h.pt);
}

struct HolSubgroup {
  AbelianType ambient;
  std::vector<HolElement> gens;
  std::vector<HolElement> elems;        // enumerated, in closure BFS order
  std::unordered_set<uint64_t> member;  // hol_key set
  uint64_t order = 0;

  bool contains(const HolElement& h) const {
    return member.count(hol_key(ambient, h)) > 0;
  }
  // canonical identity of the element set, independent of generator choice
  uint64_t canonical_hash() const;
};

// Breadth-first closure under right multiplication by the generators
// (closure from the identity in a finite group needs no explicit inverses).
// Throws BudgetExceeded when the closure grows past cap.
HolSubgroup subgroup_closure(const AbelianType& t, std::vector<HolElement> gens,
                             uint64_t cap);

struct ActionClass {
  bool transitive = false;
  bool regular = false;
  std::vector<uint32_t> orbit_of_identity;  // packed points, sorted
};

// h . e_N = point(h), so the orbit of the identity is the set of point
// components and regularity is exactly point-injectivity at full order.
ActionClass classify_action(const HolSubgroup& sub);

// One Sylow p-subgroup: greedy closure over p-elements that normalize the
// current stage (such an element always exists while the stage is proper).
HolSubgroup sylow_p_subgroup(const HolSubgroup& sub);

// Lemma "G transitive iff Syl_p(G) transitive", used as the cheap route.
bool transitive_via_sylow(const HolSubgroup& sub);

HolSubgroup stabilizer_of_identity(const HolSubgroup& sub);

// p-power order test without computing the exact order.
bool is_p_element(const AbelianType& t, const HolElement& h, uint32_t max_k = 12);
// exact order of a p-element, as p^k
uint64_t hol_p_element_order(const AbelianType& t, const HolElement& h);
uint64_t hol_element_order(const AbelianType& t, const HolElement& h);

struct NormalizerOptions {
  int threads = 1;
  uint64_t scan_budget = 2000000000ull;  // |Hol(N)| elements
  bool conjugate_all_elements = false;   // debug: conjugate all, not just gens
  uint64_t sample_cap = 8;               // how many normalizing elements to keep
  bool progress = false;
};

struct NormalizerResult {
  uint64_t order = 0;
  uint64_t hol_order = 0;
  std::vector<HolElement> sample;
};

// Exact |Nor_{Hol(N)}(sub)| by scanning all of Hol(N). Conjugating the
// generators suffices: conjugation by a fixed h is an injective
// homomorphism, and a finite subgroup closed under it contains the image
// iff it contains the images of the generators.
NormalizerResult normalizer(const HolSubgroup& sub, const NormalizerOptions& opt = {});

// |Hol(N)| = |N| * |Aut(N)|
uint64_t hol_order(const AbelianType& t);

class HolSubgroupView : public GroupView {
 public:
  explicit HolSubgroupView(const HolSubgroup& sub);
  uint32_t order() const override { return static_cast<uint32_t>(sub_.order); }
  uint32_t id() const override { return id_; }
  uint32_t mul(uint32_t a, uint32_t b) const override;
  uint32_t inv(uint32_t a) const override;
  std::string name() const override { return "hol-subgroup"; }
  const HolElement& element(uint32_t i) const { return sub_.elems[i]; }

 private:
  const HolSubgroup& sub_;
  std::unordered_map<uint64_t, uint32_t> index_;
  uint32_t id_;
};

}  // namespace holobrace
