#pragma once

#include <map>

#include "abelian.hpp"
#include "group_view.hpp"

namespace holobrace {

// Power-commutator presentation for a nonabelian p-group of class 2 whose
// commutator subgroup <c> is central of order p:
//   generators  beta_1..beta_s and c
//   gen_orders  p^{r_i} = order of the image of beta_i in N/[N,N]
//   power_tails beta_i^{p^{r_i}} = c^{t_i}
//   comm        beta_i beta_j beta_i^{-1} = c^{k_ij} beta_j
// Normal form c^t beta_1^{a_1} ... beta_s^{a_s}; group order p^{1+sum r_i}.
class PcPresentation {
 public:
  PcPresentation(uint32_t p, std::vector<uint32_t> gen_orders,
                 std::vector<uint32_t> power_tails,
                 std::vector<std::vector<uint32_t>> comm,
                 std::string label = "pc");

  uint32_t p() const { return p_; }
  int s() const { return static_cast<int>(gen_orders_.size()); }
  uint64_t order() const { return order_; }
  uint32_t gen_order(int i) const { return gen_orders_[i]; }
  uint32_t power_tail(int i) const { return tails_[i]; }
  uint32_t comm(int i, int j) const { return comm_[i][j]; }
  const std::string& label() const { return label_; }
  const std::vector<uint32_t>& gen_orders() const { return gen_orders_; }
  const std::vector<uint32_t>& power_tails() const { return tails_; }
  const std::vector<std::vector<uint32_t>>& comm_table() const { return comm_; }

 private:
  uint32_t p_;
  std::vector<uint32_t> gen_orders_;
  std::vector<uint32_t> tails_;
  std::vector<std::vector<uint32_t>> comm_;
  uint64_t order_;
  std::string label_;
};

struct PcElement {
  uint32_t t = 0;                        // exponent of c, mod p
  std::array<uint32_t, kMaxRank> a{};    // beta exponents, a[i] mod p^{r_i}
  friend bool operator==(const PcElement&, const PcElement&) = default;
};

PcElement pc_identity(const PcPresentation& pres);
PcElement pc_gen(const PcPresentation& pres, int i);  // beta_i
PcElement pc_c(const PcPresentation& pres);
bool pc_valid(const PcPresentation& pres, const PcElement& x);
// Collection is a single pass: moving beta_i^{a_i} past beta_j^{b_j}
// contributes c^{a_i b_j k_ij}, and per-coordinate carries contribute the
// power tails.
PcElement pc_mul(const PcPresentation& pres, const PcElement& x, const PcElement& y);
PcElement pc_inv(const PcPresentation& pres, const PcElement& x);
PcElement pc_pow(const PcPresentation& pres, const PcElement& x, uint64_t k);
uint64_t pc_element_order(const PcPresentation& pres, const PcElement& x);
uint32_t pc_pack(const PcPresentation& pres, const PcElement& x);
PcElement pc_unpack(const PcPresentation& pres, uint32_t idx);

std::map<uint64_t, uint64_t> pc_order_statistics(const PcPresentation& pres);

struct DerivedSubgroup {
  std::vector<PcElement> gens;
  uint64_t order = 0;
};
// For a valid presentation this is <c> of order p; computed honestly from
// commutators rather than assumed.
DerivedSubgroup pc_derived_subgroup(const PcPresentation& pres);

class PcGroupView : public GroupView {
 public:
  explicit PcGroupView(PcPresentation pres) : pres_(std::move(pres)) {}
  uint32_t order() const override { return static_cast<uint32_t>(pres_.order()); }
  uint32_t id() const override { return pc_pack(pres_, pc_identity(pres_)); }
  uint32_t mul(uint32_t a, uint32_t b) const override {
    return pc_pack(pres_, pc_mul(pres_, pc_unpack(pres_, a), pc_unpack(pres_, b)));
  }
  uint32_t inv(uint32_t a) const override {
    return pc_pack(pres_, pc_inv(pres_, pc_unpack(pres_, a)));
  }
  std::string name() const override { return pres_.label(); }
  const PcPresentation& pres() const { return pres_; }

 private:
  PcPresentation pres_;
};

// Brute-force |Aut(N)| via backtracking over generator images; images of
// beta_i range only over elements of matching order.
uint64_t pc_aut_count(const PcPresentation& pres);

}  // namespace holobrace
