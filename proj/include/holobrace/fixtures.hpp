#pragma once

#include "pcgroup.hpp"

namespace holobrace {

// Catalog of named nonabelian test groups, keyed by (family, p, n).
//
//   1: C_{p^{n-1}} x| C_p, modular relation b a b^-1 = a^{1+p^{n-2}}, n >= 3
//   2: <a,b : a^{p^n}, b^{p^n}, b a b^-1 = a^{1+p^{n-1}}>, order p^{2n}, n >= 2
//   3: <a,b,c : a^{p^n}, b^p, c^p, [b,a]=1, [c,a]=1, c b c^-1 = b a^{p^{n-1}}>, n >= 2
//   4: <a,b,c : a^{p^n}, b^p, c^p, [b,a]=1, c a c^-1 = a^{1+p^{n-1}}, [c,b]=1>, n >= 2
//   5: <a,b,c : a^{p^n}, b^p, c^p, [b,a]=1, c a c^-1 = a b, [c,b]=1>, n >= 2
//
// Families 1-5 have commutator subgroup of order p and are stored as
// class-2 power-commutator presentations. The separate "order p^4" group
// below has commutator subgroup of order p^2 (class 3) and serves as the
// negative fixture for the abelian-target construction.
PcPresentation family_presentation(int family, uint32_t p, uint32_t n);

// M_27, the modular group of order 27: family 1 at (p, n) = (3, 3).
PcPresentation m27();

// <a,b,c : a^{p^2}, b^p, c^p, b a b^-1 = a^{1+p}, c a c^-1 = a b, [c,b]=1>.
// Nilpotency class 3; [N,N] = <a^p, b> has order p^2. Element a^x b^y c^z
// is stored as ((x p + y) p + z); the multiplication law is collected by
// hand from the relations and verified in the unit tests.
class RemarkGroupView : public GroupView {
 public:
  explicit RemarkGroupView(uint32_t p);
  uint32_t order() const override { return p2_ * p_ * p_; }
  uint32_t id() const override { return 0; }
  uint32_t mul(uint32_t a, uint32_t b) const override;
  uint32_t inv(uint32_t a) const override;
  std::string name() const override { return "remark-p4"; }
  uint32_t p() const { return p_; }
  uint32_t pack(uint32_t x, uint32_t y, uint32_t z) const { return (x * p_ + y) * p_ + z; }

 private:
  uint32_t p_, p2_;
};

// Group handle used by CLI / search targets: abelian type, a class-2 pc
// presentation, or the order-p^4 remark group.
struct GroupHandle {
  enum class Kind { Abelian, Pc, Remark } kind;
  std::optional<AbelianType> abelian;
  std::optional<PcPresentation> pc;
  uint32_t remark_p = 0;
  std::string label;

  uint64_t order() const;
  std::unique_ptr<GroupView> view() const;  // not available for large abelian
  static GroupHandle of(AbelianType t);
  static GroupHandle of(PcPresentation p);
  static GroupHandle remark(uint32_t p);
};

class AbelianGroupView : public GroupView {
 public:
  explicit AbelianGroupView(AbelianType t) : t_(std::move(t)) {}
  uint32_t order() const override { return static_cast<uint32_t>(t_.order()); }
  uint32_t id() const override { return 0; }
  uint32_t mul(uint32_t a, uint32_t b) const override {
    return t_.pack(t_.add(t_.unpack(a), t_.unpack(b)));
  }
  uint32_t inv(uint32_t a) const override { return t_.pack(t_.neg(t_.unpack(a))); }
  std::string name() const override { return t_.describe(); }
  const AbelianType& type() const { return t_; }

 private:
  AbelianType t_;
};

}  // namespace holobrace
