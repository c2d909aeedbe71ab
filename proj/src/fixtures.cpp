#include "holobrace/fixtures.hpp"

#include <sstream>

namespace holobrace {

PcPresentation family_presentation(int family, uint32_t p, uint32_t n) {
  std::ostringstream label;
  label << "family" << family << "(p=" << p << ",n=" << n << ")";
  auto P = [&](uint32_t e) { return static_cast<uint32_t>(ipow(p, e)); };
  switch (family) {
    case 1: {
      // beta_1 = a (lift order p^{n-1}), beta_2 = b, c = a^{p^{n-2}}
      if (n < 3) throw InvalidInput("family 1 needs n >= 3");
      return PcPresentation(p, {P(n - 2), p}, {1, 0},
                            {{0, p - 1}, {1, 0}}, label.str());
    }
    case 2: {
      // beta_1 = b (order p^n), beta_2 = a (lift order p^n), c = a^{p^{n-1}}
      if (n < 2) throw InvalidInput("family 2 needs n >= 2");
      return PcPresentation(p, {P(n), P(n - 1)}, {0, 1},
                            {{0, 1}, {p - 1, 0}}, label.str());
    }
    case 3: {
      // beta_1 = a, beta_2 = b, beta_3 = c0; c = a^{p^{n-1}}; c0 b c0^-1 = c b
      if (n < 2) throw InvalidInput("family 3 needs n >= 2");
      return PcPresentation(p, {P(n - 1), p, p}, {1, 0, 0},
                            {{0, 0, 0}, {0, 0, p - 1}, {0, 1, 0}}, label.str());
    }
    case 4: {
      // beta_1 = a, beta_2 = b, beta_3 = c0; c = a^{p^{n-1}}; c0 a c0^-1 = c a
      if (n < 2) throw InvalidInput("family 4 needs n >= 2");
      return PcPresentation(p, {P(n - 1), p, p}, {1, 0, 0},
                            {{0, 0, p - 1}, {0, 0, 0}, {1, 0, 0}}, label.str());
    }
    case 5: {
      // beta_1 = a, beta_2 = c0; c = b; c0 a c0^-1 = a b = c a
      if (n < 2) throw InvalidInput("family 5 needs n >= 2");
      return PcPresentation(p, {P(n), p}, {0, 0},
                            {{0, p - 1}, {1, 0}}, label.str());
    }
    default:
      throw InvalidInput("unknown family id " + std::to_string(family));
  }
}

PcPresentation m27() { return family_presentation(1, 3, 3); }

RemarkGroupView::RemarkGroupView(uint32_t p) : p_(p), p2_(p * p) {
  if (!is_odd_prime(p)) throw InvalidInput("p must be an odd prime");
  if (order() > 100000) throw InvalidInput("remark group order exceeds supported range");
}

uint32_t RemarkGroupView::mul(uint32_t lhs, uint32_t rhs) const {
  uint32_t z2 = rhs % p_, y2 = (rhs / p_) % p_, x2 = rhs / (p_ * p_);
  uint32_t z1 = lhs % p_, y1 = (lhs / p_) % p_, x1 = lhs / (p_ * p_);
  // c^z a c^-z = a b^z and [b^z, a] = a^{pz} is central, so
  //   c^{z1} a^{x2} c^{-z1} = a^{x2 + p z1 x2(x2-1)/2} b^{z1 x2}
  // then b^{y1} a^W b^{-y1} = a^{W(1+p y1)}.
  uint64_t tri = x2 ? uint64_t(x2) * (x2 - 1) / 2 % p2_ : 0;
  uint64_t w = (x2 + uint64_t(p_) * z1 * tri) % p2_;
  uint64_t x = (x1 + w * (1 + uint64_t(p_) * y1)) % p2_;
  uint32_t y = (y1 + z1 * x2 + y2) % p_;
  uint32_t z = (z1 + z2) % p_;
  return pack(static_cast<uint32_t>(x), y, z);
}

uint32_t RemarkGroupView::inv(uint32_t a) const {
  uint64_t k = uint64_t(order()) - 1;  // a^{|G|-1}
  uint32_t r = 0, base = a;
  while (k) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

uint64_t GroupHandle::order() const {
  switch (kind) {
    case Kind::Abelian:
      return abelian->order();
    case Kind::Pc:
      return pc->order();
    case Kind::Remark:
      return ipow(remark_p, 4);
  }
  return 0;
}

std::unique_ptr<GroupView> GroupHandle::view() const {
  switch (kind) {
    case Kind::Abelian:
      return std::make_unique<AbelianGroupView>(*abelian);
    case Kind::Pc:
      return std::make_unique<PcGroupView>(*pc);
    case Kind::Remark:
      return std::make_unique<RemarkGroupView>(remark_p);
  }
  throw InvalidInput("bad group handle");
}

GroupHandle GroupHandle::of(AbelianType t) {
  GroupHandle h{Kind::Abelian, std::move(t), std::nullopt, 0, ""};
  h.label = h.abelian->describe();
  return h;
}

GroupHandle GroupHandle::of(PcPresentation p) {
  GroupHandle h{Kind::Pc, std::nullopt, std::move(p), 0, ""};
  h.label = h.pc->label();
  return h;
}

GroupHandle GroupHandle::remark(uint32_t p) {
  GroupHandle h{Kind::Remark, std::nullopt, std::nullopt, p, "remark-p4"};
  return h;
}

}  // namespace holobrace
