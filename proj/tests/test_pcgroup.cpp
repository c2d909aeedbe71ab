#include <doctest.h>

#include <set>

#include "holobrace/fixtures.hpp"

using namespace holobrace;

namespace {

// Structural model of M27 = <a, b : a^9, b^3, b a b^-1 = a^4>: pairs
// (i, j) standing for a^i b^j with multiplication collected through
// b^j a b^-j = a^{4^j}. Independent of the pc collection code.
struct M27Model {
  static std::pair<uint32_t, uint32_t> mul(std::pair<uint32_t, uint32_t> x,
                                           std::pair<uint32_t, uint32_t> y) {
    static const uint32_t pow4[3] = {1, 4, 7};  // 4^j mod 9
    return {(x.first + y.first * pow4[x.second]) % 9, (x.second + y.second) % 3};
  }
};

// pc normal form c^t a^x b^y = a^{3t + x 4^y}... collected into the model:
// c = a^3 is central, so c^t a^x b^y = a^{3t+x} b^y.
std::pair<uint32_t, uint32_t> to_model(const PcPresentation& pres, const PcElement& e) {
  (void)pres;
  return {(3 * e.t + e.a[0]) % 9, e.a[1]};
}

// family 2 at (3,2): <a, b : a^9, b^9, b a b^-1 = a^4>, beta_1 = b,
// beta_2 = a, c = a^3; model pairs (i, j) = a^i b^j with i, j mod 9.
struct F2Model {
  static std::pair<uint32_t, uint32_t> mul(std::pair<uint32_t, uint32_t> x,
                                           std::pair<uint32_t, uint32_t> y) {
    static const uint32_t pow4[9] = {1, 4, 7, 1, 4, 7, 1, 4, 7};  // 4^j mod 9
    return {(x.first + y.first * pow4[x.second % 3]) % 9, (x.second + y.second) % 9};
  }
};

std::pair<uint32_t, uint32_t> f2_to_model(const PcElement& e) {
  static const uint32_t pow4[3] = {1, 4, 7};
  // c^t b^{x1} a^{x2} = a^{3t + x2 4^{x1}} b^{x1}
  return {(3 * e.t + e.a[1] * pow4[e.a[0] % 3]) % 9, e.a[0]};
}

PcElement pc_el(uint32_t t, std::initializer_list<uint32_t> a) {
  PcElement x;
  x.t = t;
  int i = 0;
  for (uint32_t v : a) x.a[i++] = v;
  return x;
}

}  // namespace

TEST_CASE("M27 collection matches the structural model on all pairs") {
  PcPresentation m = m27();
  REQUIRE(m.order() == 27);
  for (uint32_t i = 0; i < 27; ++i)
    for (uint32_t j = 0; j < 27; ++j) {
      PcElement x = pc_unpack(m, i), y = pc_unpack(m, j);
      auto lhs = to_model(m, pc_mul(m, x, y));
      auto rhs = M27Model::mul(to_model(m, x), to_model(m, y));
      REQUIRE(lhs == rhs);
    }
  // the map is a bijection
  std::set<std::pair<uint32_t, uint32_t>> img;
  for (uint32_t i = 0; i < 27; ++i) img.insert(to_model(m, pc_unpack(m, i)));
  CHECK(img.size() == 27);
}

TEST_CASE("M27: b a collects to c a b") {
  PcPresentation m = m27();
  PcElement a = pc_gen(m, 0), b = pc_gen(m, 1);
  // b a b^-1 = a^4 = c a, so b a = c a b
  CHECK(pc_mul(m, b, a) == pc_el(1, {1, 1}));
  // and a b a^-1 = c^2 b
  PcElement aba = pc_mul(m, pc_mul(m, a, b), pc_inv(m, a));
  CHECK(aba == pc_el(2, {0, 1}));
}

TEST_CASE("family 2 at (3,2) matches its structural model") {
  PcPresentation f = family_presentation(2, 3, 2);
  REQUIRE(f.order() == 81);
  for (uint32_t i = 0; i < 81; ++i)
    for (uint32_t j = 0; j < 81; ++j) {
      PcElement x = pc_unpack(f, i), y = pc_unpack(f, j);
      REQUIRE(f2_to_model(pc_mul(f, x, y)) ==
              F2Model::mul(f2_to_model(x), f2_to_model(y)));
    }
}

TEST_CASE("pc identity and inverses") {
  for (const PcPresentation& pres :
       {m27(), family_presentation(2, 3, 2), family_presentation(3, 3, 2),
        family_presentation(4, 3, 2), family_presentation(5, 3, 2),
        family_presentation(1, 5, 3)}) {
    PcElement e = pc_identity(pres);
    for (uint32_t i = 0; i < pres.order(); ++i) {
      PcElement x = pc_unpack(pres, i);
      CHECK(pc_mul(pres, x, e) == x);
      CHECK(pc_mul(pres, e, x) == x);
      CHECK(pc_mul(pres, x, pc_inv(pres, x)) == e);
      CHECK(pc_mul(pres, pc_inv(pres, x), x) == e);
    }
  }
}

TEST_CASE("pc collection is associative") {
  // exhaustive at order <= 81
  for (const PcPresentation& pres : {m27(), family_presentation(5, 3, 2)}) {
    uint32_t n = static_cast<uint32_t>(pres.order());
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j) {
        PcElement xy = pc_mul(pres, pc_unpack(pres, i), pc_unpack(pres, j));
        for (uint32_t k = 0; k < n; ++k) {
          PcElement l = pc_mul(pres, xy, pc_unpack(pres, k));
          PcElement r = pc_mul(pres, pc_unpack(pres, i),
                               pc_mul(pres, pc_unpack(pres, j), pc_unpack(pres, k)));
          REQUIRE(l == r);
        }
      }
  }
  // sampled for the order-625 fixture
  PcPresentation big = family_presentation(2, 5, 2);
  REQUIRE(big.order() == 625);
  SplitMix64 rng(11);
  for (int it = 0; it < 100000; ++it) {
    PcElement x = pc_unpack(big, static_cast<uint32_t>(rng.below(625)));
    PcElement y = pc_unpack(big, static_cast<uint32_t>(rng.below(625)));
    PcElement z = pc_unpack(big, static_cast<uint32_t>(rng.below(625)));
    REQUIRE(pc_mul(big, pc_mul(big, x, y), z) == pc_mul(big, x, pc_mul(big, y, z)));
  }
}

TEST_CASE("pth power of a product of generators splits") {
  for (const PcPresentation& pres :
       {m27(), family_presentation(2, 3, 2), family_presentation(3, 3, 2),
        family_presentation(4, 3, 2), family_presentation(5, 3, 2),
        family_presentation(1, 5, 3)}) {
    for (int i = 0; i < pres.s(); ++i)
      for (int j = 0; j < pres.s(); ++j) {
        PcElement bi = pc_gen(pres, i), bj = pc_gen(pres, j);
        PcElement lhs = pc_pow(pres, pc_mul(pres, bi, bj), pres.p());
        PcElement rhs = pc_mul(pres, pc_pow(pres, bi, pres.p()), pc_pow(pres, bj, pres.p()));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("element orders in fixtures") {
  PcPresentation m = m27();
  CHECK(pc_element_order(m, pc_identity(m)) == 1);
  CHECK(pc_element_order(m, pc_gen(m, 0)) == 9);
  CHECK(pc_element_order(m, pc_gen(m, 1)) == 3);
  // family 3 at (3,2): the a-lift has order 9
  PcPresentation f3 = family_presentation(3, 3, 2);
  CHECK(pc_element_order(f3, pc_gen(f3, 0)) == 9);
}

TEST_CASE("family presentations satisfy their defining relations") {
  auto conj = [](const PcPresentation& p, const PcElement& x, const PcElement& y) {
    return pc_mul(p, pc_mul(p, x, y), pc_inv(p, x));
  };
  {
    // family 1: b a b^-1 = a^{1+p^{n-2}}
    for (auto [p, n] : std::vector<std::pair<uint32_t, uint32_t>>{{3, 3}, {5, 3}, {3, 4}}) {
      PcPresentation f = family_presentation(1, p, n);
      PcElement a = pc_gen(f, 0), b = pc_gen(f, 1);
      CHECK(conj(f, b, a) == pc_pow(f, a, 1 + ipow(p, n - 2)));
      CHECK(pc_pow(f, a, ipow(p, n - 2)) == pc_c(f));
      CHECK(pc_element_order(f, a) == ipow(p, n - 1));
      CHECK(pc_element_order(f, b) == p);
    }
  }
  {
    // family 2: b a b^-1 = a^{1+p^{n-1}}, both generators of order p^n
    for (auto [p, n] : std::vector<std::pair<uint32_t, uint32_t>>{{3, 2}, {5, 2}}) {
      PcPresentation f = family_presentation(2, p, n);
      PcElement b = pc_gen(f, 0), a = pc_gen(f, 1);
      CHECK(conj(f, b, a) == pc_pow(f, a, 1 + ipow(p, n - 1)));
      CHECK(pc_element_order(f, a) == ipow(p, n));
      CHECK(pc_element_order(f, b) == ipow(p, n));
    }
  }
  {
    // family 3: [b,a] = 1, [c0,a] = 1, c0 b c0^-1 = b a^{p^{n-1}}
    PcPresentation f = family_presentation(3, 3, 2);
    PcElement a = pc_gen(f, 0), b = pc_gen(f, 1), c0 = pc_gen(f, 2);
    CHECK(conj(f, b, a) == a);
    CHECK(conj(f, c0, a) == a);
    CHECK(conj(f, c0, b) == pc_mul(f, b, pc_pow(f, a, 3)));
  }
  {
    // family 4: c0 a c0^-1 = a^{1+p^{n-1}}, rest commutes
    PcPresentation f = family_presentation(4, 3, 2);
    PcElement a = pc_gen(f, 0), b = pc_gen(f, 1), c0 = pc_gen(f, 2);
    CHECK(conj(f, b, a) == a);
    CHECK(conj(f, c0, a) == pc_pow(f, a, 4));
    CHECK(conj(f, c0, b) == b);
  }
  {
    // family 5: c0 a c0^-1 = a b with b = c central
    PcPresentation f = family_presentation(5, 3, 2);
    PcElement a = pc_gen(f, 0), c0 = pc_gen(f, 1);
    CHECK(conj(f, c0, a) == pc_mul(f, a, pc_c(f)));
    CHECK(pc_element_order(f, a) == 9);
  }
}

TEST_CASE("order statistics") {
  PcPresentation m = m27();
  auto stats = pc_order_statistics(m);
  CHECK(stats == std::map<uint64_t, uint64_t>{{1, 1}, {3, 8}, {9, 18}});
  // matches C9 x C3
  AbelianType t(3, {2, 1});
  std::map<uint64_t, uint64_t> ab;
  for (auto [o, c] : t.order_statistics())
    if (c) ab[o] = c;
  CHECK(stats == ab);
}

TEST_CASE("derived subgroups") {
  DerivedSubgroup d = pc_derived_subgroup(m27());
  CHECK(d.order == 3);
  REQUIRE(!d.gens.empty());
  CHECK(d.gens[0].t != 0);

  PcPresentation f5 = family_presentation(5, 3, 2);
  CHECK(pc_derived_subgroup(f5).order == 3);
}

TEST_CASE("degenerate abelian pc presentations are rejected") {
  CHECK_THROWS_AS(PcPresentation(3, {9, 3}, {0, 0}, {{0, 0}, {0, 0}}), InvalidInput);
  CHECK_THROWS_AS(PcPresentation(3, {3, 3}, {0, 0}, {{0, 1}, {1, 0}}), InvalidInput);
  CHECK_THROWS_AS(PcPresentation(3, {3, 3}, {0, 0}, {{1, 1}, {2, 0}}), InvalidInput);
}

TEST_CASE("automorphism count of M27 against the relation-pair oracle") {
  PcPresentation m = m27();
  PcGroupView view(m);
  // independent count: pairs (A, B) with B^3 = e, B A B^-1 = A^4 and
  // <A, B> = M27
  uint64_t oracle = 0;
  for (uint32_t ai = 0; ai < 27; ++ai)
    for (uint32_t bi = 0; bi < 27; ++bi) {
      if (element_order(view, ai) != 9) continue;
      if (view.mul(bi, view.mul(bi, bi)) != view.id()) continue;
      uint32_t lhs = view.mul(view.mul(bi, ai), view.inv(bi));
      uint32_t a4 = view.mul(view.mul(ai, ai), view.mul(ai, ai));
      if (lhs != a4) continue;
      if (closure(view, {ai, bi}).size() != 27) continue;
      ++oracle;
    }
  CHECK(oracle == 54);
  CHECK(pc_aut_count(m) == oracle);
}

TEST_CASE("iso_check on the fixture set") {
  PcPresentation m = m27();
  PcGroupView mv(m);
  AbelianGroupView av(AbelianType(3, {2, 1}));
  CHECK(!iso_check(mv, av));  // nonabelian vs abelian
  auto self = iso_check(mv, mv);
  REQUIRE(self.has_value());

  // reflexive and symmetric across the order-81 fixtures
  PcGroupView f3(family_presentation(3, 3, 2));
  PcGroupView f4(family_presentation(4, 3, 2));
  PcGroupView f5(family_presentation(5, 3, 2));
  CHECK(iso_check(f3, f3));
  CHECK(iso_check(f4, f4));
  CHECK(iso_check(f5, f5));
  CHECK(iso_check(f3, f4).has_value() == iso_check(f4, f3).has_value());
  CHECK(iso_check(f3, f5).has_value() == iso_check(f5, f3).has_value());
  CHECK(iso_check(f4, f5).has_value() == iso_check(f5, f4).has_value());
}

TEST_CASE("the order-p^4 negative fixture") {
  RemarkGroupView g(5);
  REQUIRE(g.order() == 625);
  // defining relations
  uint32_t a = g.pack(1, 0, 0), b = g.pack(0, 1, 0), c = g.pack(0, 0, 1);
  auto conj = [&](uint32_t x, uint32_t y) { return g.mul(g.mul(x, y), g.inv(x)); };
  CHECK(conj(b, a) == g.pack(6, 0, 0));  // a^{1+p}
  CHECK(conj(c, a) == g.mul(a, b));
  CHECK(conj(c, b) == b);
  CHECK(element_order(g, a) == 25);
  CHECK(element_order(g, b) == 5);
  CHECK(element_order(g, c) == 5);

  // group axioms, sampled; identity/inverse exhaustive
  SplitMix64 rng(23);
  for (int it = 0; it < 100000; ++it) {
    uint32_t x = static_cast<uint32_t>(rng.below(625));
    uint32_t y = static_cast<uint32_t>(rng.below(625));
    uint32_t z = static_cast<uint32_t>(rng.below(625));
    REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
  }
  for (uint32_t x = 0; x < 625; ++x) {
    CHECK(g.mul(x, g.id()) == x);
    CHECK(g.mul(x, g.inv(x)) == g.id());
  }

  // the paper-facing facts: 500 elements of order 25, derived subgroup of
  // order 25 (so the abelian-target construction must reject it)
  auto stats = order_statistics(g);
  CHECK(stats[25] == 500);
  CHECK(derived_subgroup_order(g) == 25);
  CHECK(center_order(g) == 5);
}
