#include <doctest.h>

#include <map>

#include "holobrace/abelian.hpp"

using namespace holobrace;

namespace {

Element el(std::initializer_list<uint32_t> v) {
  Element x;
  int i = 0;
  for (uint32_t c : v) x.c[i++] = c;
  return x;
}

Mat mat2(uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
  Mat m;
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

// Independent |Aut| oracle: iterate raw entry tuples (not the candidate
// codes), keep well-defined matrices whose induced map is a bijection.
uint64_t brute_aut_count(const AbelianType& t) {
  int s = t.rank();
  std::vector<uint32_t> entry(s * s, 0);
  uint64_t count = 0;
  while (true) {
    Mat m;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) m.at(i, j) = entry[i * s + j];
    if (!t.endo_validate(m) && t.is_bijective(m)) ++count;
    int k = s * s - 1;
    while (k >= 0) {
      int i = k / s;
      if (++entry[k] == t.modulus(i)) {
        entry[k--] = 0;
      } else {
        break;
      }
    }
    if (k < 0) break;
  }
  return count;
}

std::vector<Mat> all_valid_endos(const AbelianType& t) {
  std::vector<Mat> out;
  uint64_t space = t.aut_code_space();
  for (uint64_t code = 0; code < space; ++code) out.push_back(t.mat_from_code(code));
  return out;
}

std::vector<AbelianType> p3_types_up_to_81() {
  return {AbelianType(3, {1}),       AbelianType(3, {2}),
          AbelianType(3, {1, 1}),    AbelianType(3, {3}),
          AbelianType(3, {2, 1}),    AbelianType(3, {1, 1, 1}),
          AbelianType(3, {4}),       AbelianType(3, {3, 1}),
          AbelianType(3, {2, 2}),    AbelianType(3, {2, 1, 1}),
          AbelianType(3, {1, 1, 1, 1})};
}

}  // namespace

TEST_CASE("abelian addition examples") {
  AbelianType t(3, {1, 1});
  CHECK(t.add(el({1, 2}), el({2, 2})) == el({0, 1}));

  AbelianType u(3, {2, 1});
  CHECK(u.add(el({0, 0}), el({5, 2})) == el({5, 2}));

  AbelianType c125(5, {3});
  CHECK(c125.smul(125, el({1})) == c125.zero());
  CHECK(c125.smul(124, el({1})) == el({124}));
}

TEST_CASE("element orders") {
  AbelianType t(3, {2, 1});
  CHECK(t.element_order(el({1, 0})) == 9);
  CHECK(t.element_order(el({3, 1})) == 3);
  AbelianType u(3, {1, 1, 1, 1});
  CHECK(u.element_order(u.zero()) == 1);
}

TEST_CASE("type is canonicalized and validated") {
  AbelianType t(3, {1, 2});
  CHECK(t.exponents() == std::vector<uint32_t>{2, 1});
  CHECK(t.order() == 27);
  CHECK_THROWS_AS(AbelianType(4, {1}), InvalidInput);
  CHECK_THROWS_AS(AbelianType(2, {1}), InvalidInput);
  CHECK_THROWS_AS(AbelianType(3, {0}), InvalidInput);
}

TEST_CASE("pack round-trips") {
  for (const AbelianType& t : p3_types_up_to_81())
    for (uint32_t i = 0; i < t.order(); ++i) CHECK(t.pack(t.unpack(i)) == i);
}

TEST_CASE("endo validation: order constraints") {
  AbelianType t(3, {2, 1});
  auto bad = t.endo_validate(mat2(1, 1, 0, 1));
  REQUIRE(bad.has_value());
  CHECK(bad->i == 0);
  CHECK(bad->j == 1);
  CHECK(!t.endo_validate(mat2(1, 3, 0, 1)));

  AbelianType u(3, {1, 1});
  CHECK(!u.endo_validate(u.mat_reduce(mat2(7, 5, 2, 8))));
}

TEST_CASE("endo application examples") {
  AbelianType t(3, {1, 1});
  Mat m = mat2(1, 0, 1, 1);
  CHECK(t.apply(m, el({1, 0})) == el({1, 1}));
  CHECK(t.apply(t.mat_identity(), el({2, 1})) == el({2, 1}));

  AbelianType u(3, {2, 1});
  CHECK(u.apply(mat2(1, 3, 0, 1), el({0, 1})) == el({3, 1}));
}

TEST_CASE("endo ring: sum, compose, negate") {
  AbelianType t(3, {1, 1});
  Mat id = t.mat_identity();
  CHECK(t.mat_add(id, t.mat_neg(id)) == t.mat_zero());
  Mat m = mat2(1, 0, 1, 1);
  CHECK(t.compose(id, m) == m);
  // Id + m + m^2 = [[3,0],[3,3]] = 0 mod 3
  CHECK(t.power_sum(m, 3) == t.mat_zero());
}

TEST_CASE("endo respects composition and sum") {
  for (const AbelianType& t : {AbelianType(3, {1, 1}), AbelianType(3, {2, 1})}) {
    auto endos = all_valid_endos(t);
    for (const Mat& a : endos)
      for (const Mat& b : endos) {
        Mat comp = t.compose(a, b);
        Mat sum = t.mat_add(a, b);
        for (uint32_t xi = 0; xi < t.order(); ++xi) {
          Element x = t.unpack(xi);
          CHECK(t.apply(comp, x) == t.apply(a, t.apply(b, x)));
          CHECK(t.apply(sum, x) == t.add(t.apply(a, x), t.apply(b, x)));
        }
      }
  }
  // larger types: all elements, sampled matrix pairs
  for (const AbelianType& t : {AbelianType(3, {1, 1, 1, 1}), AbelianType(3, {2, 1, 1})}) {
    SplitMix64 rng(7);
    uint64_t space = t.aut_code_space();
    for (int it = 0; it < 2000; ++it) {
      Mat a = t.mat_from_code(rng.below(space));
      Mat b = t.mat_from_code(rng.below(space));
      Mat comp = t.compose(a, b);
      Mat sum = t.mat_add(a, b);
      for (uint32_t xi = 0; xi < t.order(); ++xi) {
        Element x = t.unpack(xi);
        CHECK(t.apply(comp, x) == t.apply(a, t.apply(b, x)));
        CHECK(t.apply(sum, x) == t.add(t.apply(a, x), t.apply(b, x)));
      }
    }
  }
}

TEST_CASE("group axioms exhaustively for every p=3 type of order <= 81") {
  for (const AbelianType& t : p3_types_up_to_81()) {
    uint32_t n = static_cast<uint32_t>(t.order());
    for (uint32_t a = 0; a < n; ++a) {
      Element ea = t.unpack(a);
      CHECK(t.add(ea, t.zero()) == ea);
      CHECK(t.add(ea, t.neg(ea)) == t.zero());
      for (uint32_t b = 0; b < n; ++b) {
        Element eb = t.unpack(b);
        CHECK(t.add(ea, eb) == t.add(eb, ea));
        for (uint32_t c = 0; c < n; ++c) {
          Element ec = t.unpack(c);
          CHECK(t.add(t.add(ea, eb), ec) == t.add(ea, t.add(eb, ec)));
        }
      }
    }
  }
}

TEST_CASE("automorphism counts against the brute-force oracle") {
  CHECK(aut_order(AbelianType(3, {1})) == 2);   // phi(3)
  CHECK(aut_order(AbelianType(3, {2})) == 6);   // phi(9)
  CHECK(brute_aut_count(AbelianType(3, {1, 1})) == 48);
  CHECK(aut_order(AbelianType(3, {1, 1})) == 48);
  CHECK(aut_order(AbelianType(3, {2, 1})) == brute_aut_count(AbelianType(3, {2, 1})));
  CHECK(aut_order(AbelianType(3, {2, 2})) == brute_aut_count(AbelianType(3, {2, 2})));
  CHECK(aut_order(AbelianType(5, {2, 1})) == brute_aut_count(AbelianType(5, {2, 1})));
  // |GL_3(F_5)| = (5^3-1)(5^3-5)(5^3-5^2)
  CHECK(aut_order(AbelianType(5, {1, 1, 1})) == 124ull * 120 * 100);
  // |GL_4(F_3)| = (81-1)(81-3)(81-9)(81-27)
  CHECK(aut_order(AbelianType(3, {1, 1, 1, 1})) == 80ull * 78 * 72 * 54);
  // |GL_2(Z/9)| = |GL_2(F_3)| * 3^4
  CHECK(aut_order(AbelianType(3, {2, 2})) == 48ull * 81);
}

TEST_CASE("fast invertibility agrees with bijectivity") {
  for (const AbelianType& t :
       {AbelianType(3, {1, 1}), AbelianType(3, {2, 1}), AbelianType(3, {2, 2}),
        AbelianType(3, {2, 1, 1}), AbelianType(5, {2, 1})}) {
    uint64_t space = t.aut_code_space();
    for (uint64_t code = 0; code < space; ++code) {
      Mat m = t.mat_from_code(code);
      CHECK(t.is_invertible(m) == t.is_bijective(m));
    }
  }
}

TEST_CASE("matrix inverse on every automorphism of small types") {
  for (const AbelianType& t :
       {AbelianType(3, {2, 1}), AbelianType(3, {2, 2}), AbelianType(5, {2, 1})}) {
    t.for_each_aut([&](const Mat& m, uint64_t) {
      Mat inv = t.inverse(m);
      CHECK(t.compose(m, inv) == t.mat_identity());
      CHECK(t.compose(inv, m) == t.mat_identity());
      return true;
    });
  }
}

TEST_CASE("aut_group collects verified generators") {
  for (const AbelianType& t :
       {AbelianType(3, {2}), AbelianType(3, {1, 1}), AbelianType(3, {2, 1})}) {
    AutGroup g = aut_group(t);
    CHECK(g.order == aut_order(t));
    CHECK(!g.gens.empty());
    CHECK(g.elems_listed);
    CHECK(g.elems.size() == g.order);
  }
}

TEST_CASE("omega1 examples and endomorphism invariance") {
  AbelianType t(3, {2, 1});
  Omega1 w = omega1(t);
  CHECK(w.order == 9);
  uint64_t members = 0;
  for (uint32_t i = 0; i < t.order(); ++i) {
    Element x = t.unpack(i);
    bool in = omega1_contains(t, x);
    CHECK(in == t.is_zero(t.smul(3, x)));
    if (in) ++members;
  }
  CHECK(members == 9);

  AbelianType f(5, {1, 1, 1});
  CHECK(omega1(f).order == 125);

  AbelianType c27(3, {3});
  uint64_t m27c = 0;
  for (uint32_t i = 0; i < 27; ++i)
    if (omega1_contains(c27, c27.unpack(i))) ++m27c;
  CHECK(m27c == 3);
  CHECK(omega1_contains(c27, el({9})));
  CHECK(!omega1_contains(c27, el({3})));

  // invariance under every validated endomorphism
  for (const AbelianType& ty : {AbelianType(3, {2, 1}), AbelianType(3, {1, 1, 1})}) {
    for (const Mat& m : all_valid_endos(ty))
      for (uint32_t i = 0; i < ty.order(); ++i) {
        Element x = ty.unpack(i);
        if (omega1_contains(ty, x)) CHECK(omega1_contains(ty, ty.apply(m, x)));
      }
  }
}

TEST_CASE("order statistics closed form vs enumeration") {
  for (const AbelianType& t :
       {AbelianType(3, {2, 1}), AbelianType(3, {1, 1, 1}), AbelianType(5, {2, 1})}) {
    std::map<uint64_t, uint64_t> brute;
    for (uint32_t i = 0; i < t.order(); ++i) ++brute[t.element_order(t.unpack(i))];
    for (auto [o, c] : t.order_statistics()) {
      if (c == 0) continue;
      CHECK(brute[o] == c);
    }
  }
  // the paper-facing instance: C9 x C3 has {1:1, 3:8, 9:18}
  AbelianType t(3, {2, 1});
  auto stats = t.order_statistics();
  CHECK(stats[0] == std::pair<uint64_t, uint64_t>{1, 1});
  CHECK(stats[1] == std::pair<uint64_t, uint64_t>{3, 8});
  CHECK(stats[2] == std::pair<uint64_t, uint64_t>{9, 18});
}
