#include "holobrace/gamma.hpp"

#include <algorithm>
#include <sstream>

namespace holobrace {

GammaFunction gamma_from_regular(const HolSubgroup& sub) {
  auto cls = classify_action(sub);
  if (!cls.regular) throw InvalidInput("gamma extraction requires a regular subgroup");
  GammaFunction g{sub.ambient, std::vector<Mat>(sub.ambient.order())};
  for (const auto& h : sub.elems) g.table[sub.ambient.pack(h.pt)] = h.aut;
  return g;
}

std::variant<HolSubgroup, GammaReject> regular_from_gamma(const GammaFunction& g) {
  const AbelianType& t = g.ambient;
  uint32_t n = static_cast<uint32_t>(t.order());
  if (g.table.size() != n) throw InvalidInput("gamma table has the wrong size");
  if (!(g.table[t.pack(t.zero())] == t.mat_identity()))
    return GammaReject{t.pack(t.zero()), t.pack(t.zero())};
  for (uint32_t xi = 0; xi < n; ++xi) {
    Element x = t.unpack(xi);
    const Mat& gx = g.table[xi];
    if (t.endo_validate(gx) || !t.is_invertible(gx)) return GammaReject{xi, xi};
    for (uint32_t yi = 0; yi < n; ++yi) {
      Element y = t.unpack(yi);
      Element prod = t.add(x, t.apply(gx, y));
      if (!(g.table[t.pack(prod)] == t.compose(gx, g.table[yi])))
        return GammaReject{xi, yi};
    }
  }
  HolSubgroup sub{t, {}, {}, {}, n};
  sub.elems.reserve(n);
  for (uint32_t xi = 0; xi < n; ++xi) {
    HolElement h{t.unpack(xi), g.table[xi]};
    sub.elems.push_back(h);
    sub.member.insert(hol_key(t, h));
  }
  // generator sample: a deterministic generating subset of the graph
  std::vector<HolElement> gens;
  HolSubgroup probe = subgroup_closure(t, {}, n);
  for (const auto& h : sub.elems) {
    if (probe.order == n) break;
    if (probe.contains(h)) continue;
    gens.push_back(h);
    probe = subgroup_closure(t, gens, n);
  }
  sub.gens = gens;
  return sub;
}

bool Brace::is_trivial() const {
  Mat id = ambient.mat_identity();
  for (const auto& m : gamma.table)
    if (!(m == id)) return false;
  return true;
}

Brace brace_from_regular(const HolSubgroup& sub, uint64_t exhaustive_cap) {
  Brace b{sub.ambient, gamma_from_regular(sub)};
  const AbelianType& t = b.ambient;
  uint32_t n = static_cast<uint32_t>(t.order());

  // Packed operation tables (materialized up to order 625) keep the triple
  // checks to a handful of loads each.
  bool tabled = n <= 625;
  std::vector<uint32_t> add_tab, circ_tab, neg_tab(n);
  if (tabled) {
    add_tab.resize(static_cast<size_t>(n) * n);
    circ_tab.resize(static_cast<size_t>(n) * n);
    for (uint32_t ai = 0; ai < n; ++ai) {
      Element a = t.unpack(ai);
      neg_tab[ai] = t.pack(t.neg(a));
      for (uint32_t bi = 0; bi < n; ++bi) {
        Element x = t.unpack(bi);
        add_tab[ai * n + bi] = t.pack(t.add(a, x));
        circ_tab[ai * n + bi] = t.pack(b.circ(a, x));
      }
    }
    // circ group: shared identity and two-sided inverses
    for (uint32_t ai = 0; ai < n; ++ai) {
      if (circ_tab[ai] != ai || circ_tab[ai * n] != ai)
        throw PropertyViolation("brace circ identity broken");
      bool has_inv = false;
      for (uint32_t bi = 0; bi < n && !has_inv; ++bi)
        if (circ_tab[ai * n + bi] == 0 && circ_tab[bi * n + ai] == 0) has_inv = true;
      if (!has_inv) throw PropertyViolation("brace circ misses an inverse");
    }
  }

  auto check_triple = [&](uint32_t ai, uint32_t bi, uint32_t ci) {
    if (tabled) {
      if (circ_tab[circ_tab[ai * n + bi] * n + ci] != circ_tab[ai * n + circ_tab[bi * n + ci]])
        throw PropertyViolation("brace multiplicative group not associative");
      uint32_t lhs = circ_tab[ai * n + add_tab[bi * n + ci]];
      uint32_t rhs = add_tab[add_tab[circ_tab[ai * n + bi] * n + neg_tab[ai]] * n +
                             circ_tab[ai * n + ci]];
      if (lhs != rhs) throw PropertyViolation("brace property violated");
      return;
    }
    Element a = t.unpack(ai), x = t.unpack(bi), y = t.unpack(ci);
    if (!(b.circ(b.circ(a, x), y) == b.circ(a, b.circ(x, y))))
      throw PropertyViolation("brace multiplicative group not associative");
    Element l = b.circ(a, t.add(x, y));
    Element r = t.add(t.add(b.circ(a, x), t.neg(a)), b.circ(a, y));
    if (!(l == r)) throw PropertyViolation("brace property violated");
  };

  if (n <= exhaustive_cap) {
    for (uint32_t ai = 0; ai < n; ++ai)
      for (uint32_t bi = 0; bi < n; ++bi)
        for (uint32_t ci = 0; ci < n; ++ci) check_triple(ai, bi, ci);
  } else {
    SplitMix64 rng(0x627261636573ull);
    for (uint64_t it = 0; it < 1000000; ++it)
      check_triple(static_cast<uint32_t>(rng.below(n)), static_cast<uint32_t>(rng.below(n)),
                   static_cast<uint32_t>(rng.below(n)));
  }
  return b;
}

CircGroupView::CircGroupView(const Brace& b) {
  const AbelianType& t = b.ambient;
  n_ = static_cast<uint32_t>(t.order());
  table_.resize(static_cast<size_t>(n_) * n_);
  inv_.assign(n_, UINT32_MAX);
  for (uint32_t ai = 0; ai < n_; ++ai) {
    Element a = t.unpack(ai);
    for (uint32_t bi = 0; bi < n_; ++bi) {
      uint32_t prod = t.pack(b.circ(a, t.unpack(bi)));
      table_[ai * n_ + bi] = prod;
      if (prod == 0) inv_[ai] = bi;
    }
    if (inv_[ai] == UINT32_MAX) throw PropertyViolation("brace circ has no inverse");
  }
}

std::string TypeLabel::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Abelian: {
      os << "abelian [";
      for (size_t i = 0; i < abelian_exponents.size(); ++i)
        os << (i ? "," : "") << abelian_exponents[i];
      os << "]";
      break;
    }
    case Kind::Family:
      os << "family " << family << " (p=" << p << ", n=" << n << ")";
      break;
    case Kind::Fingerprint:
      os << "fingerprint{order=" << order << ", exponent=" << exponent
         << ", center=" << center << ", derived=" << derived << "}";
      break;
  }
  return os.str();
}

namespace {

std::vector<uint32_t> abelian_exponents_from_stats(const std::map<uint64_t, uint64_t>& stats,
                                                   uint32_t p, uint64_t order) {
  // #{x : x^{p^k} = e} = p^{sum min(k, e_i)}; the increments of the base-p
  // logarithm recover #{i : e_i >= k}.
  std::vector<uint32_t> exps;
  uint64_t cum_prev = 1;
  uint64_t log_prev = 0;
  std::vector<uint64_t> count_ge;  // count_ge[k-1] = #{i : e_i >= k}
  uint64_t cum = 1;
  for (uint32_t k = 1; cum < order; ++k) {
    auto it = stats.find(ipow(p, k));
    cum = cum_prev + (it == stats.end() ? 0 : it->second);
    uint64_t lg = 0;
    uint64_t v = cum;
    while (v > 1) {
      v /= p;
      ++lg;
    }
    count_ge.push_back(lg - log_prev);
    log_prev = lg;
    cum_prev = cum;
  }
  for (size_t i = 0; i < count_ge.size(); ++i)
    for (uint64_t j = 0; j < count_ge[i]; ++j) {
      if (exps.size() <= j) exps.push_back(0);
      exps[j] = static_cast<uint32_t>(i + 1);
    }
  std::sort(exps.begin(), exps.end(), std::greater<uint32_t>());
  return exps;
}

}  // namespace

TypeLabel identify_group(const GroupView& g, uint32_t p) {
  TypeLabel lab{};
  auto stats = order_statistics(g);
  lab.stats = stats;
  lab.order = g.order();
  lab.exponent = stats.rbegin()->first;
  if (is_abelian(g)) {
    lab.kind = TypeLabel::Kind::Abelian;
    lab.abelian_exponents = abelian_exponents_from_stats(stats, p, g.order());
    lab.p = p;
    return lab;
  }
  lab.center = center_order(g);
  lab.derived = derived_subgroup_order(g);
  // try the catalog families of matching order
  for (int family = 1; family <= 5; ++family) {
    for (uint32_t n = 2; ipow(p, n) <= lab.order; ++n) {
      try {
        PcPresentation pres = family_presentation(family, p, n);
        if (pres.order() != lab.order) continue;
        PcGroupView cand(pres);
        if (iso_check(g, cand)) {
          lab.kind = TypeLabel::Kind::Family;
          lab.family = family;
          lab.p = p;
          lab.n = n;
          return lab;
        }
      } catch (const InvalidInput&) {
        continue;  // family not defined at this (p, n)
      }
    }
  }
  lab.kind = TypeLabel::Kind::Fingerprint;
  return lab;
}

TypeLabel multiplicative_type(const Brace& b) {
  CircGroupView circ(b);
  return identify_group(circ, b.ambient.p());
}

DeltaProfile delta_profile(const GammaFunction& g) {
  const AbelianType& t = g.ambient;
  DeltaProfile out;
  out.index.resize(g.table.size());
  Mat zero = t.mat_zero();
  // nilpotency index can not exceed rank * e_1 for a nilpotent matrix here;
  // use a generous cap and flag non-nilpotent tables
  uint32_t cap = static_cast<uint32_t>(t.rank()) * t.exponents()[0] + 2;
  for (size_t xi = 0; xi < g.table.size(); ++xi) {
    Mat delta = t.mat_add(g.table[xi], t.mat_neg(t.mat_identity()));
    Mat pow = t.mat_identity();
    uint32_t m = 0;
    bool nil = false;
    for (; m <= cap; ++m) {
      if (pow == zero) {
        nil = true;
        break;
      }
      pow = t.compose(pow, delta);
    }
    if (!nil) {
      out.all_nilpotent = false;
      out.index[xi] = UINT32_MAX;
    } else {
      out.index[xi] = m;
      out.max_index = std::max(out.max_index, m);
    }
  }
  return out;
}

LemmaOrderReport lemma_order_check(const HolSubgroup& sub) {
  const AbelianType& t = sub.ambient;
  LemmaOrderReport rep;
  rep.p = t.p();
  uint32_t n = 0;
  for (uint32_t e : t.exponents()) n += e;
  rep.n = n;
  rep.hypothesis_p_gt_n = rep.p > rep.n;

  uint64_t q = sub.order;
  while (q % t.p() == 0) q /= t.p();
  if (q != 1) throw InvalidInput("lemma order check needs a p-subgroup");
  if (!classify_action(sub).transitive)
    throw InvalidInput("lemma order check needs a transitive subgroup");

  for (const auto& h : sub.elems) {
    HolElement cur = h;
    for (uint32_t k = 0; k <= t.exponents()[0] + 1; ++k) {
      bool point_killed = t.is_zero(t.smul(ipow(t.p(), k), h.pt));
      bool in_stab = t.is_zero(cur.pt);
      ++rep.checked;
      if (point_killed != in_stab) {
        rep.pass = false;
        rep.violations.push_back(LemmaOrderViolation{t.pack(h.pt), k});
        break;
      }
      cur = hol_pow(t, cur, t.p());
    }
  }
  return rep;
}

}  // namespace holobrace
