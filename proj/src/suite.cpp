#include "holobrace/suite.hpp"

namespace holobrace {

bool binomial_power_matches(const AbelianType& t, const HolElement& h) {
  uint32_t n = 0;
  for (uint32_t e : t.exponents()) n += e;
  Mat delta = t.mat_add(h.aut, t.mat_neg(t.mat_identity()));
  Mat acc = t.mat_zero();
  Mat delta_pow = t.mat_identity();
  for (uint32_t j = 1; j <= n; ++j) {
    // term C(p, j) delta^{j-1}
    acc = t.mat_add(acc, t.mat_smul(binomial(t.p(), j), delta_pow));
    delta_pow = t.compose(delta_pow, delta);
  }
  HolElement closed{t.apply(acc, h.pt), t.mat_pow(h.aut, t.p())};
  return hol_pow(t, h, t.p()) == closed;
}

LemmaSuiteReport run_lemma_suite(const LemmaSuiteOptions& opt) {
  LemmaSuiteReport rep;
  std::vector<AbelianType> ambients = opt.ambients;
  if (ambients.empty()) {
    ambients.push_back(AbelianType(3, {2}));
    ambients.push_back(AbelianType(3, {1, 1}));
    ambients.push_back(AbelianType(3, {3}));
  }

  SplitMix64 rng(opt.seed);
  rep.sylow_agreement_pass = true;
  rep.lemma6_pass_where_required = true;
  rep.delta_bound_ok = true;
  rep.power_formula_ok = true;

  for (const AbelianType& t : ambients) {
    AutPool aut = full_aut_pool(t);
    uint64_t hol = hol_order(t);
    uint32_t n = 0;
    for (uint32_t e : t.exponents()) n += e;

    // random-element subgroups: both transitivity routes must agree
    for (int it = 0; it < opt.corpus_per_ambient; ++it) {
      int gens = 1 + static_cast<int>(rng.below(3));
      std::vector<HolElement> g;
      for (int k = 0; k < gens; ++k)
        g.push_back(HolElement{t.unpack(static_cast<uint32_t>(rng.below(t.order()))),
                               aut.elems[rng.below(aut.elems.size())]});
      HolSubgroup sub = subgroup_closure(t, g, hol);
      bool direct = classify_action(sub).transitive;
      bool via_sylow = transitive_via_sylow(sub);
      ++rep.corpus_size;
      if (direct == via_sylow)
        ++rep.sylow_agreements;
      else
        rep.sylow_agreement_pass = false;
    }

    // the Sylow p-subgroup of Hol(N) itself: transitive p-subgroup
    {
      AutPool syl = sylow_p_of_aut(t);
      std::vector<HolElement> gens;
      for (int i = 0; i < t.rank(); ++i)
        gens.push_back(HolElement{t.basis(i), t.mat_identity()});
      for (const Mat& m : syl.elems) gens.push_back(HolElement{t.zero(), m});
      HolSubgroup sylhol = subgroup_closure(t, gens, t.order() * syl.elems.size());
      auto lr = lemma_order_check(sylhol);
      Lemma6Row row{t.describe(), sylhol.order, false, lr.pass, lr.hypothesis_p_gt_n};
      if (row.must_pass && !row.pass) rep.lemma6_pass_where_required = false;
      rep.lemma6.push_back(row);
    }

    // regular subgroups: order equivalence, delta bound, power formula
    CensusOptions copt;
    copt.restrict_sylow = true;
    copt.threads = opt.threads;
    Census census = enumerate_regular(t, copt);
    for (const auto& sub : census.subs) {
      auto lr = lemma_order_check(sub);
      Lemma6Row row{t.describe(), sub.order, true, lr.pass, lr.hypothesis_p_gt_n};
      if (row.must_pass && !row.pass) rep.lemma6_pass_where_required = false;
      rep.lemma6.push_back(row);

      GammaFunction g = gamma_from_regular(sub);
      DeltaProfile dp = delta_profile(g);
      rep.delta_max_index = std::max(rep.delta_max_index, dp.max_index);
      if (!dp.all_nilpotent || dp.max_index > n) rep.delta_bound_ok = false;

      for (const auto& h : sub.elems)
        if (!binomial_power_matches(t, h)) rep.power_formula_ok = false;
    }
  }

  rep.all_pass = rep.sylow_agreement_pass && rep.lemma6_pass_where_required &&
                 rep.delta_bound_ok && rep.power_formula_ok;
  return rep;
}

}  // namespace holobrace
