#include "holobrace/construct.hpp"

#include <algorithm>
#include <numeric>

namespace holobrace {

ConstructionPlan derive_abelian_target(const PcPresentation& src) {
  DerivedSubgroup der = pc_derived_subgroup(src);
  if (der.order != src.p()) throw ConstructionInapplicable(der.order);

  uint32_t p = src.p();
  int s = src.s();
  // order of the canonical lift beta_i: the tail decides whether it gains
  // a factor p over the quotient order (independent of the lift choice,
  // since (c^j beta_i)^{p^{r_i}} = c^{t_i})
  std::vector<uint32_t> lift_exp(s);
  int i0 = -1;
  for (int i = 0; i < s; ++i) {
    uint32_t r = 0;
    for (uint32_t o = src.gen_order(i); o > 1; o /= p) ++r;
    lift_exp[i] = r + (src.power_tail(i) != 0 ? 1 : 0);
    if (src.power_tail(i) != 0 && i0 < 0) i0 = i;
  }

  std::vector<uint32_t> exps(lift_exp);
  bool split = i0 >= 0;
  if (!split) exps.push_back(1);  // the extra direct factor <d>

  // canonical type sorts non-increasing; track where each generator lands
  int total = static_cast<int>(exps.size());
  std::vector<int> perm(total);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return exps[a] > exps[b]; });

  ConstructionPlan plan{src,
                        split ? ConstructionPlan::Case::Split
                              : ConstructionPlan::Case::ExtraD,
                        AbelianType(p, exps),
                        i0,
                        std::vector<int>(s, -1),
                        -1,
                        Element{}};
  std::vector<int> pos(total);
  for (int k = 0; k < total; ++k) pos[perm[k]] = k;
  for (int i = 0; i < s; ++i) plan.alpha_pos[i] = pos[i];
  if (split) {
    plan.d_pos = pos[i0];
    plan.d.c[plan.d_pos] = plan.target.modulus(plan.d_pos) / p;
  } else {
    plan.d_pos = pos[s];
    plan.d.c[plan.d_pos] = 1;
  }

  if (plan.target.order() != src.order())
    throw PropertyViolation("abelian target has the wrong order");
  std::map<uint64_t, uint64_t> a_stats;
  for (auto [o, c] : plan.target.order_statistics())
    if (c) a_stats[o] = c;
  if (a_stats != pc_order_statistics(src))
    throw PropertyViolation("abelian target has different order statistics");
  return plan;
}

ConstructionPlan derive_abelian_target(const GroupHandle& src) {
  if (src.kind == GroupHandle::Kind::Pc) return derive_abelian_target(*src.pc);
  if (src.kind == GroupHandle::Kind::Remark) {
    RemarkGroupView view(src.remark_p);
    throw ConstructionInapplicable(derived_subgroup_order(view));
  }
  throw InvalidInput("abelian target construction needs a nonabelian source");
}

PhiFamily build_phi(const ConstructionPlan& plan) {
  const AbelianType& A = plan.target;
  const PcPresentation& src = plan.source;
  uint32_t p = src.p();
  uint32_t inv2 = 1;
  while (inv2 * 2 % p != 1) ++inv2;

  PhiFamily fam;
  for (int i = 0; i < src.s(); ++i) {
    Mat phi = A.mat_zero();
    for (int col = 0; col < A.rank(); ++col) phi.at(col, col) = 1;
    for (int j = 0; j < src.s(); ++j) {
      uint32_t w = src.comm(i, j) * inv2 % p;
      // column alpha_pos[j] picks up d^w
      for (int row = 0; row < A.rank(); ++row) {
        uint64_t v = phi.at(row, plan.alpha_pos[j]) +
                     uint64_t(w) * plan.d.c[row] % A.modulus(row);
        phi.at(row, plan.alpha_pos[j]) = static_cast<uint32_t>(v % A.modulus(row));
      }
    }
    if (A.endo_validate(phi) || !A.is_invertible(phi))
      throw PropertyViolation("phi_i is not an automorphism");
    fam.phis.push_back(phi);
  }

  // verification: d fixed, alpha_j^p fixed, phi_i^p = Id, pairwise commuting
  for (int i = 0; i < src.s(); ++i) {
    const Mat& phi = fam.phis[i];
    if (!(A.apply(phi, plan.d) == plan.d)) throw PropertyViolation("phi does not fix d");
    for (int j = 0; j < src.s(); ++j) {
      Element ap = A.smul(p, A.basis(plan.alpha_pos[j]));
      if (!(A.apply(phi, ap) == ap))
        throw PropertyViolation("phi moves a p-th power of a generator");
    }
    if (!(A.mat_pow(phi, p) == A.mat_identity()))
      throw PropertyViolation("phi_i^p is not the identity");
    for (int j = 0; j < src.s(); ++j)
      if (!(A.compose(phi, fam.phis[j]) == A.compose(fam.phis[j], phi)))
        throw PropertyViolation("phi family does not commute");
  }
  return fam;
}

HolSubgroup build_regular_nprime(const ConstructionPlan& plan, const PhiFamily& phis) {
  const AbelianType& A = plan.target;
  const PcPresentation& src = plan.source;
  std::vector<HolElement> gens;
  for (int i = 0; i < src.s(); ++i)
    gens.push_back(HolElement{A.basis(plan.alpha_pos[i]), phis.phis[i]});
  HolElement d_elem{plan.d, A.mat_identity()};
  gens.push_back(d_elem);

  HolSubgroup nprime = subgroup_closure(A, gens, src.order());
  if (nprime.order != src.order())
    throw PropertyViolation("N' closure has order " + std::to_string(nprime.order));
  if (!classify_action(nprime).regular) throw PropertyViolation("N' is not regular");

  // conjugation law and centrality of d
  for (int i = 0; i < src.s(); ++i) {
    const HolElement& gi = nprime.gens[i];
    if (!(hol_mul(A, d_elem, gi) == hol_mul(A, gi, d_elem)))
      throw PropertyViolation("(d, Id) is not central in N'");
    for (int j = 0; j < src.s(); ++j) {
      HolElement lhs =
          hol_mul(A, hol_mul(A, gi, nprime.gens[j]), hol_inv(A, gi));
      HolElement rhs{A.add(A.smul(src.comm(i, j), plan.d), A.basis(plan.alpha_pos[j])),
                     phis.phis[j]};
      if (!(lhs == rhs))
        throw PropertyViolation("conjugation law fails at pair (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
    }
  }
  return nprime;
}

NonabReport verify_nonab_theorem(const PcPresentation& src, const NonabOptions& opt) {
  NonabReport rep;
  rep.source_label = src.label();

  ConstructionPlan plan = derive_abelian_target(src);
  rep.target_desc = plan.target.describe();
  rep.case_name = plan.case_name();
  rep.order_stats_match = true;  // derive_abelian_target verified it

  PhiFamily phis = build_phi(plan);
  HolSubgroup nprime = build_regular_nprime(plan, phis);
  rep.regular = classify_action(nprime).regular;
  rep.d_central = true;      // build_regular_nprime verified
  rep.conjugation_law = true;

  {
    HolSubgroupView view(nprime);
    PcGroupView nview(src);
    rep.isomorphic_to_n = iso_check(view, nview).has_value();
  }

  // every (x, Id) normalizes N'
  rep.ambient_normalizes = true;
  for (uint32_t xi = 0; xi < plan.target.order() && rep.ambient_normalizes; ++xi) {
    HolElement hx{plan.target.unpack(xi), plan.target.mat_identity()};
    HolElement hx_inv = hol_inv(plan.target, hx);
    for (const auto& g : nprime.gens)
      if (!nprime.contains(hol_mul(plan.target, hol_mul(plan.target, hx, g), hx_inv))) {
        rep.ambient_normalizes = false;
        break;
      }
  }

  rep.aut_n_order = pc_aut_count(src);
  rep.hol_nprime_order = src.order() * rep.aut_n_order;

  NormalizerOptions nopt;
  nopt.threads = opt.threads;
  nopt.scan_budget = opt.scan_budget;
  nopt.progress = opt.progress;
  rep.normalizer_order = normalizer(nprime, nopt).order;
  rep.normalizer_equality = rep.normalizer_order == rep.hol_nprime_order;
  rep.theorem_holds = rep.regular && rep.isomorphic_to_n && rep.order_stats_match &&
                      rep.d_central && rep.conjugation_law && rep.ambient_normalizes &&
                      rep.normalizer_equality;
  return rep;
}

RemarkNegativeReport verify_remark_negative(uint32_t p, const NonabOptions& opt) {
  RemarkNegativeReport rep;
  rep.p = p;
  RemarkGroupView view(p);
  rep.derived_order = derived_subgroup_order(view);
  rep.construction_applicable = rep.derived_order == p;

  AbelianType ambient(p, {2, 1, 1});
  GroupHandle target = GroupHandle::remark(p);
  SearchOptions sopt;
  sopt.restrict_sylow = true;
  sopt.threads = opt.threads;
  sopt.progress = opt.progress;
  SearchOutcome found = search_regular(ambient, target, sopt);
  rep.search_nodes = found.cert.nodes;
  rep.witness_found = found.status == SearchStatus::Found;
  if (!rep.witness_found) return rep;

  rep.aut_n_order = automorphism_count(view);
  rep.hol_n_order = view.order() * rep.aut_n_order;

  NormalizerOptions nopt;
  nopt.threads = opt.threads;
  nopt.scan_budget = opt.scan_budget;
  nopt.progress = opt.progress;
  rep.normalizer_order = normalizer(*found.witness, nopt).order;
  rep.orders_differ = rep.normalizer_order != rep.hol_n_order;
  return rep;
}

}  // namespace holobrace
