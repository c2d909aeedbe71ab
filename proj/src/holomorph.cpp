#include "holobrace/holomorph.hpp"

#include <algorithm>
#include <cstdio>

namespace holobrace {

HolElement hol_pow(const AbelianType& t, const HolElement& h, uint64_t k) {
  HolElement r = hol_identity(t);
  HolElement base = h;
  while (k) {
    if (k & 1) r = hol_mul(t, r, base);
    base = hol_mul(t, base, base);
    k >>= 1;
  }
  return r;
}

HolElement hol_pow_closed_form(const AbelianType& t, const HolElement& h, uint64_t k) {
  return HolElement{t.apply(t.power_sum(h.aut, k), h.pt), t.mat_pow(h.aut, k)};
}

uint64_t HolSubgroup::canonical_hash() const {
  std::vector<uint64_t> keys;
  keys.reserve(elems.size());
  for (const auto& h : elems) keys.push_back(hol_key(ambient, h));
  std::sort(keys.begin(), keys.end());
  uint64_t acc = 0x9e3779b97f4a7c15ull ^ keys.size();
  for (uint64_t k : keys) {
    acc ^= k + 0x9e3779b97f4a7c15ull + (acc << 6) + (acc >> 2);
  }
  return acc;
}

HolSubgroup subgroup_closure(const AbelianType& t, std::vector<HolElement> gens,
                             uint64_t cap) {
  HolSubgroup sub{t, std::move(gens), {}, {}, 0};
  sub.elems.push_back(hol_identity(t));
  sub.member.insert(hol_key(t, sub.elems[0]));
  for (const auto& g : sub.gens) {
    if (t.endo_validate(g.aut) || !t.is_invertible(g.aut))
      throw InvalidInput("subgroup generator has a non-automorphism component");
    if (sub.member.insert(hol_key(t, g)).second) sub.elems.push_back(g);
  }
  for (size_t head = 0; head < sub.elems.size(); ++head) {
    HolElement cur = sub.elems[head];
    for (const auto& g : sub.gens) {
      HolElement nx = hol_mul(t, cur, g);
      if (sub.member.insert(hol_key(t, nx)).second) {
        sub.elems.push_back(nx);
        if (sub.elems.size() > cap)
          throw BudgetExceeded("subgroup closure exceeded cap " + std::to_string(cap));
      }
    }
  }
  sub.order = sub.elems.size();
  return sub;
}

ActionClass classify_action(const HolSubgroup& sub) {
  ActionClass out;
  std::vector<bool> seen(sub.ambient.order(), false);
  bool injective = true;
  for (const auto& h : sub.elems) {
    uint32_t idx = sub.ambient.pack(h.pt);
    if (seen[idx]) injective = false;
    seen[idx] = true;
  }
  for (uint32_t i = 0; i < sub.ambient.order(); ++i)
    if (seen[i]) out.orbit_of_identity.push_back(i);
  out.transitive = out.orbit_of_identity.size() == sub.ambient.order();
  out.regular = out.transitive && injective && sub.order == sub.ambient.order();
  return out;
}

bool is_p_element(const AbelianType& t, const HolElement& h, uint32_t max_k) {
  HolElement cur = h;
  HolElement e = hol_identity(t);
  for (uint32_t k = 0; k <= max_k; ++k) {
    if (cur == e) return true;
    cur = hol_pow(t, cur, t.p());
  }
  return false;
}

uint64_t hol_p_element_order(const AbelianType& t, const HolElement& h) {
  uint64_t ord = 1;
  HolElement cur = h;
  HolElement e = hol_identity(t);
  while (!(cur == e)) {
    cur = hol_pow(t, cur, t.p());
    ord *= t.p();
    if (ord > (1ull << 40)) throw PropertyViolation("not a p-element");
  }
  return ord;
}

uint64_t hol_element_order(const AbelianType& t, const HolElement& h) {
  uint64_t ord = 1;
  HolElement cur = h;
  HolElement e = hol_identity(t);
  while (!(cur == e)) {
    cur = hol_mul(t, cur, h);
    ++ord;
    if (ord > (1ull << 32)) throw PropertyViolation("runaway element order");
  }
  return ord;
}

HolSubgroup sylow_p_subgroup(const HolSubgroup& sub) {
  const AbelianType& t = sub.ambient;
  uint64_t p_part = 1;
  uint64_t rest = sub.order;
  while (rest % t.p() == 0) {
    rest /= t.p();
    p_part *= t.p();
  }
  HolSubgroup stage = subgroup_closure(t, {}, p_part);
  if (p_part == 1) return stage;

  // While the stage is a proper p-subgroup, some p-element of sub outside
  // it normalizes it (inside a Sylow overgroup the normalizer grows), so a
  // full deterministic sweep always makes progress.
  while (stage.order < p_part) {
    bool extended = false;
    for (const auto& h : sub.elems) {
      if (stage.contains(h)) continue;
      if (!is_p_element(t, h)) continue;
      bool normalizes = true;
      HolElement hinv = hol_inv(t, h);
      for (const auto& g : stage.gens) {
        if (!stage.contains(hol_mul(t, hol_mul(t, h, g), hinv))) {
          normalizes = false;
          break;
        }
      }
      if (!normalizes) continue;
      std::vector<HolElement> gens = stage.gens;
      gens.push_back(h);
      try {
        HolSubgroup bigger = subgroup_closure(t, gens, p_part);
        uint64_t q = bigger.order;
        while (q % t.p() == 0) q /= t.p();
        if (q != 1) continue;  // not a p-group, keep scanning
        stage = std::move(bigger);
        extended = true;
        break;
      } catch (const BudgetExceeded&) {
        continue;  // closure left the p-part, keep scanning
      }
    }
    if (!extended)
      throw PropertyViolation("Sylow extension stalled below the p-part");
  }
  return stage;
}

bool transitive_via_sylow(const HolSubgroup& sub) {
  return classify_action(sylow_p_subgroup(sub)).transitive;
}

HolSubgroup stabilizer_of_identity(const HolSubgroup& sub) {
  const AbelianType& t = sub.ambient;
  std::vector<HolElement> fixed;
  for (const auto& h : sub.elems)
    if (t.is_zero(h.pt)) fixed.push_back(h);
  HolSubgroup stab{t, fixed, fixed, {}, fixed.size()};
  for (const auto& h : fixed) stab.member.insert(hol_key(t, h));
  return stab;
}

uint64_t hol_order(const AbelianType& t) { return t.order() * aut_order(t); }

NormalizerResult normalizer(const HolSubgroup& sub, const NormalizerOptions& opt) {
  const AbelianType& t = sub.ambient;
  NormalizerResult out;
  out.hol_order = hol_order(t);
  if (out.hol_order > opt.scan_budget)
    throw BudgetExceeded("normalizer scan over |Hol| = " + std::to_string(out.hol_order) +
                         " exceeds budget");

  const std::vector<HolElement>& probes =
      (opt.conjugate_all_elements || sub.gens.empty()) ? sub.elems : sub.gens;

  // distinct automorphism components present in sub: a conjugated
  // generator with aut part outside this set can never land in sub
  std::unordered_set<uint64_t> sub_aut_codes;
  for (const auto& h : sub.elems) sub_aut_codes.insert(t.mat_code(h.aut));

  uint64_t space = t.aut_code_space();
  int threads = resolve_threads(opt.threads);
  std::vector<uint64_t> counts(threads, 0);
  std::vector<std::vector<HolElement>> samples(threads);

  parallel_chunks(space, threads, [&](int worker, uint64_t lo, uint64_t hi) {
    uint64_t local = 0;
    auto& sample = samples[worker];
    uint32_t n = static_cast<uint32_t>(t.order());
    std::vector<Mat> conj_auts(probes.size());
    std::vector<uint64_t> conj_keys(probes.size());
    std::vector<Mat> diff(probes.size());
    std::vector<Element> shift(probes.size());
    for (uint64_t code = lo; code < hi; ++code) {
      Mat phi = t.mat_from_code(code);
      if (!t.is_invertible(phi)) continue;
      Mat phi_inv = t.inverse(phi);
      bool feasible = true;
      for (size_t gi = 0; gi < probes.size(); ++gi) {
        // (x,phi)(a,m)(x,phi)^-1 = (x + phi(a) - psi(x), psi), psi = phi m phi^-1
        Mat psi = t.compose(t.compose(phi, probes[gi].aut), phi_inv);
        uint64_t psi_code = t.mat_code(psi);
        if (!sub_aut_codes.count(psi_code)) {
          feasible = false;
          break;
        }
        conj_auts[gi] = psi;
        conj_keys[gi] = psi_code * t.order();
        diff[gi] = t.mat_add(t.mat_identity(), t.mat_neg(psi));
        shift[gi] = t.apply(phi, probes[gi].pt);
      }
      if (!feasible) continue;
      for (uint32_t xi = 0; xi < n; ++xi) {
        Element x = t.unpack(xi);
        bool all_in = true;
        for (size_t gi = 0; gi < probes.size(); ++gi) {
          Element pt = t.add(shift[gi], t.apply(diff[gi], x));
          if (!sub.member.count(conj_keys[gi] + t.pack(pt))) {
            all_in = false;
            break;
          }
        }
        if (all_in) {
          ++local;
          if (sample.size() < opt.sample_cap) sample.push_back(HolElement{x, phi});
        }
      }
      if (opt.progress && (code - lo) % (1 << 20) == 0 && worker == 0)
        std::fprintf(stderr, "normalizer scan: %llu/%llu aut codes\n",
                     static_cast<unsigned long long>(code - lo),
                     static_cast<unsigned long long>(hi - lo));
    }
    counts[worker] = local;
  });

  for (int w = 0; w < threads; ++w) out.order += counts[w];
  for (int w = 0; w < threads && out.sample.size() < opt.sample_cap; ++w)
    for (const auto& h : samples[w])
      if (out.sample.size() < opt.sample_cap) out.sample.push_back(h);
  return out;
}

HolSubgroupView::HolSubgroupView(const HolSubgroup& sub) : sub_(sub) {
  index_.reserve(sub.elems.size());
  for (uint32_t i = 0; i < sub.elems.size(); ++i)
    index_[hol_key(sub.ambient, sub.elems[i])] = i;
  id_ = index_.at(hol_key(sub.ambient, hol_identity(sub.ambient)));
}

uint32_t HolSubgroupView::mul(uint32_t a, uint32_t b) const {
  return index_.at(hol_key(sub_.ambient, hol_mul(sub_.ambient, sub_.elems[a], sub_.elems[b])));
}

uint32_t HolSubgroupView::inv(uint32_t a) const {
  return index_.at(hol_key(sub_.ambient, hol_inv(sub_.ambient, sub_.elems[a])));
}

}  // namespace holobrace
