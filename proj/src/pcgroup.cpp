#include "holobrace/pcgroup.hpp"

namespace holobrace {

PcPresentation::PcPresentation(uint32_t p, std::vector<uint32_t> gen_orders,
                               std::vector<uint32_t> power_tails,
                               std::vector<std::vector<uint32_t>> comm,
                               std::string label)
    : p_(p),
      gen_orders_(std::move(gen_orders)),
      tails_(std::move(power_tails)),
      comm_(std::move(comm)),
      label_(std::move(label)) {
  if (!is_odd_prime(p_)) throw InvalidInput("p must be an odd prime");
  size_t s = gen_orders_.size();
  if (s == 0 || s > kMaxRank) throw InvalidInput("bad generator count");
  if (tails_.size() != s || comm_.size() != s) throw InvalidInput("ragged presentation");
  for (size_t i = 0; i + 1 < s; ++i)
    if (gen_orders_[i] < gen_orders_[i + 1])
      throw InvalidInput("gen_orders must be non-increasing");
  order_ = p_;
  for (size_t i = 0; i < s; ++i) {
    uint32_t o = gen_orders_[i];
    if (o < p_) throw InvalidInput("generator order must be at least p");
    while (o > 1) {
      if (o % p_ != 0) throw InvalidInput("generator orders must be powers of p");
      o /= p_;
    }
    if (tails_[i] >= p_) throw InvalidInput("power tail out of range");
    if (comm_[i].size() != s) throw InvalidInput("ragged commutator table");
    order_ *= gen_orders_[i];
  }
  bool nonabelian = false;
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j) {
      if (comm_[i][j] >= p_) throw InvalidInput("commutator exponent out of range");
      if (i == j && comm_[i][j] != 0) throw InvalidInput("k_ii must vanish");
      if ((comm_[i][j] + comm_[j][i]) % p_ != 0)
        throw InvalidInput("commutator table must be antisymmetric mod p");
      if (comm_[i][j] != 0) nonabelian = true;
    }
  if (!nonabelian)
    throw InvalidInput("presentation is abelian; use an abelian group spec instead");
  if (order_ > 100000) throw InvalidInput("pc group order exceeds supported range");
}

PcElement pc_identity(const PcPresentation&) { return PcElement{}; }

PcElement pc_gen(const PcPresentation& pres, int i) {
  PcElement x;
  (void)pres;
  x.a[i] = 1;
  return x;
}

PcElement pc_c(const PcPresentation&) {
  PcElement x;
  x.t = 1;
  return x;
}

bool pc_valid(const PcPresentation& pres, const PcElement& x) {
  if (x.t >= pres.p()) return false;
  for (int i = 0; i < pres.s(); ++i)
    if (x.a[i] >= pres.gen_order(i)) return false;
  for (int i = pres.s(); i < kMaxRank; ++i)
    if (x.a[i] != 0) return false;
  return true;
}

PcElement pc_mul(const PcPresentation& pres, const PcElement& x, const PcElement& y) {
  uint32_t p = pres.p();
  uint64_t t = x.t + y.t;
  PcElement r;
  for (int i = 0; i < pres.s(); ++i) {
    // central contribution from moving y's beta_j (j < i) past x's beta_i
    for (int j = 0; j < i; ++j)
      t += uint64_t(x.a[i]) * y.a[j] % p * pres.comm(i, j);
    uint32_t sum = x.a[i] + y.a[i];
    if (sum >= pres.gen_order(i)) {
      sum -= pres.gen_order(i);
      t += pres.power_tail(i);
    }
    r.a[i] = sum;
  }
  r.t = static_cast<uint32_t>(t % p);
  return r;
}

PcElement pc_inv(const PcPresentation& pres, const PcElement& x) {
  PcElement y;
  for (int i = 0; i < pres.s(); ++i)
    y.a[i] = x.a[i] ? pres.gen_order(i) - x.a[i] : 0;
  // fix the central part so that x * y = identity
  PcElement probe = pc_mul(pres, x, y);
  y.t = probe.t ? pres.p() - probe.t : 0;
  return y;
}

PcElement pc_pow(const PcPresentation& pres, const PcElement& x, uint64_t k) {
  PcElement r = pc_identity(pres);
  PcElement base = x;
  while (k) {
    if (k & 1) r = pc_mul(pres, r, base);
    base = pc_mul(pres, base, base);
    k >>= 1;
  }
  return r;
}

uint64_t pc_element_order(const PcPresentation& pres, const PcElement& x) {
  uint64_t ord = 1;
  PcElement cur = x;
  PcElement e = pc_identity(pres);
  while (!(cur == e)) {
    cur = pc_pow(pres, cur, pres.p());
    ord *= pres.p();
    if (ord > pres.order()) throw PropertyViolation("pc element order overflow");
  }
  return ord;
}

uint32_t pc_pack(const PcPresentation& pres, const PcElement& x) {
  uint32_t idx = x.t;
  for (int i = 0; i < pres.s(); ++i) idx = idx * pres.gen_order(i) + x.a[i];
  return idx;
}

PcElement pc_unpack(const PcPresentation& pres, uint32_t idx) {
  PcElement x;
  for (int i = pres.s() - 1; i >= 0; --i) {
    x.a[i] = idx % pres.gen_order(i);
    idx /= pres.gen_order(i);
  }
  x.t = idx;
  return x;
}

std::map<uint64_t, uint64_t> pc_order_statistics(const PcPresentation& pres) {
  std::map<uint64_t, uint64_t> stats;
  for (uint32_t idx = 0; idx < pres.order(); ++idx)
    ++stats[pc_element_order(pres, pc_unpack(pres, idx))];
  return stats;
}

DerivedSubgroup pc_derived_subgroup(const PcPresentation& pres) {
  // [beta_i, beta_j] = c^{k_ij}; the derived subgroup is generated by the
  // central elements c^{k_ij}, so collect the exponents and close.
  DerivedSubgroup d;
  std::vector<bool> seen(pres.p(), false);
  seen[0] = true;
  std::vector<uint32_t> exps;
  for (int i = 0; i < pres.s(); ++i)
    for (int j = 0; j < pres.s(); ++j) {
      PcElement bi = pc_gen(pres, i), bj = pc_gen(pres, j);
      PcElement comm = pc_mul(pres, pc_mul(pres, bi, bj),
                              pc_mul(pres, pc_inv(pres, bi), pc_inv(pres, bj)));
      for (int k = 0; k < pres.s(); ++k)
        if (comm.a[k] != 0) throw PropertyViolation("commutator left the center");
      if (!seen[comm.t]) {
        seen[comm.t] = true;
        exps.push_back(comm.t);
      }
    }
  // subgroup of C_p generated by the exponents; p prime so it is either
  // trivial or everything, but close anyway
  std::vector<bool> sub(pres.p(), false);
  sub[0] = true;
  uint64_t count = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (uint32_t v = 0; v < pres.p(); ++v) {
      if (!sub[v]) continue;
      for (uint32_t e : exps) {
        uint32_t w = (v + e) % pres.p();
        if (!sub[w]) {
          sub[w] = true;
          ++count;
          grew = true;
        }
      }
    }
  }
  d.order = count;
  for (uint32_t e : exps) {
    PcElement g;
    g.t = e;
    d.gens.push_back(g);
  }
  return d;
}

uint64_t pc_aut_count(const PcPresentation& pres) {
  PcGroupView view(pres);
  return automorphism_count(view);
}

}  // namespace holobrace
