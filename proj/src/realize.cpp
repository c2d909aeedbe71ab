#include "holobrace/realize.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

namespace holobrace {

namespace {

// Per-entry value lists for the triangular Sylow pattern: diagonal == 1
// mod p, below-diagonal within a block == 0 mod p, everything else free.
std::vector<std::vector<uint32_t>> sylow_entry_choices(const AbelianType& t) {
  int s = t.rank();
  const auto& e = t.exponents();
  std::vector<std::vector<uint32_t>> choices(s * s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      std::vector<uint32_t>& ch = choices[i * s + j];
      uint32_t mod = t.modulus(i);
      if (i == j) {
        for (uint32_t v = 1; v < mod; v += t.p()) ch.push_back(v);
      } else if (e[i] == e[j] && i > j) {
        for (uint32_t v = 0; v < mod; v += t.p()) ch.push_back(v);
      } else if (e[i] > e[j]) {
        uint32_t stride = static_cast<uint32_t>(ipow(t.p(), e[i] - e[j]));
        for (uint32_t v = 0; v < mod; v += stride) ch.push_back(v);
      } else {
        for (uint32_t v = 0; v < mod; ++v) ch.push_back(v);
      }
    }
  return choices;
}

}  // namespace

AutPool sylow_p_of_aut(const AbelianType& t, uint64_t p_part_budget) {
  uint64_t full = aut_order(t);
  uint64_t p_part = 1, rest = full;
  while (rest % t.p() == 0) {
    rest /= t.p();
    p_part *= t.p();
  }
  if (p_part > p_part_budget)
    throw BudgetExceeded("Sylow p-subgroup of Aut too large: " + std::to_string(p_part));

  auto choices = sylow_entry_choices(t);
  int s = t.rank();
  uint64_t total = 1;
  for (auto& ch : choices) total *= ch.size();
  if (total != p_part)
    throw PropertyViolation("triangular pattern count disagrees with the p-part of |Aut|");

  AutPool pool;
  pool.sylow_restricted = true;
  pool.aut_order_full = full;
  pool.elems.reserve(p_part);
  std::vector<size_t> odo(s * s, 0);
  while (true) {
    Mat m;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) m.at(i, j) = choices[i * s + j][odo[i * s + j]];
    if (t.endo_validate(m) || !t.is_invertible(m))
      throw PropertyViolation("triangular pattern produced a non-automorphism");
    pool.elems.push_back(m);
    int k = s * s - 1;
    while (k >= 0 && ++odo[k] == choices[k].size()) odo[k--] = 0;
    if (k < 0) break;
  }
  std::sort(pool.elems.begin(), pool.elems.end(),
            [&](const Mat& a, const Mat& b) { return t.mat_code(a) < t.mat_code(b); });
  for (const Mat& m : pool.elems) pool.codes.insert(t.mat_code(m));

  // closure sanity: full pairwise for small pools, deterministic sample above
  uint64_t n = pool.elems.size();
  if (n <= 1024) {
    for (uint64_t i = 0; i < n; ++i)
      for (uint64_t j = 0; j < n; ++j)
        if (!pool.codes.count(t.mat_code(t.compose(pool.elems[i], pool.elems[j]))))
          throw PropertyViolation("Sylow pool is not closed");
  } else {
    SplitMix64 rng(0x73796c6f77ull);
    for (int it = 0; it < 10000; ++it) {
      const Mat& a = pool.elems[rng.below(n)];
      const Mat& b = pool.elems[rng.below(n)];
      if (!pool.codes.count(t.mat_code(t.compose(a, b))))
        throw PropertyViolation("Sylow pool is not closed");
    }
  }
  return pool;
}

AutPool full_aut_pool(const AbelianType& t, uint64_t budget) {
  AutPool pool;
  pool.sylow_restricted = false;
  pool.aut_order_full = aut_order(t);
  if (pool.aut_order_full > budget)
    throw BudgetExceeded("Aut(N) too large to enumerate: " + std::to_string(pool.aut_order_full));
  t.for_each_aut([&](const Mat& m, uint64_t code) {
    pool.elems.push_back(m);
    pool.codes.insert(code);
    return true;
  });
  return pool;
}

// ---------------------------------------------------------------------
// Shared machinery for backtracking searches inside N x| pool: packed
// lookup tables for the ambient addition, the pool action and the pool
// multiplication.
namespace {

struct PoolContext {
  const AbelianType* t = nullptr;
  const AutPool* pool = nullptr;
  uint32_t n = 0;
  std::vector<uint32_t> add_tab;        // n * n
  std::vector<uint32_t> neg_tab;        // n
  std::vector<uint32_t> act_tab;        // pool * n
  std::vector<uint32_t> pool_mul;       // pool * pool when small enough
  std::vector<uint32_t> pool_inv;       // pool
  std::unordered_map<uint64_t, uint32_t> pool_index;  // mat code -> index
  uint32_t id_index = 0;
  bool mul_tabled = false;

  void build(const AbelianType& type, const AutPool& p) {
    t = &type;
    pool = &p;
    n = static_cast<uint32_t>(type.order());
    uint32_t m = static_cast<uint32_t>(p.elems.size());
    add_tab.resize(size_t(n) * n);
    neg_tab.resize(n);
    for (uint32_t a = 0; a < n; ++a) {
      Element ea = type.unpack(a);
      neg_tab[a] = type.pack(type.neg(ea));
      for (uint32_t b = 0; b < n; ++b)
        add_tab[size_t(a) * n + b] = type.pack(type.add(ea, type.unpack(b)));
    }
    act_tab.resize(size_t(m) * n);
    for (uint32_t f = 0; f < m; ++f)
      for (uint32_t x = 0; x < n; ++x)
        act_tab[size_t(f) * n + x] = type.pack(type.apply(p.elems[f], type.unpack(x)));
    pool_index.reserve(m * 2);
    for (uint32_t f = 0; f < m; ++f) pool_index[type.mat_code(p.elems[f])] = f;
    id_index = pool_index.at(type.mat_code(type.mat_identity()));
    mul_tabled = m <= 4096;
    if (mul_tabled) {
      pool_mul.resize(size_t(m) * m);
      for (uint32_t f = 0; f < m; ++f)
        for (uint32_t g = 0; g < m; ++g)
          pool_mul[size_t(f) * m + g] =
              pool_index.at(type.mat_code(type.compose(p.elems[f], p.elems[g])));
    }
    pool_inv.resize(m);
    for (uint32_t f = 0; f < m; ++f)
      pool_inv[f] = pool_index.at(type.mat_code(type.inverse(p.elems[f])));
  }

  uint32_t mul_aut(uint32_t f, uint32_t g) const {
    if (mul_tabled) return pool_mul[size_t(f) * pool->elems.size() + g];
    return pool_index.at(t->mat_code(t->compose(pool->elems[f], pool->elems[g])));
  }
  // (a,f)(b,g) = (a + f(b), f g)
  std::pair<uint32_t, uint32_t> mul(uint32_t apt, uint32_t af, uint32_t bpt,
                                    uint32_t bf) const {
    return {add_tab[size_t(apt) * n + act_tab[size_t(af) * n + bpt]], mul_aut(af, bf)};
  }
  std::pair<uint32_t, uint32_t> power(uint32_t pt, uint32_t f, uint64_t k) const {
    uint32_t rpt = 0, rf = id_index;
    uint32_t bpt = pt, bf = f;
    while (k) {
      if (k & 1) {
        auto r = mul(rpt, rf, bpt, bf);
        rpt = r.first;
        rf = r.second;
      }
      auto b = mul(bpt, bf, bpt, bf);
      bpt = b.first;
      bf = b.second;
      k >>= 1;
    }
    return {rpt, rf};
  }
  // order of (pt, f) as p^k; UINT64_MAX if not a p-element within the cap
  uint64_t p_order(uint32_t pt, uint32_t f, uint32_t cap = 10) const {
    uint32_t cpt = pt, cf = f;
    uint64_t ord = 1;
    for (uint32_t k = 0; k <= cap; ++k) {
      if (cpt == 0 && cf == id_index) return ord;
      auto nx = power(cpt, cf, t->p());
      cpt = nx.first;
      cf = nx.second;
      ord *= t->p();
    }
    return UINT64_MAX;
  }
  HolElement lift(uint32_t pt, uint32_t f) const {
    return HolElement{t->unpack(pt), pool->elems[f]};
  }
};

// Partial point-injective subgroup: at most one element over each point.
// Stored as the closure of a generator chain; the closure is maintained
// under right multiplication by the chain (closure from a set containing
// the identity in a finite group needs no explicit inverses).
struct PartialGraph {
  std::vector<uint32_t> by_point;                    // point -> pool idx
  std::vector<std::pair<uint32_t, uint32_t>> elems;  // BFS order
  std::vector<std::pair<uint32_t, uint32_t>> gens;   // the chain

  void init(const PoolContext& cx) {
    by_point.assign(cx.n, UINT32_MAX);
    elems.clear();
    gens.clear();
    by_point[0] = cx.id_index;
    elems.emplace_back(0, cx.id_index);
  }

  // Closure of the current subgroup together with (pt, f); fails on a
  // point collision or when the size cap is exceeded.
  bool extend(const PoolContext& cx, uint32_t pt, uint32_t f, uint64_t cap) {
    auto push = [&](uint32_t q, uint32_t g) {
      uint32_t cur = by_point[q];
      if (cur == g) return 1;            // already present
      if (cur != UINT32_MAX) return -1;  // point collision: not regular-compatible
      by_point[q] = g;
      elems.emplace_back(q, g);
      return 0;
    };
    size_t old_size = elems.size();
    gens.emplace_back(pt, f);
    if (push(pt, f) < 0) return false;
    if (elems.size() > cap) return false;
    // Existing elements were closed under the old chain; they only need
    // products with the new generator. Appended elements need all of it.
    for (size_t head = 0; head < elems.size(); ++head) {
      auto [apt, af] = elems[head];
      size_t first_gen = head < old_size ? gens.size() - 1 : 0;
      for (size_t k = first_gen; k < gens.size(); ++k) {
        auto pr = cx.mul(apt, af, gens[k].first, gens[k].second);
        if (push(pr.first, pr.second) < 0) return false;
        if (elems.size() > cap) return false;
      }
    }
    return true;
  }
};

HolSubgroup materialize(const PoolContext& cx, const PartialGraph& g) {
  std::vector<HolElement> gens;
  gens.reserve(g.gens.size());
  for (auto [pt, f] : g.gens) gens.push_back(cx.lift(pt, f));
  HolSubgroup sub{*cx.t, std::move(gens), {}, {}, g.elems.size()};
  sub.elems.reserve(g.elems.size());
  for (auto [pt, f] : g.elems) {
    HolElement h = cx.lift(pt, f);
    sub.elems.push_back(h);
    sub.member.insert(hol_key(*cx.t, h));
  }
  return sub;
}

}  // namespace

// ---------------------------------------------------------------------
// Target profiles: generator orders, prefix subgroup orders and relation
// checks over candidate images.
namespace {

struct TargetProfile {
  uint64_t order = 0;
  std::vector<uint64_t> gen_orders;
  std::vector<uint64_t> prefix_orders;
  std::string label;
  // checks every defining relation whose participants are assigned
  std::function<bool(const AbelianType&, const std::vector<HolElement>&)> relations_ok;
};

TargetProfile profile_abelian(const AbelianType& tg) {
  TargetProfile tp;
  tp.order = tg.order();
  tp.label = tg.describe();
  uint64_t cum = 1;
  for (int i = 0; i < tg.rank(); ++i) {
    tp.gen_orders.push_back(tg.modulus(i));
    cum *= tg.modulus(i);
    tp.prefix_orders.push_back(cum);
  }
  tp.relations_ok = [](const AbelianType& t, const std::vector<HolElement>& imgs) {
    for (size_t i = 0; i < imgs.size(); ++i)
      for (size_t j = i + 1; j < imgs.size(); ++j)
        if (!(hol_mul(t, imgs[i], imgs[j]) == hol_mul(t, imgs[j], imgs[i]))) return false;
    return true;
  };
  return tp;
}

TargetProfile profile_pc(const PcPresentation& pres) {
  TargetProfile tp;
  tp.order = pres.order();
  tp.label = pres.label();
  PcGroupView view(pres);
  std::vector<uint32_t> gen_idx;
  for (int i = 0; i < pres.s(); ++i) {
    PcElement b = pc_gen(pres, i);
    tp.gen_orders.push_back(pc_element_order(pres, b));
    gen_idx.push_back(pc_pack(pres, b));
    tp.prefix_orders.push_back(closure(view, std::vector<uint32_t>(
                                                 gen_idx.begin(), gen_idx.end()))
                                   .size());
  }
  PcPresentation p = pres;
  tp.relations_ok = [p](const AbelianType& t, const std::vector<HolElement>& imgs) {
    size_t m = imgs.size();
    HolElement e = hol_identity(t);
    // image of c: from the first nonzero power tail among assigned
    // generators, else from the first noncommuting assigned pair
    std::optional<HolElement> c;
    for (size_t i = 0; i < m && !c; ++i)
      if (p.power_tail(i) != 0) {
        HolElement pw = hol_pow(t, imgs[i], p.gen_order(i));
        uint64_t inv_t = 1;  // t_i^{-1} mod p
        while (inv_t * p.power_tail(i) % p.p() != 1) ++inv_t;
        c = hol_pow(t, pw, inv_t);
      }
    for (size_t i = 0; i < m && !c; ++i)
      for (size_t j = 0; j < m && !c; ++j)
        if (p.comm(i, j) != 0) {
          HolElement lhs = hol_mul(t, hol_mul(t, imgs[i], imgs[j]), hol_inv(t, imgs[i]));
          HolElement d = hol_mul(t, lhs, hol_inv(t, imgs[j]));  // = c^{k_ij}
          uint64_t inv_k = 1;
          while (inv_k * p.comm(i, j) % p.p() != 1) ++inv_k;
          c = hol_pow(t, d, inv_k);
        }
    if (c) {
      if (!(hol_pow(t, *c, p.p()) == e)) return false;
      for (size_t i = 0; i < m; ++i) {
        if (!(hol_mul(t, *c, imgs[i]) == hol_mul(t, imgs[i], *c))) return false;
        if (!(hol_pow(t, imgs[i], p.gen_order(i)) == hol_pow(t, *c, p.power_tail(i))))
          return false;
        for (size_t j = 0; j < m; ++j) {
          HolElement lhs = hol_mul(t, hol_mul(t, imgs[i], imgs[j]), hol_inv(t, imgs[i]));
          HolElement rhs = hol_mul(t, hol_pow(t, *c, p.comm(i, j)), imgs[j]);
          if (!(lhs == rhs)) return false;
        }
      }
    } else {
      // all assigned tails vanish and assigned pairs commute so far
      for (size_t i = 0; i < m; ++i) {
        if (!(hol_pow(t, imgs[i], p.gen_order(i)) == e)) return false;
        for (size_t j = i + 1; j < m; ++j)
          if (p.comm(i, j) == 0 &&
              !(hol_mul(t, imgs[i], imgs[j]) == hol_mul(t, imgs[j], imgs[i])))
            return false;
      }
    }
    return true;
  };
  return tp;
}

TargetProfile profile_remark(uint32_t p) {
  TargetProfile tp;
  RemarkGroupView view(p);
  tp.order = view.order();
  tp.label = view.name();
  // generators a, b, c with orders p^2, p, p
  uint32_t a = view.pack(1, 0, 0), b = view.pack(0, 1, 0), c = view.pack(0, 0, 1);
  std::vector<uint32_t> gens;
  for (uint32_t g : {a, b, c}) {
    gens.push_back(g);
    tp.gen_orders.push_back(element_order(view, g));
    tp.prefix_orders.push_back(closure(view, gens).size());
  }
  tp.relations_ok = [p](const AbelianType& t, const std::vector<HolElement>& imgs) {
    size_t m = imgs.size();
    if (m >= 2) {
      // b a b^-1 = a^{1+p}
      HolElement lhs = hol_mul(t, hol_mul(t, imgs[1], imgs[0]), hol_inv(t, imgs[1]));
      if (!(lhs == hol_pow(t, imgs[0], 1 + p))) return false;
    }
    if (m >= 3) {
      // c a c^-1 = a b, c b c^-1 = b
      HolElement lhs = hol_mul(t, hol_mul(t, imgs[2], imgs[0]), hol_inv(t, imgs[2]));
      if (!(lhs == hol_mul(t, imgs[0], imgs[1]))) return false;
      HolElement lhs2 = hol_mul(t, hol_mul(t, imgs[2], imgs[1]), hol_inv(t, imgs[2]));
      if (!(lhs2 == imgs[1])) return false;
    }
    return true;
  };
  return tp;
}

TargetProfile target_profile(const GroupHandle& target) {
  switch (target.kind) {
    case GroupHandle::Kind::Abelian:
      return profile_abelian(*target.abelian);
    case GroupHandle::Kind::Pc:
      return profile_pc(*target.pc);
    case GroupHandle::Kind::Remark:
      return profile_remark(target.remark_p);
  }
  throw InvalidInput("bad target handle");
}

struct BranchResult {
  bool found = false;
  uint64_t nodes = 0;
  std::optional<HolSubgroup> witness;
};

struct BacktrackSearch {
  const PoolContext& cx;
  const TargetProfile& tp;
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> cands;  // per level
  uint64_t node_budget;

  BacktrackSearch(const PoolContext& cx_, const TargetProfile& tp_, uint64_t budget)
      : cx(cx_), tp(tp_), node_budget(budget) {
    // candidate images per level: elements of matching order, ascending key
    std::map<uint64_t, std::vector<std::pair<uint32_t, uint32_t>>> by_order;
    for (uint64_t o : tp.gen_orders) by_order[o] = {};
    uint32_t m = static_cast<uint32_t>(cx.pool->elems.size());
    for (uint32_t f = 0; f < m; ++f)
      for (uint32_t pt = 0; pt < cx.n; ++pt) {
        uint64_t o = cx.p_order(pt, f);
        auto it = by_order.find(o);
        if (it != by_order.end()) it->second.emplace_back(pt, f);
      }
    cands.resize(tp.gen_orders.size());
    for (size_t lv = 0; lv < tp.gen_orders.size(); ++lv)
      cands[lv] = by_order[tp.gen_orders[lv]];
  }

  // depth-first from `level`, with state carried explicitly; returns true
  // when a witness was found (first in deterministic order)
  bool recurse(size_t level, PartialGraph& graph, std::vector<HolElement>& imgs,
               BranchResult& out) {
    if (level == tp.gen_orders.size()) {
      if (graph.elems.size() != tp.order) return false;
      out.found = true;
      out.witness = materialize(cx, graph);
      return true;
    }
    for (const auto& [pt, f] : cands[level]) {
      if (out.nodes >= node_budget) throw BudgetExceeded("search node budget exhausted");
      ++out.nodes;
      imgs.push_back(cx.lift(pt, f));
      if (tp.relations_ok(*cx.t, imgs)) {
        PartialGraph next = graph;
        if (next.extend(cx, pt, f, tp.prefix_orders[level]) &&
            next.elems.size() == tp.prefix_orders[level] &&
            recurse(level + 1, next, imgs, out)) {
          imgs.pop_back();
          return true;
        }
      }
      imgs.pop_back();
    }
    return false;
  }

  // one level-0 branch: candidate index `b`
  BranchResult run_branch(size_t b) {
    BranchResult out;
    if (cands.empty()) {
      // no generators: target is trivial; N must be trivial too
      out.found = tp.order == 1;
      return out;
    }
    const auto& [pt, f] = cands[0][b];
    ++out.nodes;
    std::vector<HolElement> imgs = {cx.lift(pt, f)};
    if (!tp.relations_ok(*cx.t, imgs)) return out;
    PartialGraph graph;
    graph.init(cx);
    if (!graph.extend(cx, pt, f, tp.prefix_orders[0])) return out;
    if (graph.elems.size() != tp.prefix_orders[0]) return out;
    recurse(1, graph, imgs, out);
    return out;
  }

  size_t branch_count() const { return cands.empty() ? 0 : cands[0].size(); }
};

}  // namespace

SearchOutcome search_regular(const AbelianType& ambient, const GroupHandle& target,
                             const SearchOptions& opt) {
  if (target.order() != ambient.order())
    throw InvalidInput("realizability requires |G| = |N|");

  AutPool pool = opt.restrict_sylow ? sylow_p_of_aut(ambient)
                                    : full_aut_pool(ambient);
  uint64_t space = ambient.order() * pool.elems.size();
  if (opt.restrict_sylow && space > 10000000ull)
    throw BudgetExceeded("restricted search space exceeds 1e7: " + std::to_string(space));
  if (!opt.restrict_sylow && hol_order(ambient) > 1000000ull)
    throw BudgetExceeded("unrestricted search needs |Hol(N)| <= 1e6");

  PoolContext cx;
  cx.build(ambient, pool);
  TargetProfile tp = target_profile(target);

  SearchOutcome out;
  out.cert.restricted = opt.restrict_sylow;
  out.cert.pool_size = pool.elems.size();
  {
    std::ostringstream os;
    os << "generator images in " << ambient.describe() << " x pool(|pool|="
       << pool.elems.size() << (opt.restrict_sylow ? ", Sylow-restricted" : ", full Aut")
       << "), target " << tp.label;
    out.cert.space = os.str();
  }
  out.cert.reduction =
      opt.restrict_sylow
          ? "gamma image of a p-group lies in a Sylow p-subgroup of Aut(N); "
            "Aut(N)-conjugation preserves regularity and isomorphism type"
          : "full automorphism pool; no reduction";

  BacktrackSearch search(cx, tp, opt.max_nodes);
  size_t branches = search.branch_count();
  if (branches == 0) {
    out.status = tp.order == 1 ? SearchStatus::Found : SearchStatus::Exhausted;
    return out;
  }

  int threads = resolve_threads(opt.threads);
  size_t found_branch = SIZE_MAX;
  std::vector<BranchResult> results(branches);
  std::vector<uint8_t> ran(branches, 0);
  bool budget_hit = false;

  size_t chunk = std::max<size_t>(1, static_cast<size_t>(threads) * 4);
  for (size_t base = 0; base < branches && found_branch == SIZE_MAX && !budget_hit;
       base += chunk) {
    size_t hi = std::min(branches, base + chunk);
    std::vector<uint8_t> budget_flags(threads, 0);
    parallel_chunks(hi - base, threads, [&](int worker, uint64_t lo, uint64_t hiw) {
      for (uint64_t k = lo; k < hiw; ++k) {
        size_t b = base + k;
        try {
          results[b] = search.run_branch(b);
        } catch (const BudgetExceeded&) {
          budget_flags[worker] = 1;
        }
        ran[b] = 1;
      }
    });
    for (int w = 0; w < threads; ++w)
      if (budget_flags[w]) budget_hit = true;
    for (size_t b = base; b < hi; ++b)
      if (results[b].found) {
        found_branch = b;
        break;
      }
    if (opt.progress)
      std::fprintf(stderr, "search %s: %zu/%zu branches\n", tp.label.c_str(), hi, branches);
  }

  if (budget_hit && found_branch == SIZE_MAX) {
    out.status = SearchStatus::Budget;
    return out;
  }

  // deterministic node count: every branch before the winning one ran to
  // completion; speculative later branches are not counted
  uint64_t nodes = 0;
  size_t limit = found_branch == SIZE_MAX ? branches : found_branch + 1;
  for (size_t b = 0; b < limit; ++b) nodes += results[b].nodes;
  out.cert.nodes = nodes;

  if (found_branch == SIZE_MAX) {
    out.status = SearchStatus::Exhausted;
    return out;
  }
  out.status = SearchStatus::Found;
  out.witness = results[found_branch].witness;
  if (opt.verify_witness) verify_witness(*out.witness, target);
  return out;
}

Census enumerate_regular(const AbelianType& ambient, const CensusOptions& opt) {
  AutPool pool = opt.restrict_sylow ? sylow_p_of_aut(ambient)
                                    : full_aut_pool(ambient);
  uint64_t space = ambient.order() * pool.elems.size();
  if (opt.restrict_sylow && space > 10000000ull)
    throw BudgetExceeded("restricted census space exceeds 1e7");
  if (!opt.restrict_sylow && hol_order(ambient) > 1000000ull)
    throw BudgetExceeded("unrestricted census needs |Hol(N)| <= 1e6");

  PoolContext cx;
  cx.build(ambient, pool);
  uint32_t n = cx.n;
  uint32_t m = static_cast<uint32_t>(pool.elems.size());

  // depth-first: extend by the unique element over the least uncovered
  // point; each regular subgroup appears along exactly one chain
  struct Walker {
    const PoolContext& cx;
    uint32_t n, m;
    uint64_t nodes = 0;
    uint64_t max_nodes;
    std::vector<HolSubgroup> found;

    Walker(const PoolContext& c, uint32_t n_, uint32_t m_, uint64_t mx)
        : cx(c), n(n_), m(m_), max_nodes(mx) {}

    void walk(const PartialGraph& graph) {
      if (graph.elems.size() == n) {
        found.push_back(materialize(cx, graph));
        return;
      }
      uint32_t target_pt = 0;
      while (graph.by_point[target_pt] != UINT32_MAX) ++target_pt;
      for (uint32_t f = 0; f < m; ++f) {
        if (++nodes > max_nodes) throw BudgetExceeded("census node budget exhausted");
        PartialGraph next = graph;
        if (!next.extend(cx, target_pt, f, n)) continue;
        walk(next);
      }
    }
  };

  int threads = resolve_threads(opt.threads);
  std::vector<std::vector<HolSubgroup>> per_branch(m);
  std::vector<uint64_t> branch_nodes(m, 0);

  parallel_chunks(m, threads, [&](int, uint64_t lo, uint64_t hi) {
    for (uint64_t f = lo; f < hi; ++f) {
      Walker w(cx, n, m, opt.max_nodes);
      PartialGraph root;
      root.init(cx);
      // first uncovered point is packed index 1
      if (++w.nodes <= opt.max_nodes && root.extend(cx, 1, static_cast<uint32_t>(f), n))
        w.walk(root);
      per_branch[f] = std::move(w.found);
      branch_nodes[f] = w.nodes;
    }
  });

  Census census;
  census.restricted = opt.restrict_sylow;
  for (uint32_t f = 0; f < m; ++f) {
    census.nodes += branch_nodes[f];
    for (auto& s : per_branch[f]) census.subs.push_back(std::move(s));
  }
  // chain uniqueness means no duplicates; verify cheaply
  std::unordered_set<uint64_t> hashes;
  for (const auto& s : census.subs)
    if (!hashes.insert(s.canonical_hash()).second)
      throw PropertyViolation("census produced a duplicate subgroup");
  if (opt.progress)
    std::fprintf(stderr, "census %s: %zu regular subgroups, %llu nodes\n",
                 ambient.describe().c_str(), census.subs.size(),
                 static_cast<unsigned long long>(census.nodes));
  return census;
}

// ---------------------------------------------------------------------

std::optional<Mat> find_aut_conjugator(const AbelianType& t, const GammaFunction& g1,
                                       const GammaFunction& g2) {
  uint32_t n = static_cast<uint32_t>(t.order());
  int s = t.rank();

  // per-element invariants that chi must preserve
  auto invariants = [&](const GammaFunction& g) {
    std::vector<std::array<uint64_t, 4>> inv(n);
    Brace b{t, g};
    for (uint32_t xi = 0; xi < n; ++xi) {
      Element x = t.unpack(xi);
      uint64_t add_ord = t.element_order(x);
      // circ order
      uint64_t circ_ord = 1;
      Element cur = x;
      while (!t.is_zero(cur)) {
        cur = b.circ(cur, x);
        ++circ_ord;
      }
      // order of gamma(x) and p-rank of gamma(x) - Id
      Mat gm = g.table[xi];
      uint64_t mat_ord = 1;
      Mat mcur = gm;
      while (!(mcur == t.mat_identity())) {
        mcur = t.compose(mcur, gm);
        ++mat_ord;
        if (mat_ord > 10000) throw PropertyViolation("gamma order runaway");
      }
      Mat delta = t.mat_add(gm, t.mat_neg(t.mat_identity()));
      // rank of delta mod p
      uint32_t p = t.p();
      uint32_t a[kMaxRank][kMaxRank];
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) a[i][j] = delta.at(i, j) % p;
      uint32_t rank = 0;
      for (int col = 0; col < s; ++col) {
        int piv = -1;
        for (int r = rank; r < s && piv < 0; ++r)
          if (a[r][col] != 0) piv = r;
        if (piv < 0) continue;
        for (int j = 0; j < s; ++j) std::swap(a[piv][j], a[rank][j]);
        uint64_t invp = 1, base = a[rank][col], e = p - 2;
        while (e) {
          if (e & 1) invp = invp * base % p;
          base = base * base % p;
          e >>= 1;
        }
        for (int r = 0; r < s; ++r) {
          if (r == static_cast<int>(rank) || a[r][col] == 0) continue;
          uint64_t fmul = a[r][col] * invp % p;
          for (int j = 0; j < s; ++j)
            a[r][j] = static_cast<uint32_t>((a[r][j] + (p - fmul) * a[rank][j] % p) % p);
        }
        ++rank;
      }
      inv[xi] = {add_ord, circ_ord, mat_ord, rank};
    }
    return inv;
  };

  auto inv1 = invariants(g1);
  auto inv2 = invariants(g2);

  // candidates per basis slot
  std::vector<std::vector<uint32_t>> cand(s);
  for (int j = 0; j < s; ++j) {
    uint32_t gj = t.pack(t.basis(j));
    for (uint32_t v = 0; v < n; ++v)
      if (inv2[v] == inv1[gj]) cand[j].push_back(v);
  }

  Mat chi;
  std::function<std::optional<Mat>(int)> rec = [&](int j) -> std::optional<Mat> {
    if (j == s) {
      if (t.endo_validate(chi) || !t.is_invertible(chi)) return std::nullopt;
      // transport prefilter on the basis: chi gamma1(g_j) = gamma2(chi g_j) chi
      for (int k = 0; k < s; ++k) {
        Element img = t.apply(chi, t.basis(k));
        if (!(t.compose(chi, g1.table[t.pack(t.basis(k))]) ==
              t.compose(g2.table[t.pack(img)], chi)))
          return std::nullopt;
      }
      // full check
      for (uint32_t xi = 0; xi < n; ++xi) {
        Element img = t.apply(chi, t.unpack(xi));
        if (!(t.compose(chi, g1.table[xi]) == t.compose(g2.table[t.pack(img)], chi)))
          return std::nullopt;
      }
      return chi;
    }
    for (uint32_t v : cand[j]) {
      Element ev = t.unpack(v);
      for (int i = 0; i < s; ++i) chi.at(i, j) = ev.c[i];
      auto r = rec(j + 1);
      if (r) return r;
    }
    return std::nullopt;
  };
  return rec(0);
}

ConjugacyClasses classify_conjugacy(const AbelianType& ambient,
                                    const std::vector<HolSubgroup>& subs,
                                    bool restricted, int threads) {
  (void)threads;
  ConjugacyClasses out;
  size_t count = subs.size();
  if (count == 0) return out;

  // canonical keys
  std::map<std::vector<uint64_t>, size_t> key_to_index;
  std::vector<std::vector<uint64_t>> keys(count);
  for (size_t i = 0; i < count; ++i) {
    for (const auto& h : subs[i].elems) keys[i].push_back(hol_key(ambient, h));
    std::sort(keys[i].begin(), keys[i].end());
    key_to_index[keys[i]] = i;
  }

  std::vector<size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](size_t a, size_t b) { parent[find(a)] = find(b); };

  auto conj_key = [&](const HolSubgroup& sub, const Mat& chi, const Mat& chi_inv) {
    std::vector<uint64_t> key;
    key.reserve(sub.elems.size());
    for (const auto& h : sub.elems) {
      HolElement c{ambient.apply(chi, h.pt),
                   ambient.compose(ambient.compose(chi, h.aut), chi_inv)};
      key.push_back(hol_key(ambient, c));
    }
    std::sort(key.begin(), key.end());
    return key;
  };

  AutPool pool = restricted ? sylow_p_of_aut(ambient) : full_aut_pool(ambient);
  if (restricted) {
    // phase 1: link inside the pool (the restricted census is closed under
    // pool conjugation), entirely through the packed tables
    PoolContext cx;
    cx.build(ambient, pool);
    uint32_t m = static_cast<uint32_t>(pool.elems.size());
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> packed(count);
    for (size_t i = 0; i < count; ++i) {
      packed[i].reserve(subs[i].elems.size());
      for (const auto& h : subs[i].elems)
        packed[i].emplace_back(ambient.pack(h.pt),
                               cx.pool_index.at(ambient.mat_code(h.aut)));
    }
    std::vector<uint64_t> key;
    for (size_t i = 0; i < count; ++i)
      for (uint32_t chi = 0; chi < m; ++chi) {
        uint32_t chi_inv = cx.pool_inv[chi];
        key.clear();
        for (auto [pt, f] : packed[i]) {
          uint32_t cpt = cx.act_tab[size_t(chi) * cx.n + pt];
          uint32_t cf = cx.mul_aut(cx.mul_aut(chi, f), chi_inv);
          key.push_back(uint64_t(ambient.mat_code(pool.elems[cf])) * ambient.order() + cpt);
        }
        std::sort(key.begin(), key.end());
        auto it = key_to_index.find(key);
        if (it != key_to_index.end()) unite(i, it->second);
      }
  } else {
    // the unrestricted census holds every regular subgroup, so it is
    // closed under all of Aut and generator linking settles the partition
    std::vector<Mat> linkers = aut_group(ambient).gens;
    for (size_t i = 0; i < count; ++i)
      for (const Mat& chi : linkers) {
        auto key = conj_key(subs[i], chi, ambient.inverse(chi));
        auto it = key_to_index.find(key);
        if (it == key_to_index.end())
          throw PropertyViolation("unrestricted census not closed under Aut conjugation");
        unite(i, it->second);
      }
  }

  // phase 2 (restricted only): fuse pool-orbit representatives across the
  // full automorphism group
  if (restricted) {
    std::vector<size_t> reps;
    for (size_t i = 0; i < count; ++i)
      if (find(i) == i) reps.push_back(i);
    std::vector<GammaFunction> gammas;
    std::vector<std::string> buckets;
    gammas.reserve(reps.size());
    for (size_t r : reps) {
      gammas.push_back(gamma_from_regular(subs[r]));
      Brace b{ambient, gammas.back()};
      buckets.push_back(multiplicative_type(b).describe());
    }
    for (size_t a = 0; a < reps.size(); ++a)
      for (size_t b = a + 1; b < reps.size(); ++b) {
        if (find(reps[a]) == find(reps[b])) continue;
        if (buckets[a] != buckets[b]) continue;
        if (find_aut_conjugator(ambient, gammas[a], gammas[b])) unite(reps[a], reps[b]);
      }
  }

  std::map<size_t, std::vector<size_t>> grouped;
  for (size_t i = 0; i < count; ++i) grouped[find(i)].push_back(i);
  for (auto& [root, members] : grouped) {
    std::sort(members.begin(), members.end());
    out.classes.push_back(members);
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  for (const auto& cls : out.classes) {
    Brace b = brace_from_regular(subs[cls[0]]);
    out.types.push_back(multiplicative_type(b));
  }
  return out;
}

RealizabilityReport realizability_report(const AbelianType& ambient,
                                         const GroupHandle& target,
                                         const SearchOptions& opt) {
  RealizabilityReport rep;
  rep.target_label = target.label.empty() ? "target" : target.label;
  rep.ambient_label = ambient.describe();
  SearchOutcome out = search_regular(ambient, target, opt);
  rep.cert = out.cert;
  switch (out.status) {
    case SearchStatus::Found:
      rep.realizable = "yes";
      rep.witness = out.witness;
      break;
    case SearchStatus::Exhausted:
      rep.realizable = "no";
      break;
    case SearchStatus::Budget:
      rep.realizable = "unknown";
      break;
  }
  return rep;
}

void verify_witness(const HolSubgroup& witness, const GroupHandle& target) {
  auto cls = classify_action(witness);
  if (!cls.regular) throw PropertyViolation("witness subgroup is not regular");
  GammaFunction g = gamma_from_regular(witness);
  auto back = regular_from_gamma(g);
  if (std::holds_alternative<GammaReject>(back))
    throw PropertyViolation("witness gamma fails the closure condition");
  const HolSubgroup& rebuilt = std::get<HolSubgroup>(back);
  if (rebuilt.member != witness.member)
    throw PropertyViolation("gamma round-trip changed the subgroup");
  brace_from_regular(witness);
  if (witness.order <= 1000) {
    HolSubgroupView view(witness);
    auto tv = target.view();
    if (!iso_check(view, *tv))
      throw PropertyViolation("witness is not isomorphic to the target");
  }
}

}  // namespace holobrace
