#include "holobrace/group_view.hpp"

#include <algorithm>
#include <unordered_set>

namespace holobrace {

TableGroup::TableGroup(const GroupView& g)
    : n_(g.order()), id_(g.id()), name_(g.name()) {
  if (n_ > 5000) throw BudgetExceeded("multiplication table too large: " + std::to_string(n_));
  table_.resize(static_cast<size_t>(n_) * n_);
  inv_.resize(n_);
  for (uint32_t a = 0; a < n_; ++a)
    for (uint32_t b = 0; b < n_; ++b) table_[a * n_ + b] = g.mul(a, b);
  for (uint32_t a = 0; a < n_; ++a) inv_[a] = g.inv(a);
}

uint64_t element_order(const GroupView& g, uint32_t a) {
  uint64_t k = 1;
  uint32_t cur = a;
  while (cur != g.id()) {
    cur = g.mul(cur, a);
    ++k;
    if (k > g.order()) throw PropertyViolation("element order exceeds group order");
  }
  return k;
}

std::map<uint64_t, uint64_t> order_statistics(const GroupView& g) {
  std::map<uint64_t, uint64_t> stats;
  for (uint32_t a = 0; a < g.order(); ++a) ++stats[element_order(g, a)];
  return stats;
}

bool is_abelian(const GroupView& g) {
  for (uint32_t a = 0; a < g.order(); ++a)
    for (uint32_t b = a + 1; b < g.order(); ++b)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

uint64_t center_order(const GroupView& g) {
  uint64_t c = 0;
  for (uint32_t a = 0; a < g.order(); ++a) {
    bool central = true;
    for (uint32_t b = 0; b < g.order() && central; ++b)
      if (g.mul(a, b) != g.mul(b, a)) central = false;
    if (central) ++c;
  }
  return c;
}

std::vector<uint32_t> closure(const GroupView& g, std::vector<uint32_t> seed) {
  std::vector<bool> in(g.order(), false);
  std::vector<uint32_t> out;
  auto push = [&](uint32_t x) {
    if (!in[x]) {
      in[x] = true;
      out.push_back(x);
    }
  };
  push(g.id());
  std::vector<uint32_t> gens;
  for (uint32_t s : seed) {
    if (!in[s]) gens.push_back(s);
    push(s);
  }
  for (size_t head = 0; head < out.size(); ++head)
    for (uint32_t s : gens) push(g.mul(out[head], s));
  return out;
}

uint64_t derived_subgroup_order(const GroupView& g) {
  std::unordered_set<uint32_t> comms;
  for (uint32_t a = 0; a < g.order(); ++a)
    for (uint32_t b = 0; b < g.order(); ++b)
      comms.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
  return closure(g, std::vector<uint32_t>(comms.begin(), comms.end())).size();
}

std::vector<uint32_t> generating_sequence(const GroupView& g) {
  std::vector<uint32_t> idx(g.order());
  std::vector<uint64_t> ord(g.order());
  for (uint32_t a = 0; a < g.order(); ++a) {
    idx[a] = a;
    ord[a] = element_order(g, a);
  }
  std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
    return ord[a] != ord[b] ? ord[a] > ord[b] : a < b;
  });
  std::vector<uint32_t> gens;
  std::vector<bool> in(g.order(), false);
  in[g.id()] = true;
  size_t covered = 1;
  for (uint32_t cand : idx) {
    if (covered == g.order()) break;
    if (in[cand]) continue;
    gens.push_back(cand);
    auto cl = closure(g, gens);
    covered = cl.size();
    std::fill(in.begin(), in.end(), false);
    for (uint32_t x : cl) in[x] = true;
  }
  return gens;
}

namespace {

struct IsoSearch {
  const TableGroup& a;
  const TableGroup& b;
  std::vector<uint32_t> gens;          // generating sequence of a
  std::vector<uint64_t> gen_orders;    // orders of those generators in a
  std::vector<std::vector<uint32_t>> cand;  // per-level candidate images in b

  // partial state
  std::vector<uint32_t> img;      // a-index -> b-index, UINT32_MAX if unset
  std::vector<bool> used;         // b-index already an image
  std::vector<uint32_t> dom;      // current closure of assigned generators, BFS order

  uint64_t leaves = 0;
  bool count_all = false;
  std::optional<IsoWitness> witness;
  std::vector<uint32_t> chosen;

  IsoSearch(const TableGroup& a_, const TableGroup& b_) : a(a_), b(b_) {}

  // Extends img over <g_1..g_i, new gen>, checking consistency of every
  // (element, generator) product. Returns the list of newly mapped
  // a-elements so the caller can roll back, or nullopt on contradiction.
  std::optional<std::vector<uint32_t>> extend(uint32_t gen, uint32_t image, size_t level) {
    std::vector<uint32_t> added;
    auto assign = [&](uint32_t x, uint32_t y) {
      if (img[x] != UINT32_MAX) return img[x] == y;
      if (used[y]) return false;  // injectivity
      img[x] = y;
      used[y] = true;
      added.push_back(x);
      dom.push_back(x);
      return true;
    };
    size_t dom_start = dom.size();
    bool ok = assign(gen, image);
    // rescan the whole domain: old elements times the new generator, and
    // new elements times every assigned generator
    for (size_t head = 0; ok && head < dom.size(); ++head) {
      uint32_t x = dom[head];
      for (size_t j = 0; j <= level && ok; ++j) {
        uint32_t gx = a.mul(x, gens[j]);
        uint32_t gy = b.mul(img[x], img[gens[j]]);
        if (head < dom_start && j < level) continue;  // already verified
        ok = assign(gx, gy);
      }
    }
    if (ok) return added;
    for (uint32_t x : added) {
      used[img[x]] = false;
      img[x] = UINT32_MAX;
    }
    dom.resize(dom_start);
    return std::nullopt;
  }

  void rollback(const std::vector<uint32_t>& added, size_t dom_start) {
    for (uint32_t x : added) {
      used[img[x]] = false;
      img[x] = UINT32_MAX;
    }
    dom.resize(dom_start);
  }

  bool recurse(size_t level) {
    if (level == gens.size()) {
      ++leaves;
      if (!count_all && !witness) {
        IsoWitness w;
        w.gen_images = chosen;
        w.map = img;
        witness = w;
      }
      return !count_all;
    }
    for (uint32_t candidate : cand[level]) {
      size_t dom_start = dom.size();
      auto added = extend(gens[level], candidate, level);
      if (!added) continue;
      chosen.push_back(candidate);
      bool done = recurse(level + 1);
      chosen.pop_back();
      rollback(*added, dom_start);
      if (done) return true;
    }
    return false;
  }
};

bool invariants_match(const GroupView& a, const GroupView& b) {
  if (a.order() != b.order()) return false;
  if (order_statistics(a) != order_statistics(b)) return false;
  bool ab_a = is_abelian(a), ab_b = is_abelian(b);
  if (ab_a != ab_b) return false;
  if (!ab_a) {
    if (center_order(a) != center_order(b)) return false;
    if (derived_subgroup_order(a) != derived_subgroup_order(b)) return false;
  }
  return true;
}

std::optional<IsoWitness> run_iso(const TableGroup& ta, const TableGroup& tb, bool count_all,
                                  uint64_t* leaves_out) {
  IsoSearch s(ta, tb);
  s.count_all = count_all;
  s.gens = generating_sequence(ta);
  s.gen_orders.reserve(s.gens.size());
  for (uint32_t g : s.gens) s.gen_orders.push_back(element_order(ta, g));

  std::vector<uint64_t> b_orders(tb.order());
  for (uint32_t x = 0; x < tb.order(); ++x) b_orders[x] = element_order(tb, x);
  s.cand.resize(s.gens.size());
  for (size_t i = 0; i < s.gens.size(); ++i)
    for (uint32_t x = 0; x < tb.order(); ++x)
      if (b_orders[x] == s.gen_orders[i]) s.cand[i].push_back(x);

  s.img.assign(ta.order(), UINT32_MAX);
  s.used.assign(tb.order(), false);
  s.img[ta.id()] = tb.id();
  s.used[tb.id()] = true;
  s.dom.push_back(ta.id());
  s.recurse(0);
  if (leaves_out) *leaves_out = s.leaves;
  return s.witness;
}

}  // namespace

std::optional<IsoWitness> iso_check(const GroupView& a, const GroupView& b) {
  if (!invariants_match(a, b)) return std::nullopt;
  TableGroup ta(a), tb(b);
  auto w = run_iso(ta, tb, false, nullptr);
  if (w) {
    // paranoid full verification: bijective homomorphism on all pairs
    std::vector<bool> seen(tb.order(), false);
    for (uint32_t x = 0; x < ta.order(); ++x) {
      if (w->map[x] == UINT32_MAX || seen[w->map[x]])
        throw PropertyViolation("iso witness is not a bijection");
      seen[w->map[x]] = true;
    }
    for (uint32_t x = 0; x < ta.order(); ++x)
      for (uint32_t y = 0; y < ta.order(); ++y)
        if (w->map[ta.mul(x, y)] != tb.mul(w->map[x], w->map[y]))
          throw PropertyViolation("iso witness is not a homomorphism");
  }
  return w;
}

uint64_t automorphism_count(const GroupView& g) {
  TableGroup t(g);
  uint64_t leaves = 0;
  run_iso(t, t, true, &leaves);
  return leaves;
}

}  // namespace holobrace
