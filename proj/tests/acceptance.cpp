// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// The p = 5 order-625 negative instance is gated behind --long-running.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "holobrace/construct.hpp"
#include "holobrace/json_io.hpp"
#include "holobrace/suite.hpp"

using namespace holobrace;

namespace {

int g_threads = 0;
bool g_long_running = false;
int g_failures = 0;

struct Criterion {
  const char* name;
  bool pass = true;
  std::string detail;
  std::chrono::steady_clock::time_point start;

  explicit Criterion(const char* n) : name(n), start(std::chrono::steady_clock::now()) {}
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void finish(bool skipped = false) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    if (skipped) {
      std::printf("SKIP %s (gated by --long-running)\n", name);
    } else if (pass) {
      std::printf("PASS %s (%lld ms)\n", name, static_cast<long long>(ms));
    } else {
      std::printf("FAIL %s (%lld ms): %s\n", name, static_cast<long long>(ms),
                  detail.c_str());
      ++g_failures;
    }
    std::fflush(stdout);
  }
};

// regular subgroups produced anywhere in the run, for criterion 6
std::vector<HolSubgroup> g_registry;
void register_sub(const HolSubgroup& sub) { g_registry.push_back(sub); }

std::vector<HolElement> enumerate_hol(const AbelianType& t) {
  std::vector<HolElement> out;
  t.for_each_aut([&](const Mat& m, uint64_t) {
    for (uint32_t x = 0; x < t.order(); ++x) out.push_back(HolElement{t.unpack(x), m});
    return true;
  });
  return out;
}

// packed multiplication table of Hol(N) for the exhaustive algebra suites
struct HolTable {
  AbelianType t;
  std::vector<HolElement> elems;
  std::unordered_map<uint64_t, uint32_t> index;
  std::vector<uint32_t> mul;

  explicit HolTable(const AbelianType& type) : t(type) {
    elems = enumerate_hol(t);
    uint32_t n = static_cast<uint32_t>(elems.size());
    for (uint32_t i = 0; i < n; ++i) index[hol_key(t, elems[i])] = i;
    mul.resize(size_t(n) * n);
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j)
        mul[size_t(i) * n + j] = index.at(hol_key(t, hol_mul(t, elems[i], elems[j])));
  }
  uint32_t size() const { return static_cast<uint32_t>(elems.size()); }
};

void criterion1() {
  Criterion c("criterion-1 algebra suites on Hol(C9) and Hol(C3xC3)");
  for (const AbelianType& t : {AbelianType(3, {2}), AbelianType(3, {1, 1})}) {
    HolTable H(t);
    uint32_t n = H.size();
    c.require(n == (t.order() == 9 ? 54u : 432u), "|Hol| mismatch");
    // associativity, exhaustive via the table
    bool assoc = true;
    for (uint32_t a = 0; a < n && assoc; ++a)
      for (uint32_t b = 0; b < n && assoc; ++b) {
        uint32_t ab = H.mul[size_t(a) * n + b];
        for (uint32_t d = 0; d < n; ++d)
          if (H.mul[size_t(ab) * n + d] != H.mul[size_t(a) * n + H.mul[size_t(b) * n + d]]) {
            assoc = false;
            break;
          }
      }
    c.require(assoc, "associativity failed on " + t.describe());
    // inverse law
    uint32_t id = H.index.at(hol_key(t, hol_identity(t)));
    for (uint32_t a = 0; a < n; ++a) {
      uint32_t inv = H.index.at(hol_key(t, hol_inv(t, H.elems[a])));
      if (H.mul[size_t(a) * n + inv] != id || H.mul[size_t(inv) * n + a] != id) {
        c.require(false, "inverse law failed");
        break;
      }
    }
    // action law, exhaustive
    bool action = true;
    for (uint32_t a = 0; a < n && action; ++a)
      for (uint32_t b = 0; b < n && action; ++b)
        for (uint32_t y = 0; y < t.order(); ++y) {
          Element ey = t.unpack(y);
          if (!(hol_act(t, H.elems[H.mul[size_t(a) * n + b]], ey) ==
                hol_act(t, H.elems[a], hol_act(t, H.elems[b], ey)))) {
            action = false;
            break;
          }
        }
    c.require(action, "action law failed on " + t.describe());
  }
  // closed-form powers on Hol(C9), all h and all 0 <= k <= 54
  {
    AbelianType t(3, {2});
    for (const auto& h : enumerate_hol(t)) {
      HolElement it = hol_identity(t);
      for (uint64_t k = 0; k <= 54; ++k) {
        if (!(hol_pow(t, h, k) == it) || !(hol_pow_closed_form(t, h, k) == it)) {
          c.require(false, "power formula failed");
          break;
        }
        it = hol_mul(t, it, h);
      }
    }
  }
  c.finish();
}

void criterion2() {
  Criterion c("criterion-2 transitivity iff Sylow transitivity on 210 random subgroups");
  SplitMix64 rng(0x6c656d6d6135ull);
  uint64_t corpus = 0;
  for (const AbelianType& t :
       {AbelianType(3, {2}), AbelianType(3, {1, 1}), AbelianType(3, {3})}) {
    AutPool pool = full_aut_pool(t);
    uint64_t hol = hol_order(t);
    for (int it = 0; it < 70; ++it) {
      std::vector<HolElement> gens;
      int m = 1 + static_cast<int>(rng.below(3));
      for (int k = 0; k < m; ++k)
        gens.push_back(HolElement{t.unpack(static_cast<uint32_t>(rng.below(t.order()))),
                                  pool.elems[rng.below(pool.elems.size())]});
      HolSubgroup sub = subgroup_closure(t, gens, hol);
      ++corpus;
      if (classify_action(sub).transitive != transitive_via_sylow(sub)) {
        c.require(false, "disagreement on " + t.describe());
        break;
      }
    }
  }
  c.require(corpus >= 200, "corpus too small");
  c.finish();
}

void criterion3(std::ostringstream* report) {
  Criterion c("criterion-3 constructive verification with exact normalizer orders");
  struct Inst {
    int family;
    uint32_t p, n;
  };
  for (Inst inst : {Inst{1, 3, 3}, Inst{1, 5, 3}, Inst{2, 3, 2}, Inst{3, 3, 2},
                    Inst{4, 3, 2}, Inst{5, 3, 2}}) {
    NonabOptions opt;
    opt.threads = g_threads;
    NonabReport rep = verify_nonab_theorem(family_presentation(inst.family, inst.p, inst.n), opt);
    std::ostringstream label;
    label << "family" << inst.family << "(" << inst.p << "," << inst.n << ")";
    c.require(rep.theorem_holds, label.str() + " failed");
    c.require(rep.normalizer_order == rep.hol_nprime_order,
              label.str() + " normalizer order mismatch");
    if (report)
      *report << label.str() << ": normalizer=" << rep.normalizer_order
              << " |N||Aut(N)|=" << rep.hol_nprime_order << " aut=" << rep.aut_n_order
              << "\n";
  }
  c.finish();
}

void criterion4(std::ostringstream* report) {
  Criterion c("criterion-4 order-81 mixing structures found by search");
  SearchOptions opt;
  opt.threads = g_threads;

  // (a) C9 x C3 x C3 inside Hol(C9 x C9)
  SearchOutcome a = search_regular(AbelianType(3, {2, 2}),
                                   GroupHandle::of(AbelianType(3, {2, 1, 1})), opt);
  c.require(a.status == SearchStatus::Found, "(a) not found");

  // (b) C9 x C3 x C3 inside Hol(C3^4), pool of size 3^6 = 729
  SearchOutcome b = search_regular(AbelianType(3, {1, 1, 1, 1}),
                                   GroupHandle::of(AbelianType(3, {2, 1, 1})), opt);
  c.require(b.status == SearchStatus::Found, "(b) not found");
  c.require(b.cert.pool_size == 729, "(b) pool size is not 729");

  // (c) C3^4 inside Hol(C9 x C3 x C3)
  SearchOutcome d = search_regular(AbelianType(3, {2, 1, 1}),
                                   GroupHandle::of(AbelianType(3, {1, 1, 1, 1})), opt);
  c.require(d.status == SearchStatus::Found, "(c) not found");

  for (const SearchOutcome* out : {&a, &b, &d})
    if (out->witness) register_sub(*out->witness);

  // the multiplicative types of the extracted braces
  if (a.witness)
    c.require(multiplicative_type(brace_from_regular(*a.witness)).describe() ==
                  "abelian [2,1,1]",
              "(a) wrong multiplicative type");
  if (b.witness)
    c.require(multiplicative_type(brace_from_regular(*b.witness)).describe() ==
                  "abelian [2,1,1]",
              "(b) wrong multiplicative type");
  if (d.witness)
    c.require(multiplicative_type(brace_from_regular(*d.witness)).describe() ==
                  "abelian [1,1,1,1]",
              "(c) wrong multiplicative type");

  // the witness in Hol(C3^4) must violate the order equivalence: an
  // element of order 9 sits over a point of order 3 (p = 3 < n = 4)
  if (b.witness) {
    auto lr = lemma_order_check(*b.witness);
    c.require(!lr.pass, "order equivalence unexpectedly holds at p < n");
  }
  if (report && a.witness && b.witness && d.witness)
    *report << "c4 nodes: " << a.cert.nodes << " " << b.cert.nodes << " "
            << d.cert.nodes << "\n";
  c.finish();
}

void criterion5(std::ostringstream* report) {
  Criterion c("criterion-5 exhaustive censuses at order 125 (p=5 > n=3)");
  CensusOptions copt;
  copt.threads = g_threads;
  SearchOptions sopt;
  sopt.threads = g_threads;

  std::vector<AbelianType> ambients = {AbelianType(5, {1, 1, 1}), AbelianType(5, {2, 1}),
                                       AbelianType(5, {3})};
  for (const AbelianType& t : ambients) {
    Census census = enumerate_regular(t, copt);
    c.require(!census.subs.empty(), "empty census for " + t.describe());
    std::vector<uint32_t> amb_exps = t.exponents();
    for (const auto& sub : census.subs) {
      register_sub(sub);
      auto lr = lemma_order_check(sub);
      if (!lr.pass) {
        c.require(false, "order equivalence failed inside " + t.describe());
        break;
      }
      Brace b = brace_from_regular(sub);
      TypeLabel lab = multiplicative_type(b);
      if (lab.kind == TypeLabel::Kind::Abelian && lab.abelian_exponents != amb_exps) {
        c.require(false, "abelian member of unexpected type in " + t.describe());
        break;
      }
    }
    if (report)
      *report << "census " << t.describe() << ": " << census.subs.size()
              << " subgroups, " << census.nodes << " nodes\n";
  }

  // cross searches must be exhausted
  for (size_t i = 0; i < ambients.size(); ++i)
    for (size_t j = 0; j < ambients.size(); ++j) {
      if (i == j) continue;
      SearchOutcome out = search_regular(ambients[i], GroupHandle::of(ambients[j]), sopt);
      c.require(out.status == SearchStatus::Exhausted,
                ambients[j].describe() + " in Hol(" + ambients[i].describe() +
                    ") not exhausted");
      if (report)
        *report << "search " << ambients[j].describe() << " in Hol("
                << ambients[i].describe() << "): nodes=" << out.cert.nodes << "\n";
    }
  c.finish();
}

void criterion6() {
  Criterion c("criterion-6 braces from every regular subgroup in the run");
  // every collected witness: verified brace + gamma round-trip
  for (const auto& sub : g_registry) {
    try {
      Brace b = brace_from_regular(sub);
      GammaFunction g = gamma_from_regular(sub);
      auto back = regular_from_gamma(g);
      if (!std::holds_alternative<HolSubgroup>(back) ||
          std::get<HolSubgroup>(back).member != sub.member) {
        c.require(false, "gamma round-trip failed");
        break;
      }
    } catch (const PropertyViolation& e) {
      c.require(false, std::string("brace verification failed: ") + e.what());
      break;
    }
  }
  c.require(!g_registry.empty(), "no registered subgroups");

  // lambda yields the trivial brace for every abelian type of order <= 81
  std::vector<AbelianType> types;
  for (uint32_t p : {3u, 5u, 7u}) {
    types.push_back(AbelianType(p, {1}));
    if (p * p <= 81) {
      types.push_back(AbelianType(p, {2}));
      types.push_back(AbelianType(p, {1, 1}));
    }
  }
  for (uint32_t p : {11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u, 53u, 59u,
                     61u, 67u, 71u, 73u, 79u})
    types.push_back(AbelianType(p, {1}));
  types.push_back(AbelianType(3, {3}));
  types.push_back(AbelianType(3, {2, 1}));
  types.push_back(AbelianType(3, {1, 1, 1}));
  types.push_back(AbelianType(3, {4}));
  types.push_back(AbelianType(3, {3, 1}));
  types.push_back(AbelianType(3, {2, 2}));
  types.push_back(AbelianType(3, {2, 1, 1}));
  types.push_back(AbelianType(3, {1, 1, 1, 1}));
  for (const AbelianType& t : types) {
    std::vector<HolElement> gens;
    for (int i = 0; i < t.rank(); ++i)
      gens.push_back(HolElement{t.basis(i), t.mat_identity()});
    HolSubgroup lambda = subgroup_closure(t, gens, t.order());
    Brace b = brace_from_regular(lambda);
    if (!b.is_trivial()) {
      c.require(false, "lambda brace not trivial on " + t.describe());
      break;
    }
  }
  c.finish();
}

void criterion7() {
  Criterion c("criterion-7 order statistics of A match N on all fixtures");
  PcPresentation m = m27();
  auto stats = pc_order_statistics(m);
  c.require(stats == std::map<uint64_t, uint64_t>{{1, 1}, {3, 8}, {9, 18}},
            "M27 statistics wrong");
  for (const PcPresentation& pres :
       {m27(), family_presentation(1, 5, 3), family_presentation(2, 3, 2),
        family_presentation(3, 3, 2), family_presentation(4, 3, 2),
        family_presentation(5, 3, 2)}) {
    ConstructionPlan plan = derive_abelian_target(pres);
    std::map<uint64_t, uint64_t> a_stats;
    for (auto [o, cnt] : plan.target.order_statistics())
      if (cnt) a_stats[o] = cnt;
    if (a_stats != pc_order_statistics(pres)) {
      c.require(false, "mismatch for " + pres.label());
      break;
    }
  }
  c.finish();
}

void criterion8() {
  Criterion c("criterion-8 p=5 order-625 negative instance");
  if (!g_long_running) {
    c.finish(true);
    return;
  }
  NonabOptions opt;
  opt.threads = g_threads;
  opt.scan_budget = 4200000000ull;
  opt.progress = true;
  RemarkNegativeReport rep = verify_remark_negative(5, opt);
  c.require(rep.derived_order == 25, "derived subgroup order is not 25");
  c.require(!rep.construction_applicable, "construction unexpectedly applicable");
  c.require(rep.witness_found, "no regular copy of N found in Hol(C25 x C5 x C5)");
  c.require(rep.orders_differ, "normalizer order equals |Hol(N)| unexpectedly");
  std::printf("  normalizer=%llu vs |N||Aut(N)|=%llu\n",
              static_cast<unsigned long long>(rep.normalizer_order),
              static_cast<unsigned long long>(rep.hol_n_order));
  c.finish();
}

void criterion9() {
  Criterion c("criterion-9 determinism across threads and seeds");
  // criterion 3 rerun: the two cheapest instances under both configs
  for (int threads : {1, 8}) {
    NonabOptions opt;
    opt.threads = threads;
    NonabReport rep = verify_nonab_theorem(m27(), opt);
    c.require(rep.normalizer_order == 1458, "normalizer scan not thread independent");
  }
  // criterion 4 rerun: search (a) with threads 1/8 and different seeds
  SearchOutcome base;
  {
    SearchOptions o;
    o.threads = 1;
    o.seed = 1;
    base = search_regular(AbelianType(3, {2, 2}), GroupHandle::of(AbelianType(3, {2, 1, 1})), o);
  }
  {
    SearchOptions o;
    o.threads = 8;
    o.seed = 2;
    SearchOutcome other =
        search_regular(AbelianType(3, {2, 2}), GroupHandle::of(AbelianType(3, {2, 1, 1})), o);
    c.require(base.status == other.status, "search status depends on configuration");
    c.require(base.cert.nodes == other.cert.nodes, "node count depends on configuration");
    c.require(base.witness && other.witness && base.witness->member == other.witness->member,
              "witness depends on configuration");
  }
  // criterion 5 rerun: census and one exhausted search on each ambient
  for (const AbelianType& t : {AbelianType(5, {1, 1, 1}), AbelianType(5, {2, 1}),
                               AbelianType(5, {3})}) {
    CensusOptions c1;
    c1.threads = 1;
    CensusOptions c8;
    c8.threads = 8;
    Census a = enumerate_regular(t, c1);
    Census b = enumerate_regular(t, c8);
    c.require(a.nodes == b.nodes, "census nodes depend on threads");
    c.require(a.subs.size() == b.subs.size(), "census size depends on threads");
    bool same = a.subs.size() == b.subs.size();
    for (size_t i = 0; same && i < a.subs.size(); ++i)
      if (!(a.subs[i].member == b.subs[i].member)) same = false;
    c.require(same, "census order depends on threads");
  }
  {
    SearchOptions o1;
    o1.threads = 1;
    o1.seed = 7;
    SearchOptions o8;
    o8.threads = 8;
    o8.seed = 8;
    SearchOutcome a =
        search_regular(AbelianType(5, {1, 1, 1}), GroupHandle::of(AbelianType(5, {3})), o1);
    SearchOutcome b =
        search_regular(AbelianType(5, {1, 1, 1}), GroupHandle::of(AbelianType(5, {3})), o8);
    c.require(a.status == SearchStatus::Exhausted && b.status == SearchStatus::Exhausted,
              "exhaustion status unstable");
    c.require(a.cert.nodes == b.cert.nodes, "exhaustion certificate unstable");
  }
  c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--long-running") == 0) g_long_running = true;
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) g_threads = std::atoi(argv[++i]);
  }
  std::ostringstream report;
  criterion1();
  criterion2();
  criterion3(&report);
  criterion4(&report);
  criterion5(&report);
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("---\n%s", report.str().c_str());
  if (g_failures == 0)
    std::printf("ALL ACCEPTANCE CRITERIA PASSED\n");
  else
    std::printf("%d ACCEPTANCE CRITERIA FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
