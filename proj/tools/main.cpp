#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "holobrace/json_io.hpp"
#include "holobrace/suite.hpp"

using namespace holobrace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInvalid = 3;

struct CommonFlags {
  uint32_t p = 0;
  uint32_t n = 0;
  std::vector<uint32_t> exponents;
  int family = 0;
  std::string target_arg;
  std::string ambient_arg;
  bool restrict_sylow = true;
  uint64_t max_nodes = UINT64_MAX;
  int threads = 0;
  uint64_t seed = 1;
  std::string json_path;
  bool long_running = false;
  bool no_meta = false;
  int corpus = 100;

  void attach(CLI::App* cmd, bool with_target, bool with_ambient) {
    cmd->add_option("--p", p, "prime p for shorthand specs");
    cmd->add_option("--n", n, "parameter n for family shorthand");
    cmd->add_option("--exponents", exponents, "abelian type exponents")->delimiter(',');
    cmd->add_option("--family", family, "catalog family id (1-5; 6 = order-p^4 fixture)");
    if (with_target) cmd->add_option("--target", target_arg, "target group spec (JSON or file)");
    if (with_ambient)
      cmd->add_option("--ambient", ambient_arg, "ambient abelian group spec (JSON or file)");
    cmd->add_flag("--restrict-sylow,!--no-restrict-sylow", restrict_sylow,
                  "restrict automorphism components to a Sylow p-subgroup (default on)");
    cmd->add_option("--max-nodes", max_nodes, "search node budget");
    cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    cmd->add_option("--seed", seed, "seed for randomized corpora");
    cmd->add_option("--json", json_path, "also write the report to this path");
    cmd->add_flag("--long-running", long_running, "allow jobs expected to exceed ~10 minutes");
    cmd->add_flag("--no-meta", no_meta, "omit the meta block (timestamps etc.)");
    cmd->add_option("--count", corpus, "random corpus size per ambient (lemma-suite)");
  }

  // group named by shorthand flags, or by --target
  GroupHandle resolve_group() const {
    if (!target_arg.empty()) return parse_group_arg(target_arg);
    if (family != 0) {
      if (p == 0) throw InvalidInput("--family needs --p");
      if (family == 6) return GroupHandle::remark(p);
      if (n == 0) throw InvalidInput("--family needs --n");
      return GroupHandle::of(family_presentation(family, p, n));
    }
    if (!exponents.empty()) {
      if (p == 0) throw InvalidInput("--exponents needs --p");
      return GroupHandle::of(AbelianType(p, exponents));
    }
    throw InvalidInput("no group given: use --target, --family or --exponents");
  }

  AbelianType resolve_ambient() const {
    if (ambient_arg.empty()) throw InvalidInput("--ambient is required");
    GroupHandle h = parse_group_arg(ambient_arg);
    if (h.kind != GroupHandle::Kind::Abelian)
      throw InvalidInput("ambient must be an abelian group spec");
    return *h.abelian;
  }
};

void emit(const json& report, const CommonFlags& flags) {
  json out = report;
  if (!flags.no_meta) {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    out["meta"] = json{
        {"tool", "holobrace"},
        {"version", "0.1.0"},
        {"threads", resolve_threads(flags.threads)},
        {"seed", flags.seed},
        {"unix_ms", std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}};
  }
  std::string text = out.dump(2);
  std::cout << text << "\n";
  if (!flags.json_path.empty()) {
    std::ofstream f(flags.json_path);
    f << text << "\n";
  }
}

json info_report(const GroupHandle& g) {
  json out{{"spec", group_spec_json(g)}, {"label", g.label}, {"order", g.order()}};
  if (g.kind == GroupHandle::Kind::Abelian) {
    const AbelianType& t = *g.abelian;
    out["abelian"] = true;
    json stats = json::object();
    for (auto [o, c] : t.order_statistics())
      if (c) stats[std::to_string(o)] = c;
    out["order_statistics"] = stats;
    out["aut_order"] = big_uint(aut_order(t));
    out["hol_order"] = big_uint(hol_order(t));
    out["omega1_order"] = omega1(t).order;
  } else {
    out["abelian"] = false;
    auto view = g.view();
    json stats = json::object();
    for (auto [o, c] : order_statistics(*view)) stats[std::to_string(o)] = c;
    out["order_statistics"] = stats;
    out["derived_order"] = derived_subgroup_order(*view);
    out["center_order"] = center_order(*view);
    if (g.kind == GroupHandle::Kind::Pc)
      out["aut_order"] = big_uint(pc_aut_count(*g.pc));
  }
  return out;
}

int run_verify_nonab(const CommonFlags& flags) {
  GroupHandle src = flags.resolve_group();
  NonabOptions opt;
  opt.threads = flags.threads;
  opt.progress = true;
  if (flags.long_running) opt.scan_budget = 4200000000ull;

  if (src.kind == GroupHandle::Kind::Remark) {
    RemarkGroupView view(src.remark_p);
    uint64_t derived = derived_subgroup_order(view);
    if (!flags.long_running) {
      json out{{"source", group_spec_json(src)},
               {"derived_order", derived},
               {"construction_applicable", derived == src.remark_p},
               {"note", "pass --long-running for the regular-subgroup search and the "
                        "normalizer scan"}};
      emit(out, flags);
      return kExitOk;
    }
    RemarkNegativeReport rep = verify_remark_negative(src.remark_p, opt);
    emit(remark_negative_json(rep), flags);
    // expected outcome: construction inapplicable, witness exists, orders differ
    return (!rep.construction_applicable && rep.witness_found && rep.orders_differ)
               ? kExitOk
               : kExitViolation;
  }

  if (src.kind != GroupHandle::Kind::Pc)
    throw InvalidInput("verify-nonab needs a nonabelian source");
  uint64_t scan = hol_order(derive_abelian_target(*src.pc).target);
  if (scan > 200000000ull && !flags.long_running)
    throw InvalidInput("normalizer scan over " + std::to_string(scan) +
                       " elements needs --long-running");
  NonabReport rep = verify_nonab_theorem(*src.pc, opt);
  emit(nonab_report_json(rep), flags);
  return rep.theorem_holds ? kExitOk : kExitViolation;
}

int run_construct(const CommonFlags& flags) {
  GroupHandle src = flags.resolve_group();
  if (src.kind != GroupHandle::Kind::Pc)
    throw InvalidInput("construct needs a class-2 pc source");
  ConstructionPlan plan = derive_abelian_target(*src.pc);
  PhiFamily phis = build_phi(plan);
  HolSubgroup nprime = build_regular_nprime(plan, phis);
  json phi_json = json::array();
  for (const Mat& m : phis.phis) phi_json.push_back(matrix_json(plan.target, m));
  json out{{"source", group_spec_json(src)},
           {"A", json{{"kind", "abelian"},
                      {"p", plan.target.p()},
                      {"exponents", plan.target.exponents()}}},
           {"case", plan.case_name()},
           {"d", element_json(plan.target, plan.d)},
           {"phi", phi_json},
           {"n_prime", subgroup_witness_json(nprime)}};
  emit(out, flags);
  return kExitOk;
}

int run_search(const CommonFlags& flags) {
  GroupHandle target = flags.resolve_group();
  AbelianType ambient = flags.resolve_ambient();
  SearchOptions opt;
  opt.restrict_sylow = flags.restrict_sylow;
  opt.max_nodes = flags.max_nodes;
  opt.threads = flags.threads;
  opt.seed = flags.seed;
  opt.progress = true;
  if (opt.restrict_sylow) {
    uint64_t space = ambient.order() * sylow_p_of_aut(ambient).elems.size();
    if (space > 2000000ull && !flags.long_running)
      throw InvalidInput("search space of " + std::to_string(space) +
                         " elements needs --long-running");
  }
  RealizabilityReport rep = realizability_report(ambient, target, opt);
  emit(realizability_json(rep, true), flags);
  return rep.realizable == "unknown" ? kExitBudget : kExitOk;
}

int run_enumerate(const CommonFlags& flags, bool classify) {
  AbelianType ambient = flags.resolve_ambient();
  CensusOptions opt;
  opt.restrict_sylow = flags.restrict_sylow;
  opt.threads = flags.threads;
  opt.max_nodes = flags.max_nodes;
  opt.progress = true;
  Census census = enumerate_regular(ambient, opt);

  json out{{"ambient", json{{"kind", "abelian"},
                            {"p", ambient.p()},
                            {"exponents", ambient.exponents()}}},
           {"restricted", census.restricted},
           {"count", census.subs.size()},
           {"nodes", census.nodes}};

  std::map<std::string, uint64_t> by_type;
  bool all_verified = true;
  for (const auto& sub : census.subs) {
    Brace b = brace_from_regular(sub);
    ++by_type[multiplicative_type(b).describe()];
    if (!classify_action(sub).regular) all_verified = false;
  }
  json types = json::object();
  for (auto& [k, v] : by_type) types[k] = v;
  out["by_multiplicative_type"] = types;
  out["all_verified"] = all_verified;

  if (classify) {
    ConjugacyClasses classes =
        classify_conjugacy(ambient, census.subs, census.restricted, resolve_threads(flags.threads));
    json cls = json::array();
    for (size_t i = 0; i < classes.classes.size(); ++i) {
      cls.push_back(json{{"size", classes.classes[i].size()},
                         {"type", type_label_json(classes.types[i])},
                         {"representative",
                          subgroup_witness_json(census.subs[classes.classes[i][0]])}});
    }
    out["class_count"] = classes.classes.size();
    out["classes"] = cls;
  }
  emit(out, flags);
  return all_verified ? kExitOk : kExitViolation;
}

int run_lemma_suite(const CommonFlags& flags) {
  LemmaSuiteOptions opt;
  opt.seed = flags.seed;
  opt.threads = flags.threads;
  opt.corpus_per_ambient = flags.corpus;
  if (!flags.ambient_arg.empty()) opt.ambients.push_back(flags.resolve_ambient());
  LemmaSuiteReport rep = run_lemma_suite(opt);
  json rows = json::array();
  for (const auto& r : rep.lemma6)
    rows.push_back(json{{"ambient", r.ambient},
                        {"sub_order", r.sub_order},
                        {"regular", r.regular},
                        {"pass", r.pass},
                        {"must_pass", r.must_pass}});
  json out{{"corpus_size", rep.corpus_size},
           {"sylow_agreements", rep.sylow_agreements},
           {"sylow_agreement_pass", rep.sylow_agreement_pass},
           {"order_equivalence", rows},
           {"order_equivalence_pass_where_required", rep.lemma6_pass_where_required},
           {"delta_max_index", rep.delta_max_index},
           {"delta_bound_ok", rep.delta_bound_ok},
           {"power_formula_ok", rep.power_formula_ok},
           {"all_pass", rep.all_pass}};
  emit(out, flags);
  return rep.all_pass ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holobrace: regular subgroups of holomorphs, skew braces, and "
               "realizability of p-group pairs"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto* info = app.add_subcommand("info", "group facts: order, statistics, |Aut|");
  flags.attach(info, true, false);
  auto* construct =
      app.add_subcommand("construct", "abelian target A, phi family and the regular N'");
  flags.attach(construct, true, false);
  auto* verify =
      app.add_subcommand("verify-nonab", "full constructive verification incl. normalizer scan");
  flags.attach(verify, true, false);
  auto* search = app.add_subcommand("search", "search a regular subgroup of Hol(ambient) "
                                              "isomorphic to the target");
  flags.attach(search, true, true);
  auto* enumerate = app.add_subcommand("enumerate", "enumerate all regular subgroups");
  flags.attach(enumerate, false, true);
  auto* census =
      app.add_subcommand("census", "enumerate and classify up to Aut(N)-conjugacy");
  flags.attach(census, false, true);
  auto* lemma = app.add_subcommand("lemma-suite", "transitivity and order-equivalence suites");
  flags.attach(lemma, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (info->parsed()) {
      emit(info_report(flags.resolve_group()), flags);
      return kExitOk;
    }
    if (construct->parsed()) return run_construct(flags);
    if (verify->parsed()) return run_verify_nonab(flags);
    if (search->parsed()) return run_search(flags);
    if (enumerate->parsed()) return run_enumerate(flags, false);
    if (census->parsed()) return run_enumerate(flags, true);
    if (lemma->parsed()) return run_lemma_suite(flags);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitInvalid;
}
