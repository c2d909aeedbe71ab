#include <pybind11/pybind11.h>

#include "holobrace/json_io.hpp"
#include "holobrace/suite.hpp"

namespace py = pybind11;
using namespace holobrace;

namespace {

// Reports cross the boundary as JSON strings; the package wraps them into
// dicts so the schemas stay identical to the CLI's.
std::string info_json(const std::string& spec) {
  GroupHandle g = parse_group_arg(spec);
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
  } else {
    out["abelian"] = false;
    auto view = g.view();
    json stats = json::object();
    for (auto [o, c] : order_statistics(*view)) stats[std::to_string(o)] = c;
    out["order_statistics"] = stats;
    out["derived_order"] = derived_subgroup_order(*view);
    if (g.kind == GroupHandle::Kind::Pc) out["aut_order"] = big_uint(pc_aut_count(*g.pc));
  }
  return out.dump();
}

std::string search_json(const std::string& target, const std::string& ambient,
                        bool restrict_sylow, int threads, uint64_t max_nodes) {
  GroupHandle tg = parse_group_arg(target);
  GroupHandle am = parse_group_arg(ambient);
  if (am.kind != GroupHandle::Kind::Abelian)
    throw InvalidInput("ambient must be abelian");
  SearchOptions opt;
  opt.restrict_sylow = restrict_sylow;
  opt.threads = threads;
  opt.max_nodes = max_nodes;
  RealizabilityReport rep = realizability_report(*am.abelian, tg, opt);
  return realizability_json(rep, true).dump();
}

std::string verify_nonab_json(const std::string& source, int threads) {
  GroupHandle src = parse_group_arg(source);
  if (src.kind != GroupHandle::Kind::Pc)
    throw InvalidInput("verify_nonab needs a class-2 pc source");
  NonabOptions opt;
  opt.threads = threads;
  return nonab_report_json(verify_nonab_theorem(*src.pc, opt)).dump();
}

std::string census_json(const std::string& ambient, bool restrict_sylow, bool classify,
                        int threads) {
  GroupHandle am = parse_group_arg(ambient);
  if (am.kind != GroupHandle::Kind::Abelian)
    throw InvalidInput("ambient must be abelian");
  const AbelianType& t = *am.abelian;
  CensusOptions opt;
  opt.restrict_sylow = restrict_sylow;
  opt.threads = threads;
  Census census = enumerate_regular(t, opt);
  json out{{"ambient", group_spec_json(am)},
           {"restricted", census.restricted},
           {"count", census.subs.size()},
           {"nodes", census.nodes}};
  std::map<std::string, uint64_t> by_type;
  for (const auto& sub : census.subs)
    ++by_type[multiplicative_type(brace_from_regular(sub)).describe()];
  json types = json::object();
  for (auto& [k, v] : by_type) types[k] = v;
  out["by_multiplicative_type"] = types;
  if (classify) {
    ConjugacyClasses classes = classify_conjugacy(t, census.subs, census.restricted, threads);
    out["class_count"] = classes.classes.size();
    json cls = json::array();
    for (size_t i = 0; i < classes.classes.size(); ++i)
      cls.push_back(json{{"size", classes.classes[i].size()},
                         {"type", type_label_json(classes.types[i])}});
    out["classes"] = cls;
  }
  return out.dump();
}

std::string lemma_suite_json(int corpus, uint64_t seed, int threads) {
  LemmaSuiteOptions opt;
  opt.corpus_per_ambient = corpus;
  opt.seed = seed;
  opt.threads = threads;
  LemmaSuiteReport rep = run_lemma_suite(opt);
  return json{{"corpus_size", rep.corpus_size},
              {"sylow_agreements", rep.sylow_agreements},
              {"sylow_agreement_pass", rep.sylow_agreement_pass},
              {"delta_max_index", rep.delta_max_index},
              {"delta_bound_ok", rep.delta_bound_ok},
              {"power_formula_ok", rep.power_formula_ok},
              {"all_pass", rep.all_pass}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Regular subgroups of holomorphs of finite abelian p-groups, skew "
            "braces, and realizability searches.";

  py::register_exception<InvalidInput>(m, "InvalidInput");
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded");

  m.def("info", &info_json, py::arg("spec"),
        "Group facts (order, order statistics, |Aut|) as a JSON string.");
  m.def("search", &search_json, py::arg("target"), py::arg("ambient"),
        py::arg("restrict_sylow") = true, py::arg("threads") = 0,
        py::arg("max_nodes") = UINT64_MAX,
        "Search a regular subgroup of Hol(ambient) isomorphic to the target.");
  m.def("verify_nonab", &verify_nonab_json, py::arg("source"), py::arg("threads") = 0,
        "Derive the abelian target, build N' and verify the normalizer equality.");
  m.def("census", &census_json, py::arg("ambient"), py::arg("restrict_sylow") = true,
        py::arg("classify") = true, py::arg("threads") = 0,
        "Enumerate all regular subgroups; optionally classify up to conjugacy.");
  m.def("lemma_suite", &lemma_suite_json, py::arg("corpus") = 60, py::arg("seed") = 1,
        py::arg("threads") = 0, "Transitivity and power-formula property suites.");
  m.attr("__version__") = "0.1.0";
}
