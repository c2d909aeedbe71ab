#include "holobrace/json_io.hpp"

#include <fstream>

namespace holobrace {

GroupHandle parse_group_spec(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind"))
    throw InvalidInput("group spec must be an object with a \"kind\"");
  std::string kind = spec.at("kind").get<std::string>();
  if (kind == "abelian") {
    return GroupHandle::of(AbelianType(spec.at("p").get<uint32_t>(),
                                       spec.at("exponents").get<std::vector<uint32_t>>()));
  }
  if (kind == "pc") {
    return GroupHandle::of(PcPresentation(
        spec.at("p").get<uint32_t>(), spec.at("gen_orders").get<std::vector<uint32_t>>(),
        spec.at("power_tails").get<std::vector<uint32_t>>(),
        spec.at("comm").get<std::vector<std::vector<uint32_t>>>()));
  }
  if (kind == "family") {
    int id = spec.at("id").get<int>();
    uint32_t p = spec.at("p").get<uint32_t>();
    if (id == 6) return GroupHandle::remark(p);
    uint32_t n = spec.at("n").get<uint32_t>();
    return GroupHandle::of(family_presentation(id, p, n));
  }
  if (kind == "remark") return GroupHandle::remark(spec.at("p").get<uint32_t>());
  throw InvalidInput("unknown group kind: " + kind);
}

GroupHandle parse_group_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg.front() != '{') {
    std::ifstream in(arg);
    if (!in) throw InvalidInput("cannot open group spec file: " + arg);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("bad group spec JSON: ") + e.what());
  }
  return parse_group_spec(spec);
}

json group_spec_json(const GroupHandle& g) {
  switch (g.kind) {
    case GroupHandle::Kind::Abelian:
      return json{{"kind", "abelian"}, {"p", g.abelian->p()},
                  {"exponents", g.abelian->exponents()}};
    case GroupHandle::Kind::Pc:
      return json{{"kind", "pc"},
                  {"p", g.pc->p()},
                  {"gen_orders", g.pc->gen_orders()},
                  {"power_tails", g.pc->power_tails()},
                  {"comm", g.pc->comm_table()},
                  {"label", g.pc->label()}};
    case GroupHandle::Kind::Remark:
      return json{{"kind", "remark"}, {"p", g.remark_p}};
  }
  throw InvalidInput("bad group handle");
}

json element_json(const AbelianType& t, const Element& x) {
  json arr = json::array();
  for (int i = 0; i < t.rank(); ++i) arr.push_back(x.c[i]);
  return arr;
}

json matrix_json(const AbelianType& t, const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < t.rank(); ++i) {
    json row = json::array();
    for (int j = 0; j < t.rank(); ++j) row.push_back(m.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

json hol_element_json(const AbelianType& t, const HolElement& h) {
  return json{{"point", element_json(t, h.pt)}, {"matrix", matrix_json(t, h.aut)}};
}

json subgroup_witness_json(const HolSubgroup& sub) {
  json gens = json::array();
  for (const auto& g : sub.gens) gens.push_back(hol_element_json(sub.ambient, g));
  auto cls = classify_action(sub);
  auto stab = stabilizer_of_identity(sub);
  return json{{"ambient", json{{"kind", "abelian"},
                               {"p", sub.ambient.p()},
                               {"exponents", sub.ambient.exponents()}}},
              {"generators", gens},
              {"order", sub.order},
              {"transitive", cls.transitive},
              {"regular", cls.regular},
              {"stabilizer_order", stab.order}};
}

json brace_json(const Brace& b) {
  const AbelianType& t = b.ambient;
  std::vector<json> mats;
  std::map<uint64_t, size_t> code_to_idx;
  json gamma = json::array();
  for (const auto& m : b.gamma.table) {
    uint64_t code = t.mat_code(m);
    auto it = code_to_idx.find(code);
    size_t idx;
    if (it == code_to_idx.end()) {
      idx = mats.size();
      code_to_idx[code] = idx;
      mats.push_back(matrix_json(t, m));
    } else {
      idx = it->second;
    }
    gamma.push_back(idx);
  }
  return json{{"additive",
               json{{"kind", "abelian"}, {"p", t.p()}, {"exponents", t.exponents()}}},
              {"gamma", gamma},
              {"aut_elements", mats},
              {"multiplicative_type", type_label_json(multiplicative_type(b))}};
}

json type_label_json(const TypeLabel& label) {
  json out{{"label", label.describe()}};
  switch (label.kind) {
    case TypeLabel::Kind::Abelian:
      out["kind"] = "abelian";
      out["exponents"] = label.abelian_exponents;
      break;
    case TypeLabel::Kind::Family:
      out["kind"] = "family";
      out["id"] = label.family;
      out["p"] = label.p;
      out["n"] = label.n;
      break;
    case TypeLabel::Kind::Fingerprint: {
      out["kind"] = "fingerprint";
      out["order"] = label.order;
      out["exponent"] = label.exponent;
      out["center"] = label.center;
      out["derived"] = label.derived;
      json stats = json::object();
      for (auto [o, c] : label.stats) stats[std::to_string(o)] = c;
      out["order_statistics"] = stats;
      break;
    }
  }
  return out;
}

json certificate_json(const SearchCertificate& cert) {
  return json{{"space", cert.space},
              {"reduction", cert.reduction},
              {"nodes", cert.nodes},
              {"restricted", cert.restricted},
              {"pool_size", cert.pool_size}};
}

json nonab_report_json(const NonabReport& rep) {
  return json{{"source", rep.source_label},
              {"A", rep.target_desc},
              {"case", rep.case_name},
              {"checks",
               json{{"regular", rep.regular},
                    {"isomorphic_to_N", rep.isomorphic_to_n},
                    {"order_stats_match", rep.order_stats_match},
                    {"d_central", rep.d_central},
                    {"conjugation_law", rep.conjugation_law},
                    {"ambient_normalizes", rep.ambient_normalizes}}},
              {"aut_N_order", big_uint(rep.aut_n_order)},
              {"normalizer_order", big_uint(rep.normalizer_order)},
              {"hol_order", big_uint(rep.hol_nprime_order)},
              {"theorem_holds", rep.theorem_holds}};
}

json remark_negative_json(const RemarkNegativeReport& rep) {
  return json{{"p", rep.p},
              {"derived_order", rep.derived_order},
              {"construction_applicable", rep.construction_applicable},
              {"witness_found", rep.witness_found},
              {"search_nodes", rep.search_nodes},
              {"aut_N_order", big_uint(rep.aut_n_order)},
              {"normalizer_order", big_uint(rep.normalizer_order)},
              {"hol_order", big_uint(rep.hol_n_order)},
              {"orders_differ", rep.orders_differ}};
}

json realizability_json(const RealizabilityReport& rep, bool include_brace) {
  json out{{"pair", json{{"target", rep.target_label}, {"ambient", rep.ambient_label}}},
           {"realizable", rep.realizable == "yes" ? json(true)
                          : rep.realizable == "no" ? json(false)
                                                   : json("unknown")},
           {"certificate", certificate_json(rep.cert)}};
  if (rep.witness) {
    out["witness"] = subgroup_witness_json(*rep.witness);
    if (include_brace) out["brace"] = brace_json(brace_from_regular(*rep.witness));
  }
  return out;
}

}  // namespace holobrace
