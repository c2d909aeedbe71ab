#pragma once

#include <json.hpp>

#include "construct.hpp"

namespace holobrace {

using nlohmann::json;

// Group specs:
//   {"kind":"abelian","p":3,"exponents":[2,1,1]}
//   {"kind":"pc","p":3,"gen_orders":[3,3],"power_tails":[1,0],"comm":[[0,2],[1,0]]}
//   {"kind":"family","id":1,"p":3,"n":3}   (id 6 = the order-p^4 negative fixture)
//   {"kind":"remark","p":5}
GroupHandle parse_group_spec(const json& spec);
// Accepts inline JSON or a path to a file containing it.
GroupHandle parse_group_arg(const std::string& arg);
json group_spec_json(const GroupHandle& g);

json element_json(const AbelianType& t, const Element& x);
json matrix_json(const AbelianType& t, const Mat& m);
json hol_element_json(const AbelianType& t, const HolElement& h);

// {"ambient": <spec>, "generators": [{"point":[...],"matrix":[[...]]}], ...}
json subgroup_witness_json(const HolSubgroup& sub);

// {"additive": <spec>, "gamma": [aut index per element],
//  "aut_elements": [...], "multiplicative_type": ...}
json brace_json(const Brace& b);

json type_label_json(const TypeLabel& label);
json certificate_json(const SearchCertificate& cert);
json nonab_report_json(const NonabReport& rep);
json remark_negative_json(const RemarkNegativeReport& rep);
json realizability_json(const RealizabilityReport& rep, bool include_brace);

// |Hol|-scale counters go out as decimal strings.
inline json big_uint(uint64_t v) { return std::to_string(v); }

}  // namespace holobrace
