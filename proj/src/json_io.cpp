#include "p6tau/json_io.hpp"

#include <cstdio>

namespace p6tau {

json scalar_to_json(const RatFunc& x) { return {{"num", x.num().to_string()}, {"den", x.den().to_string()}}; }

json scalar_to_json(const Rational& x) { return {{"num", to_string(x)}, {"den", "1"}}; }

json scalar_to_json(const BigComplex& x) { return {{"re", to_decimal(x.re())}, {"im", to_decimal(x.im())}}; }

json scalar_to_json(const MPoly& x) { return x.to_string(); }

json scalar_to_json(const std::complex<double>& x) {
  char re[40], im[40];
  std::snprintf(re, sizeof re, "%.17g", x.real());
  std::snprintf(im, sizeof im, "%.17g", x.imag());
  return {{"re", re}, {"im", im}};
}

template <>
RatFunc scalar_from_json<RatFunc>(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw InvalidInput("exact scalar needs num and den");
  return parse_ratfunc(j.at("num").get<std::string>(), j.at("den").get<std::string>());
}

template <>
BigComplex scalar_from_json<BigComplex>(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) throw InvalidInput("numeric scalar needs re and im");
  return BigComplex(parse_bigreal(j.at("re").get<std::string>()), parse_bigreal(j.at("im").get<std::string>()));
}

json diffpoly_to_json(const DiffPoly& p) {
  json terms = json::array();
  for (const auto& [kl, c] : p.terms()) terms.push_back({{"k", kl.first}, {"l", kl.second}, {"coeff", c.to_string()}});
  return {{"variable", p.var_name()}, {"shift", p.shift()}, {"terms", terms}};
}

json classification_to_json(const Classification& c) {
  json cons = json::array();
  for (const auto& r : c.constraints)
    cons.push_back({{"unknown", r.pivot}, {"solved", r.solved.to_string()}, {"relation", r.relation.to_string() + " = 0"}});
  json beta = json::object();
  for (int i = 1; i <= 6; ++i) beta["beta" + std::to_string(i)] = c.beta(i).to_string();
  return {{"constraints", cons},
          {"free_unknowns", c.free_unknowns},
          {"beta_map", beta},
          {"family", hirota_to_json(c.family_words)},
          {"exponent_at_one", c.alpha_at_one.to_string()},
          {"log", c.log}};
}

json point_report_to_json(const PointReport& p) {
  json j = {{"point", p.point}, {"typeH", p.typeH}, {"lowest_degree", p.degree}};
  if (p.alpha) j["alpha"] = p.alpha->to_string();
  if (p.multiple) j["multiple"] = p.multiple->to_string();
  if (!p.reason.empty()) j["reason"] = p.reason;
  return j;
}

json all_points_to_json(const AllPointsReport& r) {
  json extras = json::array();
  for (const auto& e : r.extras) extras.push_back(point_report_to_json(e));
  return {{"at0", point_report_to_json(r.at0)},
          {"at1", point_report_to_json(r.at1)},
          {"atinf", point_report_to_json(r.atinf)},
          {"extra_points", extras},
          {"unresolved_degree", r.unresolved_degree},
          {"all_typeH", r.all_typeH}};
}

json crosscheck_to_json(const CrosscheckReport& r) {
  json table = json::array();
  for (const auto& row : r.table) table.push_back({{"t", row[0]}, {"dev_h", row[1]}, {"dev_dh", row[2]}, {"dev_d2h", row[3]}});
  json j = {{"t_match", r.t_match},
            {"max_deviation", r.max_deviation},
            {"max_deviation_dh", r.max_deviation_dh},
            {"max_deviation_d2h", r.max_deviation_d2h},
            {"series_tail_estimate", r.series_tail_estimate},
            {"ode_defect", r.ode_defect},
            {"strata_at_0.01", r.top_strata},
            {"strata_decay", r.strata_decay},
            {"table", table}};
  if (r.conservation_drift) j["conservation_drift"] = *r.conservation_drift;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace p6tau
