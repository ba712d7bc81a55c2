#pragma once

#include <json.hpp>

#include "p6tau/classify.hpp"
#include "p6tau/numeric.hpp"
#include "p6tau/tau_solver.hpp"

namespace p6tau {

using nlohmann::json;

json scalar_to_json(const RatFunc& x);
json scalar_to_json(const Rational& x);
json scalar_to_json(const BigComplex& x);
json scalar_to_json(const MPoly& x);
json scalar_to_json(const std::complex<double>& x);

template <class S>
S scalar_from_json(const json& j);
template <>
RatFunc scalar_from_json<RatFunc>(const json& j);
template <>
BigComplex scalar_from_json<BigComplex>(const json& j);

template <class S>
json series_to_json(const SigmaSeries<S>& f) {
  json terms = json::array();
  for (const auto& [k, c] : f.terms())
    terms.push_back({{"m2", k.m2}, {"n2", k.n2}, {"coeff", scalar_to_json(c)}});
  return {{"alpha", scalar_to_json(f.alpha())},
          {"sigma", scalar_to_json(f.sigma())},
          {"trunc_weight", f.trunc_weight()},
          {"terms", terms}};
}

template <class S>
SigmaSeries<S> series_from_json(const json& j) {
  try {
    SigmaSeries<S> f(scalar_from_json<S>(j.at("alpha")), scalar_from_json<S>(j.at("sigma")),
                     j.at("trunc_weight").get<int>());
    for (const auto& t : j.at("terms"))
      f.set({t.at("m2").get<int>(), t.at("n2").get<int>()}, scalar_from_json<S>(t.at("coeff")));
    return f;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed series JSON: ") + e.what());
  }
}

template <class S>
json hirota_to_json(const HirotaForm<S>& L) {
  json out = json::array();
  for (const auto& [w, poly] : L.terms()) {
    json p = json::array();
    for (const auto& c : poly) p.push_back(scalar_to_json(c));
    out.push_back({{"word", {{"j", w.j}, {"N", w.N}}}, {"poly", p}});
  }
  return out;
}

template <class S>
json beta_to_json(const BetaParams<S>& b) {
  json out = json::array();
  for (int i = 1; i <= 6; ++i) out.push_back(scalar_to_json(b(i)));
  return out;
}

// Largest |coefficient| per weight of a residual series; exact zeros give 0.
template <class S>
json residual_report(const SigmaSeries<S>& r) {
  std::vector<double> by_w(static_cast<std::size_t>(r.trunc_weight()) + 1, 0.0);
  bool exact_zero = true;
  for (const auto& [k, c] : r.terms()) {
    if (scalar_is_zero(c)) continue;
    exact_zero = false;
    double v = 1.0;  // nonzero exact coefficient
    if constexpr (std::is_same_v<S, BigComplex>) v = static_cast<double>(abs(c));
    auto& slot = by_w[static_cast<std::size_t>(k.weight())];
    slot = std::max(slot, v);
  }
  double mx = 0;
  for (double v : by_w) mx = std::max(mx, v);
  json out = {{"max_residual_by_weight", by_w}, {"residual_max", mx}};
  if constexpr (ScalarTraits<S>::exact()) out["identically_zero"] = exact_zero;
  return out;
}

json classification_to_json(const Classification& c);
json point_report_to_json(const PointReport& p);
json all_points_to_json(const AllPointsReport& r);
json crosscheck_to_json(const CrosscheckReport& r);
json diffpoly_to_json(const DiffPoly& p);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace p6tau
