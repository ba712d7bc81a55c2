#include <doctest.h>

#include "p6tau/json_io.hpp"
#include "support.hpp"

using namespace p6tau;
using namespace testing_support;

TEST_CASE("exact series survive a JSON round trip") {
  const BetaParams<RatFunc> b = convert_beta<RatFunc>(rand_beta());
  const auto f = solve_series(b, SeedData<RatFunc>{RatFunc::sigma(), 1, RatFunc(q_of(1, 2)), -1, 3});
  const json j = series_to_json(f);
  const auto g = series_from_json<RatFunc>(json::parse(dump(j)));
  CHECK(g.trunc_weight() == f.trunc_weight());
  CHECK(g.alpha() == f.alpha());
  REQUIRE(g.terms().size() == f.terms().size());
  for (const auto& [k, c] : f.terms()) CHECK(g.coeff(k) == c);
  CHECK(dump(series_to_json(g)) == dump(j));
}

TEST_CASE("numeric series survive a JSON round trip bit for bit") {
  ScopedPrecision prec(256);
  const auto f = solve_series(BetaParams<BigComplex>(1, 0, 0, 0, -2, 1),
                              SeedData<BigComplex>{parse_bigcomplex("0.31+0.07i"), 1, 1, 1, 4});
  const std::string text = dump(series_to_json(f));
  const auto g = series_from_json<BigComplex>(json::parse(text));
  for (const auto& [k, c] : f.terms()) {
    CHECK(g.coeff(k).re() == c.re());
    CHECK(g.coeff(k).im() == c.im());
  }
  CHECK(dump(series_to_json(g)) == text);
}

TEST_CASE("malformed series JSON") {
  CHECK_THROWS_AS(series_from_json<RatFunc>(json::parse(R"({"alpha": 1})")), InvalidInput);
  CHECK_THROWS_AS(series_from_json<BigComplex>(json::parse(R"({"alpha": {"re": "0"}, "sigma": 1})")), InvalidInput);
}

TEST_CASE("dump is sorted and stable") {
  json j = {{"zeta", 1}, {"alpha", {{"b", 2}, {"a", 1}}}};
  const std::string s = dump(j);
  CHECK(s.find("\"alpha\"") < s.find("\"zeta\""));
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(s.back() == '\n');
  CHECK(dump(json::parse(s)) == s);
}

TEST_CASE("residual report") {
  const BetaParams<Rational> b = rand_beta();
  const auto f = solve_series(b, SeedData<Rational>{q_of(1, 7), 1, 1, 1, 5});
  const json r = residual_report(apply_equation(build_typeH_equation(b), f));
  CHECK(r.at("identically_zero").get<bool>());
  CHECK(r.at("residual_max").get<double>() == 0.0);
  CHECK(r.at("max_residual_by_weight").size() == 6);
}

TEST_CASE("classification JSON carries the constraints") {
  const json j = classification_to_json(classify_three_point());
  CHECK(j.at("constraints").size() == 3);
  CHECK(j.at("free_unknowns").size() == 6);
  CHECK(j.at("beta_map").size() == 6);
}
