#include <doctest.h>

#include "p6tau/json_io.hpp"
#include "support.hpp"

using namespace p6tau;
using namespace testing_support;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("-6/4") == q_of(-3, 2));
  CHECK(parse_rational(" 7 ") == 7);
  CHECK(to_string(q_of(-3, 2)) == "-3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("x"), InvalidInput);
  CHECK(binomial(6, 2) == 15);
}

TEST_CASE("polynomial division and gcd") {
  const UPoly x = UPoly::x();
  const UPoly a = (x - UPoly(1)) * (x + UPoly(2)) * (x - UPoly(q_of(1, 3)));
  const UPoly b = (x - UPoly(1)) * (x + UPoly(5));
  CHECK(gcd(a, b) == (x - UPoly(1)));
  auto [q, r] = UPoly::divmod(a, b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
  CHECK(a(Rational(1)) == 0);
  CHECK(a.derivative().degree() == 2);
}

TEST_CASE("rational functions are kept reduced") {
  const RatFunc s = RatFunc::sigma();
  const RatFunc f = (s * s - RatFunc(1)) / (s - RatFunc(1));
  CHECK(f == s + RatFunc(1));
  CHECK(f.den().degree() == 0);
  const RatFunc g = RatFunc(1) / (s + RatFunc(2)) - RatFunc(1) / (s - RatFunc(3));
  CHECK(g * (s + RatFunc(2)) * (s - RatFunc(3)) == RatFunc(-5));
  CHECK(parse_ratfunc(g.num().to_string(), g.den().to_string()) == g);
  CHECK_THROWS_AS(parse_ratfunc("1", "0"), InvalidInput);
  CHECK(g.evaluate<Rational>(Rational(0)) == q_of(1, 2) + q_of(1, 3));
}

TEST_CASE("multivariate parse and arithmetic") {
  const MPoly p = parse_mpoly("(a + 2*b)^2 - 4*a*b/2");
  CHECK(p == parse_mpoly("a^2 + 2*a*b + 4*b^2"));
  CHECK(parse_mpoly(p.to_string()) == p);
  const int a = intern_variable("a");
  CHECK(p.derivative(a) == parse_mpoly("2*a + 2*b"));
  CHECK(p.substitute(a, MPoly(0)) == parse_mpoly("4*b^2"));
  CHECK(p.degree(a) == 2);
  CHECK_THROWS_AS(parse_mpoly("1/a"), InvalidInput);
  CHECK_THROWS_AS(parse_mpoly("(a + "), InvalidInput);
}

TEST_CASE("big complex arithmetic at 256 bits") {
  ScopedPrecision prec(256);
  const BigComplex z = parse_bigcomplex("0.31+0.07i");
  CHECK(abs(exp(log(z)) - z) < BigReal("1e-70"));
  CHECK(abs(sqrt(z) * sqrt(z) - z) < BigReal("1e-70"));
  CHECK(abs(parse_bigcomplex(to_string(z)) - z) < BigReal("1e-70"));
  CHECK(parse_bigcomplex("-2i").im() == -2);
  CHECK_THROWS_AS(parse_bigcomplex("1+"), InvalidInput);
}

TEST_CASE("series inverse and product") {
  SigmaSeries<Rational> f(q_of(1, 3), q_of(2, 7), 6);
  f.set({0, 0}, 2);
  for (int w = 1; w <= 6; ++w)
    for (const auto& k : stratum_indices(w)) f.set(k, rand_q());
  const SigmaSeries<Rational> g = series_inverse(f);
  const SigmaSeries<Rational> one = series_mul(f, g);
  CHECK(one.coeff({0, 0}) == 1);
  CHECK(one.terms().size() == 1);
  CHECK(one.alpha() == -(q_of(2, 7) * q_of(2, 7)));
  SigmaSeries<Rational> z(0, q_of(2, 7), 3);
  z.set({2, 0}, 1);
  CHECK_THROWS_AS(series_inverse(z), SeedZero);
}

TEST_CASE("series t powers and delta") {
  SigmaSeries<Rational> f(0, q_of(1, 5), 4);
  f.set({0, 0}, 1);
  f.set({4, 2}, 3);
  const SigmaSeries<Rational> m = mul_t_power(f, 1);
  CHECK(m.trunc_weight() == 3);
  CHECK(m.coeff({1, 1}) == 1);
  CHECK(m.coeff({5, 3}) == 0);  // weight 4 is beyond W - 1
  const SigmaSeries<Rational> s = shift_t_power(f, 1);
  CHECK(s.trunc_weight() == 4);
  CHECK(s.coeff({5, 3}) == 3);
  CHECK_THROWS_AS(mul_t_power(f, 5), TruncationExhausted);
  const SigmaSeries<Rational> d = apply_delta(f);
  CHECK(d.coeff({0, 0}) == f.exponent({0, 0}));
  CHECK(d.coeff({4, 2}) == 3 * f.exponent({4, 2}));
  CHECK(f.exponent({4, 2}) == q_of(1, 25) + 3 + q_of(2, 5));
}

TEST_CASE("series guards") {
  SigmaSeries<Rational> f(0, q_of(1, 5), 2);
  CHECK_THROWS_AS(f.set({1, 0}, 1), InvalidInput);
  CHECK_THROWS_AS(f.set({4, 2}, 1), InvalidInput);
  SigmaSeries<Rational> g(0, q_of(1, 3), 2), h(1, q_of(1, 5), 2);
  CHECK_THROWS_AS(series_add(f, g), SigmaMismatch);
  CHECK_THROWS_AS(series_add(f, h), OffsetMismatch);
}

TEST_CASE("series evaluation splits by stratum") {
  ScopedPrecision prec(128);
  SigmaSeries<Rational> f(0, 0, 2);
  f.set({0, 0}, 1);
  f.set({1, 1}, 2);
  f.set({2, 2}, 3);
  const SeriesValue v = evaluate(f, BigComplex(q_of(1, 2)), BigComplex(0));
  CHECK(abs(v.value - BigComplex(q_of(11, 4))) < BigReal("1e-30"));
  CHECK(abs(v.top_stratum - BigComplex(q_of(3, 4))) < BigReal("1e-30"));
  CHECK_THROWS_AS(evaluate(f, BigComplex(-1), BigComplex(0)), BranchCut);
  CHECK_NOTHROW(evaluate(f, BigComplex(-1), BigComplex(0), 0));
}
