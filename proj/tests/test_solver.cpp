#include <doctest.h>

#include <chrono>

#include "p6tau/tau_solver.hpp"
#include "support.hpp"

using namespace p6tau;
using namespace testing_support;

namespace {

// 2 eps^2 ((eps - 1)^2 - 4 sigma^2)
RatFunc closed_form_F(const LatticeIndex& k) {
  const RatFunc s = RatFunc::sigma();
  const RatFunc eps = RatFunc(q_of(k.m2 + k.n2, 2)) + s * RatFunc(k.m2 - k.n2);
  const RatFunc e1 = eps - RatFunc(1);
  return RatFunc(2) * eps * eps * (e1 * e1 - RatFunc(4) * s * s);
}

}  // namespace

TEST_CASE("indicial factor has the closed form for any beta1") {
  for (int trial = 0; trial < 5; ++trial) {
    const RatFunc b1(rand_q());
    for (int w = 0; w <= 6; ++w)
      for (const auto& k : stratum_indices(w)) CHECK(indicial_factor(b1, RatFunc::sigma(), k) == closed_form_F(k));
  }
}

TEST_CASE("indicial factor vanishes only at the three seed indices") {
  for (int w = 0; w <= 8; ++w)
    for (const auto& k : stratum_indices(w)) {
      const bool seed = (k.m2 == 0 && k.n2 == 0) || (k.m2 == 2 && k.n2 == 0) || (k.m2 == 0 && k.n2 == 2);
      CHECK(closed_form_F(k).is_zero() == seed);
    }
}

TEST_CASE("exact series in Q(sigma) solves the equation through W = 4") {
  const BetaParams<RatFunc> b = convert_beta<RatFunc>(rand_beta());
  SeedData<RatFunc> seeds{RatFunc::sigma(), RatFunc(1), RatFunc(q_of(2, 3)), RatFunc(-3), 4};
  auto f = solve_series(b, seeds);
  auto r = apply_equation(build_typeH_equation(b), f);
  CHECK(r.is_zero());
  CHECK(r.terms().empty());
}

TEST_CASE("numeric series at 256 bits has tiny residual") {
  ScopedPrecision prec(256);
  const BigComplex sigma = parse_bigcomplex("0.31+0.07i");
  BetaParams<BigComplex> b(1, 0, 0, 0, -2, 1);
  SeedData<BigComplex> seeds{sigma, 1, 1, 1, 8};
  auto f = solve_series(b, seeds);
  auto r = apply_equation(build_typeH_equation(b), f);
  BigReal mx = 0;
  for (const auto& [k, c] : r.terms()) mx = std::max(mx, abs(c));
  CHECK(mx < BigReal("1e-25"));
}

TEST_CASE("rational sigma: the exact series is that of Q(sigma) evaluated") {
  const BetaParams<Rational> bq = rand_beta();
  const Rational s0 = q_of(2, 7);
  auto fq = solve_series(bq, SeedData<Rational>{s0, 2, 1, -1, 5});
  auto fr = solve_series(convert_beta<RatFunc>(bq), SeedData<RatFunc>{RatFunc::sigma(), 2, 1, -1, 5});
  CHECK(apply_equation(build_typeH_equation(bq), fq).is_zero());
  for (const auto& [k, c] : fr.terms()) CHECK(c.evaluate<Rational>(s0) == fq.coeff(k));
}

TEST_CASE("resonant sigma is reported with its index") {
  const BetaParams<Rational> b = rand_beta();
  // first non-seed index where F vanishes at sigma = 1/2
  LatticeIndex first{-1, -1};
  for (int w = 1; w <= 3 && first.m2 < 0; ++w)
    for (const auto& k : stratum_indices(w)) {
      if (w == 1 && k.m2 != k.n2) continue;
      if (closed_form_F(k).evaluate<Rational>(q_of(1, 2)) == 0) {
        first = k;
        break;
      }
    }
  REQUIRE(first.m2 >= 0);
  try {
    solve_series(b, SeedData<Rational>{q_of(1, 2), 1, 1, 1, 3});
    FAIL("expected Resonance");
  } catch (const Resonance& e) {
    CHECK(e.m2() == first.m2);
    CHECK(e.n2() == first.n2);
    CHECK(e.exit_code() == 3);
  }
}

TEST_CASE("zero leading seed is rejected") {
  CHECK_THROWS_AS(solve_series(rand_beta(), SeedData<Rational>{q_of(1, 3), 0, 1, 1, 2}), SeedZero);
}

TEST_CASE("solutions live on the Gil lattice") {
  ScopedPrecision prec(256);
  BetaParams<BigComplex> b(1, 0, 0, 0, -2, 1);
  auto f = solve_series(b, SeedData<BigComplex>{parse_bigcomplex("0.31+0.07i"), 1, 1, 1, 8});
  auto g = reindex_gil_view(f);
  CHECK(g.nonrepresentable.empty());
  CHECK_NOTHROW(reindex_gil_view(f, true));
  int k, l;
  for (int kk = -2; kk <= 2; ++kk)
    for (int ll = 0; ll <= 3; ++ll) {
      LatticeIndex idx = gil_to_lattice(kk, ll);
      REQUIRE(gil_representable(idx, k, l));
      CHECK(k == kk);
      CHECK(l == ll);
    }
}

TEST_CASE("exact W = 4 solve is quick") {
  const auto t0 = std::chrono::steady_clock::now();
  const BetaParams<RatFunc> b = convert_beta<RatFunc>(rand_beta());
  auto f = solve_series(b, SeedData<RatFunc>{RatFunc::sigma(), 1, 1, 1, 4});
  (void)f;
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("exact W=4 solve: " << s << " s");
  CHECK(s < 60);
}
