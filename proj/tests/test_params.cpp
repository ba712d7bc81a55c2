#include <doctest.h>

#include "p6tau/params.hpp"
#include "p6tau/reduction.hpp"
#include "support.hpp"

using namespace p6tau;
using namespace testing_support;

namespace {

ThetaParams<MPoly> symbolic_theta() {
  return theta_from_four(MPoly::var("th0"), MPoly::var("th1"), MPoly::var("tht"), MPoly::var("k1"));
}

BetaParams<MPoly> symbolic_beta() {
  BetaParams<MPoly> b;
  for (int i = 1; i <= 6; ++i) b(i) = MPoly::var("b" + std::to_string(i));
  return b;
}

BetaParams<Rational> zero_theta_beta() {
  return theta_to_beta(ThetaParams<Rational>{0, 0, 0, 0, 0});
}

}  // namespace

TEST_CASE("theta chart at the origin") {
  BetaParams<Rational> b = zero_theta_beta();
  const Rational want[6] = {1, 0, 0, 0, -2, 1};
  for (int i = 1; i <= 6; ++i) CHECK(b(i) == want[i - 1]);
  CHECK(b.J() == 0);
  AbcdParams<Rational> k = theta_to_abcd(ThetaParams<Rational>{0, 0, 0, 0, 0});
  CHECK(k.a == 0);
  CHECK(k.b == 0);
  CHECK(k.c == q_of(1, 2));
  CHECK(k.d == q_of(1, 2));
}

TEST_CASE("theta must sum to zero") {
  CHECK_THROWS_AS(theta_to_beta(ThetaParams<Rational>{1, 0, 0, 0, 0}), InvariantViolated);
}

TEST_CASE("theta chart is integrable and kappa2 = 0 kills beta2, beta3") {
  ThetaParams<MPoly> th = symbolic_theta();
  CHECK(theta_to_beta(th).J().is_zero());
  for (int trial = 0; trial < 10; ++trial) {
    // kappa2 = 0: kappa1 = -(theta0 + theta1 + thetat)
    Rational a = rand_q(), b = rand_q(), c = rand_q();
    BetaParams<Rational> beta = theta_to_beta(ThetaParams<Rational>{a, b, c, -(a + b + c), 0});
    CHECK(beta(2) == 0);
    CHECK(beta(3) == 0);
  }
}

TEST_CASE("abcd round trip with branch signs") {
  for (int trial = 0; trial < 10; ++trial) {
    ThetaParams<Rational> th = rand_theta();
    AbcdBranch br;
    br.s0 = sgn(th.theta0) < 0 ? -1 : 1;
    br.s1 = sgn(th.theta1) < 0 ? -1 : 1;
    br.st = sgn(th.thetat) < 0 ? -1 : 1;
    br.sk = sgn(th.kappa1 - th.kappa2 - 1) < 0 ? -1 : 1;
    ThetaParams<Rational> back = abcd_to_theta(theta_to_abcd(th), br);
    CHECK(back.theta0 == th.theta0);
    CHECK(back.theta1 == th.theta1);
    CHECK(back.thetat == th.thetat);
    CHECK(back.kappa1 == th.kappa1);
    CHECK(back.kappa2 == th.kappa2);
  }
  CHECK_THROWS_AS(abcd_to_theta(AbcdParams<Rational>{q_of(1, 3), 0, 0, 0}, AbcdBranch{}), InvalidInput);
  AbcdBranch bad;
  bad.s0 = 2;
  CHECK_THROWS_AS(abcd_to_theta(AbcdParams<Rational>{0, 0, 0, 0}, bad), InvalidInput);
}

TEST_CASE("J is gauge invariant") {
  for (int trial = 0; trial < 100; ++trial) {
    BetaParams<Rational> b = rand_beta();
    BetaParams<Rational> g = gauge_beta(b, rand_q(), rand_q());
    CHECK(g.J() == b.J());
  }
  BetaParams<MPoly> b = symbolic_beta();
  CHECK(gauge_beta(b, MPoly::var("al"), MPoly::var("ga")).J() == b.J());
}

TEST_CASE("zero gauge is the identity") {
  BetaParams<Rational> b = rand_beta();
  BetaParams<Rational> g = gauge_beta(b, Rational(0), Rational(0));
  for (int i = 1; i <= 6; ++i) CHECK(g(i) == b(i));
}

TEST_CASE("operator conjugation reproduces the gauge rules") {
  // f = t^{al/2} (t-1)^{ga/2} g, so that f.f = t^al (t-1)^ga g.g
  const BetaParams<MPoly> b = symbolic_beta();
  const MPoly al = MPoly::var("al"), ga = MPoly::var("ga");
  const DiffPoly lhs = conjugate_by_gauge(to_diffpoly(build_typeH_equation(b)), al * q_of(1, 2), ga * q_of(1, 2));
  const MPoly Tm1 = MPoly::var("t") - MPoly(1);
  const DiffPoly rhs = to_diffpoly(build_typeH_equation(gauge_beta(b, al, ga))).scaled(Tm1.pow(4));
  CHECK(lhs == rhs);
}

TEST_CASE("conjugation with the full exponents does not give the printed rules") {
  const BetaParams<MPoly> b = symbolic_beta();
  const MPoly al = MPoly::var("al"), ga = MPoly::var("ga");
  const DiffPoly lhs = conjugate_by_gauge(to_diffpoly(build_typeH_equation(b)), al, ga);
  const MPoly Tm1 = MPoly::var("t") - MPoly(1);
  const DiffPoly printed = to_diffpoly(build_typeH_equation(gauge_beta(b, al, ga))).scaled(Tm1.pow(4));
  CHECK(!(lhs == printed));
  const DiffPoly doubled =
      to_diffpoly(build_typeH_equation(gauge_beta(b, al * Rational(2), ga * Rational(2)))).scaled(Tm1.pow(4));
  CHECK(lhs == doubled);
}

TEST_CASE("normalizing gauge zeroes beta5 and beta6") {
  for (int trial = 0; trial < 20; ++trial) {
    BetaParams<Rational> b = rand_beta();
    auto [al, ga] = normalizing_gauge(b);
    BetaParams<Rational> g = gauge_beta(b, al, ga);
    CHECK(g(5) == 0);
    CHECK(g(6) == 0);
  }
}

TEST_CASE("normalized chart is the gauge image of the theta chart") {
  ThetaParams<MPoly> th = symbolic_theta();
  BetaParams<MPoly> b = theta_to_beta(th);
  auto [al, ga] = normalizing_gauge(b);
  BetaParams<MPoly> g = gauge_beta(b, al, ga);
  BetaParams<MPoly> n = theta_to_beta_normalized(th);
  for (int i = 1; i <= 6; ++i) CHECK(g(i) == n(i));
  BetaParams<Rational> z = theta_to_beta_normalized(ThetaParams<Rational>{0, 0, 0, 0, 0});
  CHECK(z(1) == 1);
  CHECK(z(2) == q_of(1, 4));
  CHECK(z(3) == q_of(-1, 2));
}

TEST_CASE("printed normalized beta2, beta3 differ by a factor -2") {
  ThetaParams<MPoly> th = symbolic_theta();
  const MPoly one(1);
  const MPoly o = th.theta0 + one, k = th.kappa1 - th.kappa2 - one;
  const MPoly printed2 = (th.theta0 + th.theta1 + one) * (th.theta0 - th.theta1 + one) * (th.thetat + k) *
                         (th.thetat - k) * q_of(1, 8);
  const MPoly yb = o * o - th.theta1 * th.theta1 - th.thetat * th.thetat + k * k;
  const MPoly printed3 = (yb * yb + MPoly(4) * (o * o + th.theta1 * th.theta1) * (th.thetat * th.thetat + k * k)) *
                         q_of(1, 32);
  BetaParams<MPoly> n = theta_to_beta_normalized(th);
  CHECK(n(2) == printed2 * Rational(-2));
  CHECK(n(3) == printed3 * Rational(-2));
}

TEST_CASE("p6 flag") {
  P6Flags f = p6_flag(zero_theta_beta());
  CHECK(f.reducible);
  CHECK(f.beta4_zero);
  BetaParams<Rational> b = zero_theta_beta();
  b(4) = 1;
  f = p6_flag(b);
  CHECK(!f.reducible);
  CHECK(!f.beta4_zero);
}
