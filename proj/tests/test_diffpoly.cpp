#include <doctest.h>

#include <chrono>

#include "p6tau/classify.hpp"
#include "support.hpp"

using namespace p6tau;
using namespace testing_support;

namespace {

MPoly T() { return MPoly::var("t"); }
MPoly U() { return MPoly::var("u"); }

MPoly rand_poly(const MPoly& x, int deg) {
  MPoly p;
  for (int d = 0; d <= deg; ++d) p += MPoly(rand_q()) * x.pow(d);
  return p;
}

DiffPoly rand_diffpoly(int max_order, int deg) {
  DiffPoly p("t");
  for (int k = 0; k <= max_order; ++k)
    for (int l = 0; l <= k && k + l <= max_order; ++l) p.add(k, l, rand_poly(T(), deg));
  return p;
}

HirotaForm<MPoly> to_mpoly_form(const HirotaForm<Rational>& L) {
  HirotaForm<MPoly> r;
  for (const auto& [w, poly] : L.terms()) {
    TPoly<MPoly> p;
    for (const auto& c : poly) p.push_back(MPoly(c));
    r.add(w, p);
  }
  return r;
}

}  // namespace

TEST_CASE("words expand by the product rule") {
  DiffPoly d2 = expand_word({0, 2});
  CHECK(d2.coeff(2, 0) == MPoly(2));
  CHECK(d2.coeff(1, 1) == MPoly(-2));
  DiffPoly d4 = expand_word({0, 4});
  CHECK(d4.coeff(4, 0) == MPoly(2));
  CHECK(d4.coeff(3, 1) == MPoly(-8));
  CHECK(d4.coeff(2, 2) == MPoly(6));
  CHECK(expand_word({0, 3}).is_zero());
  // delta (f.f) = 2 f delta f
  CHECK(expand_word({1, 0}).coeff(1, 0) == MPoly(2));
}

TEST_CASE("Stirling numbers behind the rebase") {
  CHECK(stirling2(4, 4) == 1);
  CHECK(stirling2(4, 3) == 6);
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(4, 1) == 1);
  CHECK(stirling1_signed(3, 1) == 2);
  CHECK(stirling1_signed(3, 2) == -3);
}

TEST_CASE("rebase of delta is (u+1)/u delta_u") {
  DiffPoly p("t");
  p.add(1, 0, MPoly(1));
  DiffPoly r = rebase_at_one(p);
  CHECK(r.shift() == 1);
  CHECK(r.coeff(1, 0) == U() + MPoly(1));
  CHECK(r.terms().size() == 1);

  DiffPoly m("t");
  m.add(0, 0, T() * T());
  DiffPoly rm = rebase_at_one(m);
  CHECK(rm.shift() == 0);
  CHECK(rm.coeff(0, 0) == (U() + MPoly(1)).pow(2));
}

TEST_CASE("rebase is compatible with evaluation on polynomials") {
  for (int trial = 0; trial < 10; ++trial) {
    DiffPoly p = rand_diffpoly(4, 2);
    const MPoly f = rand_poly(T(), 4);
    const int K = p.max_order();
    const MPoly lhs = apply_to_polynomial(rebase_at_one(p), f.substitute(intern_variable("t"), U() + MPoly(1)));
    const MPoly rhs = U().pow(K) * apply_to_polynomial(p, f).substitute(intern_variable("t"), U() + MPoly(1));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("inversion flips odd orders and is an involution") {
  DiffPoly p("t");
  p.add(1, 0, MPoly(1));
  CHECK(invert_at_infinity(p).coeff(1, 0) == MPoly(-1));
  DiffPoly d2 = expand_word({0, 2});
  CHECK(invert_at_infinity(d2) == DiffPoly(expand_word({0, 2}, "s")));
  for (int trial = 0; trial < 5; ++trial) {
    DiffPoly q = rand_diffpoly(4, 3);
    q.add(0, 0, MPoly(1) - q.coeff(0, 0).coefficient(q.var(), 0));  // nonzero constant term
    CHECK(invert_at_infinity(invert_at_infinity(q)) == q);
  }
}

TEST_CASE("inversion maps the type (H) block at infinity") {
  const MPoly a2 = MPoly::var("a2");
  // [D^4 + (1 + a2 + 2 delta) D^2] f.f  ->  [D_s^4 + (1 + a2 - 2 delta_s) D_s^2] f.f
  DiffPoly p = expand_word({0, 4}) + expand_word({0, 2}).scaled(MPoly(1) + a2) + expand_word({1, 2}).scaled(MPoly(2));
  DiffPoly q = expand_word({0, 4}, "s") + expand_word({0, 2}, "s").scaled(MPoly(1) + a2) +
               expand_word({1, 2}, "s").scaled(MPoly(-2));
  CHECK(invert_at_infinity(p) == q);
}

TEST_CASE("lowest stratum at 0 of the operator is the lowest block") {
  for (int trial = 0; trial < 5; ++trial) {
    BetaParams<Rational> b = rand_beta();
    auto [p0, deg] = lowest_term(to_diffpoly(build_typeH_equation(b)));
    CHECK(deg == 0);
    CHECK(p0 == to_diffpoly(lowest_block_form<Rational>(1 - b(1))));
  }
  DiffPoly z("t");
  CHECK_THROWS_AS(lowest_term(z), ZeroPolynomial);
}

TEST_CASE("type (H) template matching") {
  auto block = [](const Rational& alpha, const Rational& mult) {
    return to_diffpoly(lowest_block_form<Rational>(1 + 4 * alpha)).scaled(MPoly(mult));
  };
  auto m = match_typeH(block(0, 1));
  REQUIRE(m);
  CHECK(m->alpha == MPoly(0));
  CHECK(m->multiple == MPoly(1));
  auto m3 = match_typeH(block(1, 3));
  REQUIRE(m3);
  CHECK(m3->alpha == MPoly(1));
  CHECK(m3->multiple == MPoly(3));
  DiffPoly bad = block(0, 1);
  bad.add(1, 1, MPoly(1));
  CHECK(!match_typeH(bad));
}

TEST_CASE("word decomposition inverts the expansion") {
  for (int trial = 0; trial < 5; ++trial) {
    const auto L = build_typeH_equation(rand_beta());
    CHECK(to_hirota_form(to_diffpoly(L)) == to_mpoly_form(L));
  }
  DiffPoly p("t");
  p.add(5, 0, MPoly(1));
  CHECK_THROWS_AS(to_hirota_form(p), InvalidInput);
}

TEST_CASE("lowest block in both monomial bases agrees on polynomials") {
  LowestBlock b = lowest_block_expanded();
  CHECK(b.delta_basis.coeff(4, 0) == MPoly(2));
  CHECK(b.delta_basis.coeff(3, 0) == MPoly(-4));
  for (int trial = 0; trial < 5; ++trial) {
    const MPoly f = rand_poly(T(), 5);
    CHECK(apply_to_polynomial(b.delta_basis, f) == apply_to_polynomial(b.ddt_basis, f));
  }
}

TEST_CASE("classification re-derives the three constraints") {
  const auto t0 = std::chrono::steady_clock::now();
  Classification c = classify_three_point();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10);
  const MPoly a = MPoly::var("a1");
  auto A = [](int i) { return MPoly::var("a" + std::to_string(i)); };
  REQUIRE(c.constraints.size() == 3);
  CHECK(c.constraints[0].pivot == "a4");
  CHECK(c.constraints[0].solved == MPoly(4) - A(3));
  CHECK(c.constraints[1].pivot == "a6");
  CHECK(c.constraints[1].solved == A(1) * Rational(2) + A(2) * Rational(2) + A(3) - A(5));
  CHECK(c.constraints[2].pivot == "a9");
  CHECK(c.constraints[2].solved == -A(7) - A(8));
  CHECK(c.constraints[2].relation == A(7) + A(8) + A(9));
  CHECK(c.free_unknowns == std::vector<std::string>{"a1", "a2", "a3", "a5", "a7", "a8"});
  (void)a;
  // family equals the beta form of the operator
  CHECK(to_diffpoly(build_typeH_equation(c.beta)) == c.family);
  AllPointsReport rep = verify_typeH_all_points(c.family);
  CHECK(rep.all_typeH);
}

TEST_CASE("random operators are of type (H) at 0, 1 and infinity") {
  for (int trial = 0; trial < 20; ++trial) {
    BetaParams<Rational> b = rand_beta();
    AllPointsReport r = verify_typeH_all_points(to_diffpoly(build_typeH_equation(b)));
    CHECK(r.all_typeH);
    INFO(r.atinf.reason);
    REQUIRE(r.at0.alpha);
    CHECK(*r.at0.alpha == MPoly(-b(1) / 4));
    REQUIRE(r.atinf.alpha);
    CHECK(*r.atinf.alpha == MPoly(-b(6) / 4));
    CHECK(r.extras.empty());
  }
}

TEST_CASE("a fourth singular point breaks the check") {
  BetaParams<Rational> b = rand_beta();
  DiffPoly p = to_diffpoly(build_typeH_equation(b));
  const MPoly Tm1 = T() - MPoly(1);
  DiffPoly q("t");
  for (const auto& [kl, c] : p.terms()) q.add(kl.first, kl.second, c);
  q -= expand_word({0, 4}).scaled(Tm1.pow(4));
  q += expand_word({0, 4}).scaled(Tm1.pow(3) * (T() - MPoly(2)));
  AllPointsReport r = verify_typeH_all_points(q);
  CHECK(!r.all_typeH);
  REQUIRE(r.extras.size() == 1);
  CHECK(r.extras[0].point == "2");
  CHECK(!r.extras[0].typeH);
}

TEST_CASE("constant top coefficient is rejected") {
  DiffPoly p = expand_word({0, 4});
  CHECK_THROWS_AS(verify_typeH_all_points(p), DegenerateTopCoefficient);
}

TEST_CASE("excess order at t = 1 divides out") {
  Classification c = classify_three_point();
  DiffPoly p5 = c.family.scaled(T() - MPoly(1));
  auto [q, removed] = reduce_order_at_one(p5);
  CHECK(removed == 1);
  auto [low, deg] = lowest_term(q);
  CHECK(deg == 0);
  CHECK(match_typeH(low).has_value());
}
