#include <doctest.h>

#include "p6tau/reduction.hpp"
#include "p6tau/tau_solver.hpp"
#include "support.hpp"

using namespace p6tau;
using namespace testing_support;

namespace {

BetaParams<MPoly> symbolic_beta() {
  BetaParams<MPoly> b;
  for (int i = 1; i <= 6; ++i) b(i) = MPoly::var("b" + std::to_string(i));
  return b;
}

ThetaParams<MPoly> symbolic_theta() {
  return theta_from_four(MPoly::var("th0"), MPoly::var("th1"), MPoly::var("tht"), MPoly::var("k1"));
}

bool free_of_jet(const MPoly& p) {
  for (const char* v : {"t", "h0", "h1", "h2", "h3"})
    if (p.degree(intern_variable(v)) > 0) return false;
  return true;
}

// d/dt E - 2 h'' R3
MPoly first_integral_defect(const BetaParams<MPoly>& b) {
  const JetVars j = jet_vars();
  const MPoly E = second_order_expression(b, j.t, j.h[0], j.h[1], j.h[2]);
  const MPoly R = third_order_residual(b, j.t, j.h[0], j.h[1], j.h[2], j.h[3]);
  return total_derivative_t(E) - j.h[2] * R * Rational(2);
}

template <class S>
SigmaSeries<S> random_series(const S& sigma, int W) {
  SigmaSeries<S> f(from_q<S>(q_of(1, 3)), sigma, W);
  f.set({0, 0}, from_q<S>(1) + from_q<S>(rand_q()) * from_q<S>(0));
  for (int w = 1; w <= W; ++w)
    for (const auto& k : stratum_indices(w)) f.set(k, from_q<S>(rand_q()));
  return f;
}

}  // namespace

TEST_CASE("second-order expression is a first integral when 2 beta4 + beta5 + 2 beta6 = 0") {
  BetaParams<MPoly> b = symbolic_beta();
  CHECK(!first_integral_defect(b).is_zero());
  b(4) = -(b(5) * q_of(1, 2)) - b(6);
  CHECK(first_integral_defect(b).is_zero());
}

TEST_CASE("printed halves on the beta5 and beta6 terms break the first integral") {
  BetaParams<MPoly> b = symbolic_beta();
  b(4) = -(b(5) * q_of(1, 2)) - b(6);
  const JetVars j = jet_vars();
  const MPoly &t = j.t, &h = j.h[0], &h1 = j.h[1], &h2 = j.h[2];
  const MPoly E = second_order_expression(b, t, h, h1, h2);
  const MPoly b5part = b(5) * (h * h1 - t * h1 * h1);
  const MPoly b6part = b(6) * (t * h * h1 * Rational(2) - t * t * h1 * h1 - h * h);
  const MPoly printed = E - b5part * q_of(1, 2) - b6part * q_of(1, 2);
  const MPoly R = third_order_residual(b, t, h, h1, h2, j.h[3]);
  const MPoly defect = total_derivative_t(printed) - h2 * R * Rational(2);
  CHECK(!defect.is_zero());
  // h''(2 b5 t h' - b5 h + 2 b6 t^2 h' - 2 b6 t h) / 2, up to sign
  const MPoly expect = h2 * (b(5) * t * h1 * Rational(2) - b(5) * h + b(6) * t * t * h1 * Rational(2) -
                             b(6) * t * h * Rational(2)) *
                       q_of(1, 2);
  CHECK((defect == expect || defect == -expect));
}

TEST_CASE("total derivative needs the jet below h4") {
  CHECK_THROWS_AS(total_derivative_t(MPoly::var("h4")), InvalidInput);
}

TEST_CASE("sigma form differs from the second-order expression by a constant") {
  const ThetaParams<MPoly> th = symbolic_theta();
  const JetVars j = jet_vars();
  const MPoly S = sigma_form_residual(th, j.t, j.h[0], j.h[1], j.h[2]);
  const MPoly E = second_order_expression(theta_to_beta(th), j.t, j.h[0], j.h[1], j.h[2]);
  const MPoly C = S - E;
  CHECK(free_of_jet(C));
  CHECK(C == sigma_constant(th));
}

TEST_CASE("printed theta chart does not reproduce the sigma form") {
  const ThetaParams<MPoly> th = symbolic_theta();
  const MPoly one(1);
  BetaParams<MPoly> b = theta_to_beta(th);
  b(1) = (th.theta0 + th.theta1 + one) * (th.theta0 + th.theta1 + one);
  b(5) = ((th.theta0 + th.thetat + one) * (th.thetat + th.kappa1 - th.kappa2 - one) + th.K()) * Rational(2);
  b(4) = -(b(5) * q_of(1, 2)) - b(6);
  const JetVars j = jet_vars();
  const MPoly d = sigma_form_residual(th, j.t, j.h[0], j.h[1], j.h[2]) -
                  second_order_expression(b, j.t, j.h[0], j.h[1], j.h[2]);
  CHECK(!free_of_jet(d));
}

TEST_CASE("gauge moves h by a linear function and the constant by a shift") {
  const BetaParams<MPoly> b0 = symbolic_beta();
  const MPoly al = MPoly::var("al"), ga = MPoly::var("ga");
  const JetVars j = jet_vars();
  const MPoly &t = j.t;
  const MPoly A = al * q_of(1, 2), G = ga * q_of(1, 2);
  // h_f = h_g + A (t - 1) + G t
  const MPoly hf = j.h[0] + A * (t - MPoly(1)) + G * t, hf1 = j.h[1] + A + G;
  BetaParams<MPoly> b = b0;
  b(4) = -(b(5) * q_of(1, 2)) - b(6);
  const BetaParams<MPoly> g = gauge_beta(b, al, ga);
  CHECK(g.reducible_to_second_order());
  CHECK(third_order_residual(b, t, hf, hf1, j.h[2], j.h[3]) ==
        third_order_residual(g, t, j.h[0], j.h[1], j.h[2], j.h[3]));
  const MPoly shift = second_order_expression(b, t, hf, hf1, j.h[2]) -
                      second_order_expression(g, t, j.h[0], j.h[1], j.h[2]);
  CHECK(free_of_jet(shift));
  CHECK(shift == gauge_constant_shift(b, al, ga));
}

TEST_CASE("normalized chart constant") {
  const ThetaParams<MPoly> th = symbolic_theta();
  const BetaParams<MPoly> b = theta_to_beta(th);
  const auto [al, ga] = normalizing_gauge(b);
  const JetVars j = jet_vars();
  const MPoly &t = j.t;
  const MPoly A = al * q_of(1, 2), G = ga * q_of(1, 2);
  const MPoly hf = j.h[0] + A * (t - MPoly(1)) + G * t, hf1 = j.h[1] + A + G;
  const MPoly S = sigma_form_residual(th, t, hf, hf1, j.h[2]);
  const MPoly E = second_order_expression(theta_to_beta_normalized(th), t, j.h[0], j.h[1], j.h[2]);
  CHECK(S - E == sigma_constant_normalized(th));
}

TEST_CASE("sigma constant at sample points") {
  CHECK(sigma_constant(ThetaParams<Rational>{0, 0, 0, 0, 0}) == 0);
  // theta0 = 1, theta1 = 1, kappa2 = 1, K = 2, C = -(2 * 2)^2
  CHECK(sigma_constant(ThetaParams<Rational>{1, 1, -2, -1, 1}) == -16);
}

TEST_CASE("h from (q, p) at the origin of theta") {
  const ThetaParams<Rational> th{0, 0, 0, 0, 0};
  for (int trial = 0; trial < 10; ++trial) {
    const Rational t = rand_q() + q_of(1, 7), q = rand_q() + q_of(1, 11), p = rand_q();
    if (t == 0 || t == 1) continue;
    const Rational want = q * (q - 1) * (q - t) * p * p + q * (t - 1) * p;
    CHECK(h_from_qp(th, t, q, p) == want);
  }
  CHECK(h_from_qp(th, Rational(q_of(1, 2)), Rational(q_of(1, 3)), Rational(0)) == 0);
  CHECK_THROWS_AS(h_from_qp(th, Rational(0), Rational(2), Rational(1)), PoleAtT);
  CHECK_THROWS_AS(h_from_qp(th, Rational(1), Rational(2), Rational(1)), PoleAtT);
}

TEST_CASE("h from (q, p) with p = 0 is K (q - t)") {
  for (int trial = 0; trial < 10; ++trial) {
    const ThetaParams<Rational> th = rand_theta();
    const Rational t = q_of(3, 7), q = rand_q();
    CHECK(h_from_qp(th, t, q, Rational(0)) == th.K() * (q - t));
  }
}

TEST_CASE("recovery guards") {
  ThetaParams<Rational> th = theta_from_four(Rational(-1), Rational(1), Rational(2), Rational(0));
  CHECK_THROWS_AS(recover_p(th, Rational(2), Rational(1), Rational(1), Rational(3)), DegenerateTheta);
  CHECK_THROWS_AS(recover_q(th, Rational(2), Rational(1), Rational(1), Rational(1)), DegenerateTheta);
  th = theta_from_four(Rational(0), Rational(1), Rational(2), Rational(0));
  for (const Rational q : {Rational(0), Rational(1), Rational(2)})
    CHECK_THROWS_AS(recover_p(th, Rational(2), Rational(1), Rational(1), q), PoleAtQ);
  // all-zero theta: D = h'^2
  const ThetaParams<Rational> z{0, 0, 0, 0, 0};
  CHECK_THROWS_AS(recover_q(z, Rational(2), Rational(1), Rational(0), Rational(1)), DenominatorZero);
}

TEST_CASE("second-order reduction needs 2 beta4 + beta5 + 2 beta6 = 0") {
  BetaParams<Rational> b(1, 2, 3, 4, 5, 6);
  CHECK_THROWS_AS(second_order_residual(b, Rational(2), Rational(1), Rational(1), Rational(1), Rational(0)),
                  NotIntegrable);
  CHECK_THROWS_AS(estimate_C(b, Rational(2), Rational(1), Rational(1), Rational(1)), NotIntegrable);
  b(4) = -(b(5) / 2) - b(6);
  const Rational C = estimate_C(b, Rational(2), Rational(1), Rational(1), Rational(1));
  CHECK(second_order_residual(b, Rational(2), Rational(1), Rational(1), Rational(1), C) == 0);
}

TEST_CASE("s derivatives follow the chain rule") {
  // oracle: d/ds = t(t-1) d/dt applied to a polynomial h(t)
  const int tv = intern_variable("t");
  const MPoly T = MPoly::var("t");
  const MPoly u = T * (T - MPoly(1));
  for (int trial = 0; trial < 10; ++trial) {
    MPoly h;
    for (int d = 0; d <= 5; ++d) h += T.pow(d) * rand_q();
    std::array<MPoly, 4> dt{h}, ds{h};
    for (int i = 1; i < 4; ++i) {
      dt[static_cast<std::size_t>(i)] = dt[static_cast<std::size_t>(i - 1)].derivative(tv);
      ds[static_cast<std::size_t>(i)] = u * ds[static_cast<std::size_t>(i - 1)].derivative(tv);
    }
    const Rational t0 = rand_q() + q_of(1, 13);
    if (t0 == 0 || t0 == 1) continue;
    auto at = [&](const MPoly& p) { return p.substitute(tv, MPoly(t0)).constant(); };
    std::array<Rational, 4> hd, hs;
    for (std::size_t i = 0; i < 4; ++i) {
      hd[i] = at(dt[i]);
      hs[i] = at(ds[i]);
    }
    const auto got = to_s_derivatives(t0, hd);
    for (std::size_t i = 0; i < 4; ++i) CHECK(got[i] == hs[i]);
    const auto back = from_s_derivatives(t0, hs);
    for (std::size_t i = 0; i < 4; ++i) CHECK(back[i] == hd[i]);
  }
  CHECK_THROWS_AS(from_s_derivatives(Rational(1), std::array<Rational, 4>{}), PoleAtT);
}

TEST_CASE("Hirota pairs in s give the log derivatives of f") {
  const Rational sigma = q_of(2, 9);
  const int W = 5;
  const SigmaSeries<Rational> f = random_series(sigma, W);
  const SigmaSeries<Rational> h = h_series_from_tau(f);
  const SigmaSeries<Rational> hs = apply_ds(h), hss = apply_ds(hs), hsss = apply_ds(hss);
  const SigmaSeries<Rational> two_f2 = series_scale(series_mul(f, f), Rational(2));
  const SigmaSeries<Rational> D2 = series_div(hirota_pair_s(2, f), two_f2);
  const SigmaSeries<Rational> D2s = series_div(apply_ds(hirota_pair_s(2, f)), two_f2);
  const SigmaSeries<Rational> D4 = series_div(hirota_pair_s(4, f), two_f2);
  CHECK(series_sub(hs, D2).is_zero());
  CHECK(series_sub(series_add(hss, series_scale(series_mul(h, hs), Rational(2))), D2s).is_zero());
  CHECK(series_sub(series_add(hsss, series_scale(series_mul(hs, hs), Rational(6))), D4).is_zero());
}

TEST_CASE("tau series give solutions of the third-order equation") {
  for (int trial = 0; trial < 3; ++trial) {
    const BetaParams<Rational> b = theta_to_beta(rand_theta());
    const SigmaSeries<Rational> f = solve_series(b, SeedData<Rational>{q_of(3, 11), 1, rand_q(), rand_q(), 5});
    const SigmaSeries<Rational> h = h_series_from_tau(f);
    CHECK(third_order_residual_series(b, h).is_zero());
  }
  // general beta, not reducible to second order
  const BetaParams<Rational> b = rand_beta();
  const SigmaSeries<Rational> f = solve_series(b, SeedData<Rational>{q_of(1, 7), 2, 1, -1, 5});
  CHECK(third_order_residual_series(b, h_series_from_tau(f)).is_zero());
}

TEST_CASE("a random series is not a solution") {
  const BetaParams<Rational> b = rand_beta();
  const SigmaSeries<Rational> f = random_series(q_of(3, 11), 4).with_alpha(-(b(1) / 4));
  CHECK(!third_order_residual_series(b, h_series_from_tau(f)).is_zero());
}

TEST_CASE("zero seeds on the collapse locus give a pure power") {
  for (int trial = 0; trial < 5; ++trial) {
    BetaParams<Rational> b = rand_beta();
    const Rational sigma = rand_q() / 3 + q_of(1, 101);
    const Rational rho = sigma * sigma - b(1) / 4;
    b(2) = -4 * rho * rho - 2 * rho * b(4);
    b(3) = 4 * rho * rho + 2 * rho * (b(1) + b(4) + b(5) + b(6));
    const SigmaSeries<Rational> f = solve_series(b, SeedData<Rational>{sigma, 3, 0, 0, 5});
    REQUIRE(f.terms().size() == 1);
    CHECK(f.coeff({0, 0}) == 3);
    // h = (t - 1) rho
    const SigmaSeries<Rational> h = h_series_from_tau(f);
    CHECK(h.coeff({0, 0}) == -rho);
    CHECK(h.coeff({1, 1}) == rho);
    CHECK(h.terms().size() == (rho == 0 ? 0u : 2u));
  }
}

TEST_CASE("zero seeds off the collapse locus stay on the diagonal") {
  const BetaParams<Rational> b = rand_beta();
  const SigmaSeries<Rational> f = solve_series(b, SeedData<Rational>{q_of(3, 13), 1, 0, 0, 5});
  for (const auto& [k, c] : f.terms()) CHECK(k.m2 == k.n2);
  CHECK(f.terms().size() > 1);
}
