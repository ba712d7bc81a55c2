#pragma once

#include <array>

#include "p6tau/params.hpp"

namespace p6tau {

// Default guard thresholds in numeric modes.
inline constexpr double kPoleTol = 1e-10;
inline constexpr double kDenominatorTol = 1e-12;

// t(t-1) H = q(q-1)(q-t) p^2 + B p + K q - t (thetat + kappa1) thetat - theta0 thetat
template <class S>
S hamiltonian_B(const ThetaParams<S>& th, const S& t, const S& q) {
  const S one = from_q<S>(1);
  return th.thetat * (q - one) * (q - t) + (th.kappa1 - th.kappa2 - one) * q * (q - t) +
         (th.theta0 + one) * q * (q - one);
}

template <class S>
S hamiltonian_value(const ThetaParams<S>& th, const S& t, const S& q, const S& p) {
  const S one = from_q<S>(1);
  if (near_zero<S>(t, kPoleTol) || near_zero<S>(t - one, kPoleTol)) throw PoleAtT("Hamiltonian at t = 0 or 1");
  const S A = q * (q - one) * (q - t);
  const S tH = A * p * p + hamiltonian_B(th, t, q) * p + th.K() * q -
               t * (th.thetat + th.kappa1) * th.thetat - th.theta0 * th.thetat;
  return tH / (t * (t - one));
}

// h = t(t-1)H - K t + t (thetat + kappa1) thetat + theta0 thetat, in its
// polynomial form; both lines are computed and must agree.
template <class S>
S h_polynomial(const ThetaParams<S>& th, const S& t, const S& q, const S& p) {
  const S one = from_q<S>(1);
  return q * (q - one) * (q - t) * p * p + hamiltonian_B(th, t, q) * p + th.K() * (q - t);
}

template <class S>
S h_from_qp(const ThetaParams<S>& th, const S& t, const S& q, const S& p) {
  const S line2 = h_polynomial(th, t, q, p);
  const S one = from_q<S>(1);
  const S line1 = t * (t - one) * hamiltonian_value(th, t, q, p) - th.K() * t +
                  t * (th.thetat + th.kappa1) * th.thetat + th.theta0 * th.thetat;
  if constexpr (ScalarTraits<S>::exact()) {
    if (!scalar_is_zero<S>(line1 - line2)) throw InternalMismatch("h_from_qp: the two forms of h disagree");
  } else {
    using std::abs;
    auto mag = [](const S& x) { return static_cast<double>(abs(x)); };
    if (mag(line1 - line2) > 1e-9 * (1.0 + mag(line2)))
      throw InternalMismatch("h_from_qp: the two forms of h disagree");
  }
  return line2;
}

template <class S>
void require_nondegenerate_theta(const ThetaParams<S>& th) {
  if (near_zero<S>(th.theta0 + from_q<S>(1), kPoleTol)) throw DegenerateTheta("theta0 = -1");
}

// p = (h + (q - t) h') / ((theta0 + 1) q (q - 1))
template <class S>
S recover_p(const ThetaParams<S>& th, const S& t, const S& h, const S& dh, const S& q) {
  require_nondegenerate_theta(th);
  const S one = from_q<S>(1);
  if (near_zero<S>(q, kPoleTol) || near_zero<S>(q - one, kPoleTol) || near_zero<S>(q - t, kPoleTol))
    throw PoleAtQ("q at a fixed singularity");
  return (h + (q - t) * dh) / ((th.theta0 + one) * q * (q - one));
}

// q = -N / (2D)
template <class S>
S recover_q(const ThetaParams<S>& th, const S& t, const S& h, const S& dh, const S& d2h) {
  require_nondegenerate_theta(th);
  const S one = from_q<S>(1), two = from_q<S>(2);
  const S o = th.theta0 + one;
  const S K = th.K();
  const S k = th.kappa1 - th.kappa2 - one;
  const S N = t * (t - one) * d2h - (t * dh - h) * (two * dh / o + th.thetat + k) -
              (th.theta0 + th.thetat + one) * dh - o * K;
  const S D = dh * (dh / o + th.theta0 + th.thetat + th.kappa1 - th.kappa2) + o * K;
  if (near_zero<S>(D, kDenominatorTol)) throw DenominatorZero("q recovery denominator vanishes");
  return -(N / (two * D));
}

// Sigma form S(h, h', h''), zero on Hamiltonian trajectories.
template <class S>
S sigma_form_residual(const ThetaParams<S>& th, const S& t, const S& h, const S& dh, const S& d2h) {
  const S one = from_q<S>(1), two = from_q<S>(2), four = from_q<S>(4);
  const S K = th.K();
  const S k = th.kappa1 - th.kappa2 - one;
  const S a = th.theta0 + th.thetat + one;
  const S e = t * dh - h;
  const S lin = ((th.theta0 - th.thetat + one) * k - th.thetat * a + two * K) / two;
  const S cst = (th.theta0 + one) * K * (th.kappa1 - th.kappa2 - th.thetat - one) / two;
  const S tt = t * (t - one) * d2h;
  const S w = a * dh + (th.theta0 + one) * K;
  return tt * tt - (-(four * dh + four * K - (th.thetat + k) * (th.thetat + k)) * e * e +
                    four * (dh * dh + lin * dh + cst) * e + w * w);
}

template <class S>
S third_order_residual(const BetaParams<S>& b, const S& t, const S& h, const S& dh, const S& d2h,
                       const S& d3h) {
  const S one = from_q<S>(1), two = from_q<S>(2);
  const S u = t * (t - one);
  const S tm = two * t - one;
  return u * u * d3h + tm * u * d2h + from_q<S>(6) * u * dh * dh - from_q<S>(4) * tm * h * dh +
         two * h * h - (b(1) + t * b(5) + t * t * b(6)) * dh +
         (b(4) + b(5) + (t + one) * b(6)) * h + (b(2) * t + b(3)) / two;
}

// The first integral of the third-order equation, without its constant.
template <class S>
S second_order_expression(const BetaParams<S>& b, const S& t, const S& h, const S& dh, const S& d2h) {
  const S one = from_q<S>(1), four = from_q<S>(4);
  const S u = t * (t - one);
  const S tm = from_q<S>(2) * t - one;
  const S e = t * dh - h;
  return u * u * d2h * d2h + four * u * dh * dh * dh - four * tm * h * dh * dh + four * h * h * dh -
         b(1) * dh * dh + b(2) * e + b(3) * dh + b(5) * (h * dh - t * dh * dh) +
         b(6) * (from_q<S>(2) * t * h * dh - t * t * dh * dh - h * h);
}

template <class S>
void require_integrable(const BetaParams<S>& b) {
  if (!b.reducible_to_second_order())
    throw NotIntegrable("2 beta4 + beta5 + 2 beta6 must vanish for the second-order reduction");
}

template <class S>
S second_order_residual(const BetaParams<S>& b, const S& t, const S& h, const S& dh, const S& d2h,
                        const S& C) {
  require_integrable(b);
  return second_order_expression(b, t, h, dh, d2h) + C;
}

// C from one point of a solution.
template <class S>
S estimate_C(const BetaParams<S>& b, const S& t, const S& h, const S& dh, const S& d2h) {
  require_integrable(b);
  return -second_order_expression(b, t, h, dh, d2h);
}

// C for which the second-order equation in the theta chart is the sigma form.
template <class S>
S sigma_constant(const ThetaParams<S>& th) {
  const S w = (th.theta0 + from_q<S>(1)) * th.K();
  return -(w * w);
}

// Change of C under a gauge (alpha, gamma): with h_f = h_g + (alpha/2)(t-1) + (gamma/2) t,
// E(beta; h_f) - E(beta'; h_g) is constant, so it is read off at h_g = 0, t = 0.
template <class S>
S gauge_constant_shift(const BetaParams<S>& b, const S& al, const S& ga) {
  const S z = from_q<S>(0);
  const S A = al * from_q<S>(1, 2), C = ga * from_q<S>(1, 2);
  return second_order_expression(b, z, -A, A + C, z);
}

template <class S>
S sigma_constant_normalized(const ThetaParams<S>& th) {
  const BetaParams<S> b = theta_to_beta(th);
  const auto [al, ga] = normalizing_gauge(b);
  return sigma_constant(th) + gauge_constant_shift(b, al, ga);
}

// ---- t <-> s = log(t/(t-1)) style variable, d/ds = t(t-1) d/dt ----

template <class S>
std::array<S, 4> to_s_derivatives(const S& t, const std::array<S, 4>& hd) {
  const S one = from_q<S>(1), two = from_q<S>(2);
  const S u = t * (t - one), up = two * t - one;
  return {hd[0], u * hd[1], u * up * hd[1] + u * u * hd[2],
          u * (up * up + two * u) * hd[1] + from_q<S>(3) * u * u * up * hd[2] + u * u * u * hd[3]};
}

template <class S>
std::array<S, 4> from_s_derivatives(const S& t, const std::array<S, 4>& hs) {
  const S one = from_q<S>(1), two = from_q<S>(2);
  if (near_zero<S>(t, kPoleTol) || near_zero<S>(t - one, kPoleTol)) throw PoleAtT("s variable at t = 0 or 1");
  const S u = t * (t - one), up = two * t - one;
  const S d1 = hs[1] / u;
  const S d2 = (hs[2] - u * up * d1) / (u * u);
  const S d3 = (hs[3] - u * (up * up + two * u) * d1 - from_q<S>(3) * u * u * up * d2) / (u * u * u);
  return {hs[0], d1, d2, d3};
}

// ---- series side ----

// (t-1) X = t X - X
template <class S>
SigmaSeries<S> times_t_minus_one(const SigmaSeries<S>& x) {
  return series_sub(shift_t_power(x, 1), x);
}

// h = t(t-1) d/dt log f = (t-1) delta f / f
template <class S>
SigmaSeries<S> h_series_from_tau(const SigmaSeries<S>& f) {
  return times_t_minus_one(series_div(apply_delta(f), f));
}

// d/ds on series
template <class S>
SigmaSeries<S> apply_ds(const SigmaSeries<S>& x) {
  return times_t_minus_one(apply_delta(x));
}

// D_s^N f.f
template <class S>
SigmaSeries<S> hirota_pair_s(int N, const SigmaSeries<S>& f) {
  std::vector<SigmaSeries<S>> d{f};
  for (int i = 1; i <= N; ++i) d.push_back(apply_ds(d.back()));
  std::optional<SigmaSeries<S>> acc;
  for (int i = 0; i <= N; ++i) {
    Rational c = binomial(N, i);
    if (i % 2) c = -c;
    SigmaSeries<S> term =
        series_scale(series_mul(d[static_cast<std::size_t>(N - i)], d[static_cast<std::size_t>(i)]), from_q<S>(c));
    acc = acc ? series_add(*acc, term) : term;
  }
  return *acc;
}

// t times the third-order residual, written with delta = t d/dt so that it
// stays a series.
template <class S>
SigmaSeries<S> third_order_residual_series(const BetaParams<S>& b, const SigmaSeries<S>& h) {
  auto T = [](const SigmaSeries<S>& x, int p) { return shift_t_power(x, p); };
  auto sc = [](const SigmaSeries<S>& x, const S& c) { return series_scale(x, c); };
  auto add = [](const SigmaSeries<S>& x, const SigmaSeries<S>& y) { return series_add(x, y); };
  const S one = from_q<S>(1), two = from_q<S>(2);
  const SigmaSeries<S> d1 = apply_delta(h), d2 = apply_delta(d1), d3 = apply_delta(d2);
  // (t-1)^2 (delta^3 - 3 delta^2 + 2 delta) h
  SigmaSeries<S> a = add(add(d3, sc(d2, from_q<S>(-3))), sc(d1, two));
  SigmaSeries<S> r = add(add(T(a, 2), sc(T(a, 1), from_q<S>(-2))), a);
  // (2t-1)(t-1)(delta^2 - delta) h = (2t^2 - 3t + 1)(...)
  SigmaSeries<S> c = series_sub(d2, d1);
  r = add(r, add(add(sc(T(c, 2), two), sc(T(c, 1), from_q<S>(-3))), c));
  // 6 (t-1)(delta h)^2
  SigmaSeries<S> dd = series_mul(d1, d1);
  r = add(r, sc(times_t_minus_one(dd), from_q<S>(6)));
  // -4 (2t-1) h delta h
  SigmaSeries<S> hd = series_mul(h, d1);
  r = add(r, add(sc(T(hd, 1), from_q<S>(-8)), sc(hd, from_q<S>(4))));
  // 2 t h^2
  r = add(r, sc(T(series_mul(h, h), 1), two));
  // -(b1 + t b5 + t^2 b6) delta h
  r = add(r, add(add(sc(d1, -b(1)), sc(T(d1, 1), -b(5))), sc(T(d1, 2), -b(6))));
  // t (b4 + b5 + b6 + t b6) h
  r = add(r, add(sc(T(h, 1), b(4) + b(5) + b(6)), sc(T(h, 2), b(6))));
  // t (b2 t + b3) / 2: a constant times t, t^2
  const SigmaSeries<S> unit = series_constant(h.sigma(), h.trunc_weight(), one);
  const SigmaSeries<S> unit_h = unit.with_alpha(h.alpha());
  r = add(r, add(sc(T(unit_h, 1), b(3) / two), sc(T(unit_h, 2), b(2) / two)));
  return r;
}

// ---- symbolic jets ----

// Total t-derivative on polynomials in t, h0..h4 (h_{i+1} = d h_i / dt).
MPoly total_derivative_t(const MPoly& p);

// The jet variables as polynomials.
struct JetVars {
  MPoly t;
  std::array<MPoly, 5> h;
};
JetVars jet_vars();

}  // namespace p6tau
