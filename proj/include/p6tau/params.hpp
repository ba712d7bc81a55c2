#pragma once

#include <utility>

#include "p6tau/hirota.hpp"

namespace p6tau {

template <class S>
struct ThetaParams {
  S theta0, theta1, thetat, kappa1, kappa2;

  S sum() const { return theta0 + theta1 + thetat + kappa1 + kappa2; }
  // kappa2 (theta1 + kappa2), recurring in every chart
  S K() const { return kappa2 * (theta1 + kappa2); }
};

template <class S>
struct AbcdParams {
  S a, b, c, d;
};

// Closeness test used by guards: exact modes compare with zero, numeric
// modes against tol.
template <class S>
bool near_zero(const S& x, double tol) {
  if constexpr (std::is_same_v<S, BigComplex>) {
    return abs(x) < tol;
  } else if constexpr (std::is_same_v<S, std::complex<double>> || std::is_same_v<S, double>) {
    return std::abs(x) < tol;
  } else {
    (void)tol;
    return scalar_is_zero(x);
  }
}

template <class S>
void require_theta_invariant(const ThetaParams<S>& p) {
  if (!near_zero(p.sum(), 1e-12))
    throw InvariantViolated("theta0 + theta1 + thetat + kappa1 + kappa2 must vanish");
}

template <class S>
ThetaParams<S> theta_from_four(S theta0, S theta1, S thetat, S kappa1) {
  S kappa2 = -(theta0 + theta1 + thetat + kappa1);
  return {theta0, theta1, thetat, kappa1, kappa2};
}

template <class S>
AbcdParams<S> theta_to_abcd(const ThetaParams<S>& p) {
  require_theta_invariant(p);
  const S half = from_q<S>(1, 2);
  const S k = p.kappa1 - p.kappa2 - from_q<S>(1);
  return {p.theta1 * p.theta1 * half, -(p.thetat * p.thetat * half), k * k * half,
          (from_q<S>(1) - p.theta0 * p.theta0) * half};
}

inline BigComplex scalar_sqrt(const BigComplex& x) { return sqrt(x); }
inline std::complex<double> scalar_sqrt(const std::complex<double>& x) { return std::sqrt(x); }
inline Rational scalar_sqrt(const Rational& x) {
  if (sgn(x) < 0) throw InvalidInput("no rational square root of a negative number");
  mpz_class n = x.get_num(), d = x.get_den(), rn, rd;
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    throw InvalidInput("not a rational square: " + to_string(x));
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

// Sign choices for the square roots: theta1 = s1 sqrt(2a), thetat = st sqrt(-2b),
// kappa1 - kappa2 - 1 = sk sqrt(2c), theta0 = s0 sqrt(1 - 2d).
struct AbcdBranch {
  int s0 = 1, s1 = 1, st = 1, sk = 1;
};

template <class S>
ThetaParams<S> abcd_to_theta(const AbcdParams<S>& q, const AbcdBranch& br) {
  auto sg = [](int s) {
    if (s != 1 && s != -1) throw InvalidInput("branch signs must be +1 or -1");
    return from_q<S>(s);
  };
  const S two = from_q<S>(2), one = from_q<S>(1);
  S theta1 = sg(br.s1) * scalar_sqrt(two * q.a);
  S thetat = sg(br.st) * scalar_sqrt(-(two * q.b));
  S diff = one + sg(br.sk) * scalar_sqrt(two * q.c);  // kappa1 - kappa2
  S theta0 = sg(br.s0) * scalar_sqrt(one - two * q.d);
  S sum12 = -(theta0 + theta1 + thetat);  // kappa1 + kappa2
  S kappa1 = (sum12 + diff) * from_q<S>(1, 2);
  S kappa2 = (sum12 - diff) * from_q<S>(1, 2);
  return {theta0, theta1, thetat, kappa1, kappa2};
}

// The beta chart of the sixth Painleve bilinear form, with
//   beta1 = (theta0 + thetat + 1)^2,
//   beta5/2 = (theta0 - thetat + 1)(kappa1 - kappa2 - 1) - thetat (theta0 + thetat + 1) + 2K,
// the values that make the third-order equation the derivative of the
// sigma form.
template <class S>
BetaParams<S> theta_to_beta(const ThetaParams<S>& p) {
  require_theta_invariant(p);
  const S one = from_q<S>(1), two = from_q<S>(2);
  const S K = p.K();
  const S k = p.kappa1 - p.kappa2 - one;
  const S a = p.theta0 + p.thetat + one;
  BetaParams<S> b;
  b(1) = a * a;
  b(2) = two * (p.theta0 + one) * K * (p.kappa2 - p.kappa1 + p.thetat + one);
  b(3) = -(two * a * (p.theta0 + one) * K);
  b(6) = (p.thetat + k) * (p.thetat + k) - from_q<S>(4) * K;
  b(5) = two * ((p.theta0 - p.thetat + one) * k - p.thetat * a + two * K);
  b(4) = -(b(5) * from_q<S>(1, 2)) - b(6);
  return b;
}

// The beta5 = beta6 = 0 chart reached from theta_to_beta by the normalizing
// gauge.
template <class S>
BetaParams<S> theta_to_beta_normalized(const ThetaParams<S>& p) {
  require_theta_invariant(p);
  const S one = from_q<S>(1);
  const S o = p.theta0 + one;
  const S k = p.kappa1 - p.kappa2 - one;
  const S o2 = o * o, t1 = p.theta1 * p.theta1, tt = p.thetat * p.thetat, k2 = k * k;
  const S X = (o + p.theta1) * (o - p.theta1) * (p.thetat + k) * (p.thetat - k);
  const S Yb = o2 - t1 - tt + k2;
  const S Y = Yb * Yb + from_q<S>(4) * (o2 + t1) * (tt + k2);
  BetaParams<S> b;
  b(1) = (o2 + t1 + tt + k2) * from_q<S>(1, 2);
  b(2) = -(X * from_q<S>(1, 4));
  b(3) = -(Y * from_q<S>(1, 16));
  return b;
}

// beta rules of f = t^{alpha/2} (t-1)^{gamma/2} g, i.e. f.f = t^alpha (t-1)^gamma g.g.
template <class S>
BetaParams<S> gauge_beta(const BetaParams<S>& b, const S& al, const S& ga) {
  const S two = from_q<S>(2);
  BetaParams<S> r;
  r(1) = b(1) + two * al;
  r(2) = b(2) + al * al + al * b(4) - ga * ga + ga * (b(4) + b(6));
  r(3) = b(3) - al * (al + b(1) + b(4) + b(5) + b(6)) - ga * b(1) - two * al * ga;
  r(4) = b(4) + two * al;
  r(5) = b(5) + from_q<S>(4) * ga;
  r(6) = b(6) - two * al - two * ga;
  return r;
}

// (alpha, gamma) with beta5' = beta6' = 0.
template <class S>
std::pair<S, S> normalizing_gauge(const BetaParams<S>& b) {
  S ga = -(b(5) * from_q<S>(1, 4));
  S al = b(6) * from_q<S>(1, 2) - ga;
  return {al, ga};
}

struct P6Flags {
  bool reducible;   // J = 0
  bool beta4_zero;  // sixth Painleve form in the current gauge
};

template <class S>
P6Flags p6_flag(const BetaParams<S>& b) {
  return {b.reducible_to_second_order(), b.beta4_zero()};
}

// Operator-level gauge: with f = phi g, phi = t^a (t-1)^c, returns
// (t-1)^K phi^{-2} P[f] as a differential polynomial in g (K = max order).
DiffPoly conjugate_by_gauge(const DiffPoly& p, const MPoly& a, const MPoly& c);

}  // namespace p6tau
