#pragma once

#include <random>

#include "p6tau/params.hpp"

namespace testing_support {

using namespace p6tau;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

// Small random rational p/q, p in [-lo..hi], q in [1..den].
inline Rational rand_q(int range = 9, int den = 5) {
  std::uniform_int_distribution<int> p(-range, range), q(1, den);
  return q_of(p(rng()), q(rng()));
}

inline BetaParams<Rational> rand_beta() {
  BetaParams<Rational> b;
  for (int i = 1; i <= 6; ++i) b(i) = rand_q();
  return b;
}

inline ThetaParams<Rational> rand_theta() {
  return theta_from_four(rand_q(), rand_q(), rand_q(), rand_q());
}

template <class S, class T>
BetaParams<S> convert_beta(const BetaParams<T>& b) {
  BetaParams<S> r;
  for (int i = 1; i <= 6; ++i) r(i) = S(b(i));
  return r;
}

}  // namespace testing_support
