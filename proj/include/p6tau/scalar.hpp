#pragma once

#include <complex>
#include <string>

#include "p6tau/bigcomplex.hpp"
#include "p6tau/mpoly.hpp"
#include "p6tau/ratfunc.hpp"
#include "p6tau/rational.hpp"

namespace p6tau {

// Uniform access to the scalar fields used by the templated algorithms.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static constexpr bool exact() { return true; }
  static std::string to_string(const Rational& x) { return p6tau::to_string(x); }
};

template <>
struct ScalarTraits<RatFunc> {
  static RatFunc from_rational(const Rational& q) { return RatFunc(q); }
  static bool is_zero(const RatFunc& x) { return x.is_zero(); }
  static constexpr bool exact() { return true; }
  static std::string to_string(const RatFunc& x) { return x.to_string(); }
};

template <>
struct ScalarTraits<MPoly> {
  static MPoly from_rational(const Rational& q) { return MPoly(q); }
  static bool is_zero(const MPoly& x) { return x.is_zero(); }
  static constexpr bool exact() { return true; }
  static std::string to_string(const MPoly& x) { return x.to_string(); }
};

template <>
struct ScalarTraits<BigComplex> {
  static BigComplex from_rational(const Rational& q) { return BigComplex(q); }
  static bool is_zero(const BigComplex& x) { return p6tau::is_zero(x); }
  static constexpr bool exact() { return false; }
  static std::string to_string(const BigComplex& x) { return p6tau::to_string(x); }
};

template <>
struct ScalarTraits<double> {
  static double from_rational(const Rational& q) { return q.get_d(); }
  static bool is_zero(double x) { return x == 0.0; }
  static constexpr bool exact() { return false; }
  static std::string to_string(double x) { return std::to_string(x); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  using C = std::complex<double>;
  static C from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
  static bool is_zero(const C& x) { return x == C(0.0); }
  static constexpr bool exact() { return false; }
  static std::string to_string(const C& x) {
    return std::to_string(x.real()) + (x.imag() < 0 ? "" : "+") + std::to_string(x.imag()) + "i";
  }
};

template <class S>
S from_q(const Rational& q) {
  return ScalarTraits<S>::from_rational(q);
}

template <class S>
S from_q(long p, long q = 1) {
  return ScalarTraits<S>::from_rational(q_of(p, q));
}

template <class S>
bool scalar_is_zero(const S& x) {
  return ScalarTraits<S>::is_zero(x);
}

}  // namespace p6tau
