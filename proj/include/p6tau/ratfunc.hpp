#pragma once

#include <string>
#include <string_view>

#include "p6tau/upoly.hpp"

namespace p6tau {

// Element of Q(sigma). Canonical form: gcd(num, den) = 1, den monic,
// zero is 0/1. Equality is therefore structural.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(UPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(UPoly num, UPoly den);

  static RatFunc sigma() { return RatFunc(UPoly::x()); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator-(RatFunc a);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // sigma -> -sigma
  RatFunc reflect() const;

  template <class T>
  T evaluate(const T& x) const {
    return num_.evaluate(x) / den_.evaluate(x);
  }

  std::string to_string() const;

 private:
  void normalize();
  UPoly num_;
  UPoly den_;
};

// Parses a polynomial in sigma written with + - * / ^ and rational constants.
UPoly parse_sigma_poly(std::string_view text);
RatFunc parse_ratfunc(std::string_view num, std::string_view den);

}  // namespace p6tau
