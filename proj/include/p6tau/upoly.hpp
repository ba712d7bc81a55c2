#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "p6tau/rational.hpp"

namespace p6tau {

// Dense univariate polynomial over Q, coefficients by ascending degree.
// Invariant: no trailing zero coefficients (the zero polynomial is empty).
class UPoly {
 public:
  UPoly() = default;
  UPoly(long c);  // NOLINT(google-explicit-constructor)
  UPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly monomial(const Rational& c, int degree);
  static UPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return c_.back(); }

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  UPoly& operator*=(const Rational& s);

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Rational& s) { return a *= s; }
  friend UPoly operator-(UPoly a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  // Euclidean division; divisor must be nonzero.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  // Exact quotient; throws InternalMismatch when the remainder is nonzero.
  static UPoly exact_div(const UPoly& a, const UPoly& b);

  UPoly monic() const;
  // p(-x)
  UPoly reflect() const;
  UPoly derivative() const;

  Rational operator()(const Rational& x) const;

  template <class T>
  T evaluate(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  std::string to_string(std::string_view var = "sigma") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(UPoly a, UPoly b);

}  // namespace p6tau
