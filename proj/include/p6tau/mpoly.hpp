#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "p6tau/rational.hpp"

namespace p6tau {

// Variables are interned process-wide; the index is only an identity, all
// printing and canonical ordering go through the name.
int intern_variable(std::string_view name);
const std::string& variable_name(int id);

// Sparse monomial: (variable id, exponent > 0), sorted by id.
using Monomial = std::vector<std::pair<int, int>>;

// Multivariate polynomial over Q.
class MPoly {
 public:
  MPoly() = default;
  MPoly(long c);  // NOLINT(google-explicit-constructor)
  MPoly(const Rational& c);  // NOLINT(google-explicit-constructor)

  static MPoly var(std::string_view name);
  static MPoly var(int id);
  static MPoly term(const Rational& c, Monomial m);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (zero if absent).
  Rational constant() const;
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rational& s);
  // Division by a nonzero constant polynomial.
  MPoly& operator/=(const MPoly& o);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator/(MPoly a, const MPoly& b) { return a /= b; }
  friend MPoly operator-(MPoly a);
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  MPoly pow(int e) const;

  int degree(int var) const;
  int min_degree(int var) const;  // 0 for the zero polynomial
  int total_degree() const;
  // Coefficient of var^k, as a polynomial in the remaining variables.
  MPoly coefficient(int var, int k) const;
  MPoly derivative(int var) const;
  MPoly substitute(int var, const MPoly& value) const;
  // Multiplies by var^k (k may be negative when every term allows it).
  MPoly shift(int var, int k) const;
  std::vector<int> variables() const;

  template <class T, class Lookup>
  T evaluate(Lookup&& value_of) const {
    T acc(0);
    for (const auto& [m, c] : terms_) {
      T x(c);
      for (const auto& [v, e] : m)
        for (int i = 0; i < e; ++i) x = x * value_of(v);
      acc = acc + x;
    }
    return acc;
  }

  // Canonical text: terms ordered by descending total degree then by names.
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

// Parses + - * / ^ and parentheses over rationals and identifiers. Division
// and negative powers are allowed only by nonzero constants.
MPoly parse_mpoly(std::string_view text);

}  // namespace p6tau
