#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "p6tau/mpoly.hpp"

namespace p6tau {

// delta^j D^N acting on f.f, where D is the Hirota derivative in log t.
struct HirotaWord {
  int j = 0;
  int N = 0;
  friend auto operator<=>(const HirotaWord&, const HirotaWord&) = default;
};

std::string to_string(const HirotaWord& w);

// Which derivative the monomial indices count: delta = x d/dx or d/dx.
enum class Basis { Delta, Ddt };

// Homogeneous quadratic differential polynomial
//   sum_{k >= l} c_{k,l}(x) (D^k f)(D^l f)
// with coefficients polynomial in the local variable x (and possibly formal
// parameters). The stored polynomial equals x^shift times the expression it
// was derived from.
class DiffPoly {
 public:
  explicit DiffPoly(std::string_view var = "t", Basis basis = Basis::Delta, int shift = 0);

  int var() const { return var_; }
  const std::string& var_name() const { return variable_name(var_); }
  Basis basis() const { return basis_; }
  int shift() const { return shift_; }
  void set_shift(int s) { shift_ = s; }
  const std::map<std::pair<int, int>, MPoly>& terms() const { return terms_; }

  // Adds c to the coefficient of (D^k f)(D^l f); (k,l) and (l,k) merge.
  void add(int k, int l, const MPoly& c);
  MPoly coeff(int k, int l) const;
  int max_order() const;  // max k+l over nonzero terms, -1 if empty
  bool is_zero() const { return terms_.empty(); }

  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  DiffPoly scaled(const MPoly& c) const;
  DiffPoly substituted(int var, const MPoly& value) const;
  // Same terms, structural equality (shift ignored).
  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

  std::string to_string() const;

 private:
  int var_;
  Basis basis_;
  int shift_;
  std::map<std::pair<int, int>, MPoly> terms_;
};

// The word's action on f.f, derived by the product rule from the
// alternating binomial definition (integer coefficients, variable t).
DiffPoly expand_word(const HirotaWord& w, std::string_view var = "t");

// x = x0 + u; multiplies by u^K (K = max order) to clear the u^{-j}
// denominators of the falling-factorial expansion and records K as shift.
DiffPoly rebase_at(const DiffPoly& p, const Rational& x0, std::string_view new_var);
DiffPoly rebase_at_one(const DiffPoly& p);
// t = 1/s, delta_t = -delta_s, multiplied by s^n (n the top t-degree).
DiffPoly invert_at_infinity(const DiffPoly& p);

// Minimal-degree stratum in the local variable (coefficients free of it),
// with its degree relative to the underlying expression (degree - shift).
std::pair<DiffPoly, int> lowest_term(const DiffPoly& p);

// Divides by the largest power of the local variable dividing every
// coefficient; returns the power removed.
std::pair<DiffPoly, int> divide_out_variable(const DiffPoly& p);

// Template D^4 + (1 + 4 alpha - 2 delta) D^2, times a constant multiple c.
struct TypeHConditions {
  MPoly multiple;                   // c = coefficient of f delta^4 f / 2
  std::vector<MPoly> must_vanish;   // linear in the coefficients of P0
  std::optional<MPoly> alpha;       // set when c is a nonzero constant
};
TypeHConditions typeH_conditions(const DiffPoly& p0);

struct TypeHMatch {
  MPoly alpha;
  MPoly multiple;
};
std::optional<TypeHMatch> match_typeH(const DiffPoly& p0);

// delta^k = sum_j S(k,j) x^j d^j/dx^j
DiffPoly to_ddt_basis(const DiffPoly& p);

// Evaluates the differential polynomial on a polynomial f in the local
// variable.
MPoly apply_to_polynomial(const DiffPoly& p, const MPoly& f);

long stirling2(int n, int k);
long stirling1_signed(int n, int k);

}  // namespace p6tau
