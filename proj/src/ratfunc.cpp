#include "p6tau/ratfunc.hpp"

#include "p6tau/errors.hpp"
#include "p6tau/mpoly.hpp"

namespace p6tau {

RatFunc::RatFunc(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw InvalidInput("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = UPoly(1);
    return;
  }
  if (den_.degree() > 0) {
    UPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = UPoly::exact_div(num_, g);
      den_ = UPoly::exact_div(den_, g);
    }
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    Rational inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

// Henrici-style: cancel the denominator gcd before multiplying out.
RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  if (den_.degree() == 0 && o.den_.degree() == 0) {
    num_ += o.num_;
    return *this;
  }
  UPoly g = gcd(den_, o.den_);
  if (g.degree() == 0) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
  }
  UPoly d1 = UPoly::exact_div(den_, g);
  UPoly d2 = UPoly::exact_div(o.den_, g);
  num_ = num_ * d2 + o.num_ * d1;
  den_ = d1 * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.degree() == 0 && o.den_.degree() == 0) {
    num_ *= o.num_;
    return *this;
  }
  UPoly g1 = gcd(num_, o.den_);
  UPoly g2 = gcd(o.num_, den_);
  UPoly n1 = g1.degree() > 0 ? UPoly::exact_div(num_, g1) : num_;
  UPoly e2 = g1.degree() > 0 ? UPoly::exact_div(o.den_, g1) : o.den_;
  UPoly n2 = g2.degree() > 0 ? UPoly::exact_div(o.num_, g2) : o.num_;
  UPoly e1 = g2.degree() > 0 ? UPoly::exact_div(den_, g2) : den_;
  num_ = n1 * n2;
  den_ = e1 * e2;
  Rational lead = den_.leading();
  if (lead != 1) {
    Rational inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw InvalidInput("division by zero in Q(sigma)");
  return *this *= RatFunc(o.den_, o.num_);
}

RatFunc operator-(RatFunc a) {
  a.num_ = -a.num_;
  return a;
}

RatFunc RatFunc::reflect() const { return RatFunc(num_.reflect(), den_.reflect()); }

std::string RatFunc::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

UPoly parse_sigma_poly(std::string_view text) {
  MPoly p = parse_mpoly(text);
  int s = intern_variable("sigma");
  for (int v : p.variables())
    if (v != s) throw InvalidInput("unexpected variable '" + variable_name(v) + "' in a polynomial of sigma");
  std::vector<Rational> c(static_cast<std::size_t>(p.degree(s)) + 1, Rational(0));
  for (int k = 0; k <= p.degree(s); ++k) c[static_cast<std::size_t>(k)] = p.coefficient(s, k).constant();
  return UPoly(std::move(c));
}

RatFunc parse_ratfunc(std::string_view num, std::string_view den) {
  return RatFunc(parse_sigma_poly(num), parse_sigma_poly(den));
}

}  // namespace p6tau
