#include "p6tau/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "p6tau/errors.hpp"

namespace p6tau {

UPoly::UPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

UPoly::UPoly(const Rational& c) {
  if (!p6tau::is_zero(c)) c_.push_back(c);
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const Rational& c, int degree) {
  UPoly p;
  if (p6tau::is_zero(c)) return p;
  p.c_.assign(static_cast<std::size_t>(degree) + 1, Rational(0));
  p.c_.back() = c;
  return p;
}

Rational UPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<std::size_t>(i)];
}

void UPoly::trim() {
  while (!c_.empty() && p6tau::is_zero(c_.back())) c_.pop_back();
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (p6tau::is_zero(a.c_[i])) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly& UPoly::operator*=(const UPoly& o) { return *this = *this * o; }

UPoly& UPoly::operator*=(const Rational& s) {
  if (p6tau::is_zero(s)) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

UPoly operator-(UPoly a) {
  for (auto& c : a.c_) c = -c;
  return a;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rational(0));
  const Rational inv_lead = 1 / b.leading();
  const int db = b.degree();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational& top = rem[static_cast<std::size_t>(k + db)];
    if (p6tau::is_zero(top)) continue;
    Rational q = top * inv_lead;
    for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k + i)] -= q * b.c_[static_cast<std::size_t>(i)];
    quo[static_cast<std::size_t>(k)] = q;
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly UPoly::exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InternalMismatch("inexact polynomial division");
  return q;
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * Rational(1 / leading());
}

UPoly UPoly::reflect() const {
  UPoly r = *this;
  for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
  return r;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(d));
}

Rational UPoly::operator()(const Rational& x) const { return evaluate<Rational>(x); }

std::string UPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[static_cast<std::size_t>(i)];
    if (p6tau::is_zero(c)) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (i == 0) {
      out << p6tau::to_string(mag);
      continue;
    }
    if (!unit) out << p6tau::to_string(mag) << "*";
    out << var;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

UPoly gcd(UPoly a, UPoly b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    UPoly r = UPoly::divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

}  // namespace p6tau
