#include "p6tau/diffpoly.hpp"

#include <algorithm>
#include <sstream>

#include "p6tau/errors.hpp"

namespace p6tau {

std::string to_string(const HirotaWord& w) {
  std::string s;
  if (w.j == 1) s += "delta ";
  else if (w.j > 1) s += "delta^" + std::to_string(w.j) + " ";
  if (w.N > 0) s += "D^" + std::to_string(w.N) + " ";
  return s + "f.f";
}

DiffPoly::DiffPoly(std::string_view var, Basis basis, int shift)
    : var_(intern_variable(var)), basis_(basis), shift_(shift) {}

void DiffPoly::add(int k, int l, const MPoly& c) {
  if (k < l) std::swap(k, l);
  if (l < 0) throw InvalidInput("negative derivative order");
  if (c.is_zero()) return;
  auto key = std::make_pair(k, l);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

MPoly DiffPoly::coeff(int k, int l) const {
  if (k < l) std::swap(k, l);
  auto it = terms_.find({k, l});
  return it == terms_.end() ? MPoly() : it->second;
}

int DiffPoly::max_order() const {
  int m = -1;
  for (const auto& kv : terms_) m = std::max(m, kv.first.first + kv.first.second);
  return m;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [kl, c] : o.terms_) add(kl.first, kl.second, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [kl, c] : o.terms_) add(kl.first, kl.second, -c);
  return *this;
}

DiffPoly DiffPoly::scaled(const MPoly& c) const {
  DiffPoly r(var_name(), basis_, shift_);
  for (const auto& [kl, v] : terms_) r.add(kl.first, kl.second, v * c);
  return r;
}

DiffPoly DiffPoly::substituted(int var, const MPoly& value) const {
  DiffPoly r(var_name(), basis_, shift_);
  for (const auto& [kl, v] : terms_) r.add(kl.first, kl.second, v.substitute(var, value));
  return r;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  return a.var_ == b.var_ && a.basis_ == b.basis_ && a.terms_ == b.terms_;
}

std::string DiffPoly::to_string() const {
  if (terms_.empty()) return "0";
  const std::string d = basis_ == Basis::Delta ? "delta" : "d";
  auto factor = [&](int k) {
    if (k == 0) return std::string("f");
    if (k == 1) return d + " f";
    return d + "^" + std::to_string(k) + " f";
  };
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) out << " + ";
    first = false;
    out << "(" << it->second.to_string() << ")*[" << factor(it->first.first) << "]*["
        << factor(it->first.second) << "]";
  }
  return out.str();
}

long stirling2(int n, int k) {
  if (n == 0 && k == 0) return 1;
  if (n <= 0 || k <= 0 || k > n) return 0;
  return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

long stirling1_signed(int n, int k) {
  if (n == 0 && k == 0) return 1;
  if (n <= 0 || k <= 0 || k > n) return 0;
  return stirling1_signed(n - 1, k - 1) - (n - 1) * stirling1_signed(n - 1, k);
}

DiffPoly expand_word(const HirotaWord& w, std::string_view var) {
  // D^N f.f = sum_i (-1)^i C(N,i) (delta^{N-i} f)(delta^i f)
  std::map<std::pair<int, int>, Rational> cur;
  for (int i = 0; i <= w.N; ++i) {
    Rational c = binomial(w.N, i);
    if (i % 2) c = -c;
    cur[{w.N - i, i}] += c;
  }
  // delta (a b) = (delta a) b + a (delta b)
  for (int step = 0; step < w.j; ++step) {
    std::map<std::pair<int, int>, Rational> next;
    for (const auto& [kl, c] : cur) {
      next[{kl.first + 1, kl.second}] += c;
      next[{kl.first, kl.second + 1}] += c;
    }
    cur = std::move(next);
  }
  DiffPoly r(var);
  for (const auto& [kl, c] : cur) r.add(kl.first, kl.second, MPoly(c));
  return r;
}

DiffPoly rebase_at(const DiffPoly& p, const Rational& x0, std::string_view new_var) {
  if (p.basis() != Basis::Delta) throw InvalidInput("rebase expects the delta basis");
  const int x = p.var();
  const int u = intern_variable(new_var);
  const MPoly U = MPoly::var(u);
  const int K = std::max(0, p.max_order());
  DiffPoly r(new_var, Basis::Delta, p.shift() + K);
  // (u + x0)^j u^{K - j}
  std::vector<MPoly> weight(static_cast<std::size_t>(K) + 1);
  for (int j = 0; j <= K; ++j) weight[static_cast<std::size_t>(j)] = (U + MPoly(x0)).pow(j) * U.pow(K - j);
  for (const auto& [kl, c] : p.terms()) {
    const auto [k, l] = kl;
    MPoly cu = c.substitute(x, U + MPoly(x0));
    for (int j1 = 0; j1 <= k; ++j1) {
      long a = stirling2(k, j1);
      if (a == 0) continue;
      for (int j2 = 0; j2 <= l; ++j2) {
        long b = stirling2(l, j2);
        if (b == 0) continue;
        MPoly base = cu * weight[static_cast<std::size_t>(j1 + j2)] * Rational(a * b);
        // falling(delta_u, j) = sum_i s(j,i) delta_u^i
        for (int i1 = 0; i1 <= j1; ++i1) {
          long s1 = stirling1_signed(j1, i1);
          if (s1 == 0) continue;
          for (int i2 = 0; i2 <= j2; ++i2) {
            long s2 = stirling1_signed(j2, i2);
            if (s2 == 0) continue;
            r.add(i1, i2, base * Rational(s1 * s2));
          }
        }
      }
    }
  }
  return r;
}

DiffPoly rebase_at_one(const DiffPoly& p) { return rebase_at(p, 1, "u"); }

DiffPoly invert_at_infinity(const DiffPoly& p) {
  if (p.basis() != Basis::Delta) throw InvalidInput("inversion expects the delta basis");
  const int t = p.var();
  int n = 0;
  for (const auto& kv : p.terms()) n = std::max(n, kv.second.degree(t));
  const std::string sname = variable_name(t) == "s" ? "t" : "s";
  const int s = intern_variable(sname);
  DiffPoly r(sname, Basis::Delta, n);
  for (const auto& [kl, c] : p.terms()) {
    MPoly out;
    for (int d = 0; d <= c.degree(t); ++d) {
      MPoly cd = c.coefficient(t, d);
      if (cd.is_zero()) continue;
      out += cd * MPoly::var(s).pow(n - d);
    }
    if ((kl.first + kl.second) % 2) out = -out;
    r.add(kl.first, kl.second, out);
  }
  return r;
}

std::pair<DiffPoly, int> lowest_term(const DiffPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("lowest term of the zero differential polynomial");
  const int x = p.var();
  int low = -1;
  for (const auto& kv : p.terms()) {
    int d = kv.second.min_degree(x);
    if (low < 0 || d < low) low = d;
  }
  DiffPoly r(p.var_name(), p.basis(), 0);
  for (const auto& [kl, c] : p.terms()) r.add(kl.first, kl.second, c.coefficient(x, low));
  return {r, low - p.shift()};
}

std::pair<DiffPoly, int> divide_out_variable(const DiffPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("cannot normalize the zero differential polynomial");
  const int x = p.var();
  int low = -1;
  for (const auto& kv : p.terms()) {
    int d = kv.second.min_degree(x);
    if (low < 0 || d < low) low = d;
  }
  DiffPoly r(p.var_name(), p.basis(), p.shift() - low);
  for (const auto& [kl, c] : p.terms()) r.add(kl.first, kl.second, c.shift(x, -low));
  return {r, low};
}

TypeHConditions typeH_conditions(const DiffPoly& p0) {
  TypeHConditions out;
  const MPoly c = p0.coeff(4, 0) * q_of(1, 2);
  out.multiple = c;
  auto need = [&](const MPoly& e) {
    if (!e.is_zero()) out.must_vanish.push_back(e);
  };
  need(p0.coeff(3, 1) + c * Rational(8));
  need(p0.coeff(2, 2) - c * Rational(6));
  need(p0.coeff(3, 0) + c * Rational(4));
  need(p0.coeff(2, 1) - c * Rational(4));
  need(p0.coeff(2, 0) + p0.coeff(1, 1));
  need(p0.coeff(1, 0));
  need(p0.coeff(0, 0));
  for (const auto& kv : p0.terms())
    if (kv.first.first + kv.first.second > 4) need(kv.second);
  if (c.is_constant() && !c.is_zero()) {
    Rational inv = 1 / c.constant();
    out.alpha = (p0.coeff(2, 0) * Rational(inv / 2) - MPoly(1)) * q_of(1, 4);
  }
  return out;
}

std::optional<TypeHMatch> match_typeH(const DiffPoly& p0) {
  for (const auto& kv : p0.terms())
    if (kv.second.degree(p0.var()) > 0) return std::nullopt;  // not a single stratum
  TypeHConditions c = typeH_conditions(p0);
  if (!c.alpha || !c.must_vanish.empty()) return std::nullopt;
  return TypeHMatch{*c.alpha, c.multiple};
}

DiffPoly to_ddt_basis(const DiffPoly& p) {
  if (p.basis() != Basis::Delta) return p;
  const MPoly X = MPoly::var(p.var());
  DiffPoly r(p.var_name(), Basis::Ddt, p.shift());
  for (const auto& [kl, c] : p.terms()) {
    for (int j1 = 0; j1 <= kl.first; ++j1) {
      long a = stirling2(kl.first, j1);
      if (a == 0) continue;
      for (int j2 = 0; j2 <= kl.second; ++j2) {
        long b = stirling2(kl.second, j2);
        if (b == 0) continue;
        r.add(j1, j2, c * X.pow(j1 + j2) * Rational(a * b));
      }
    }
  }
  return r;
}

MPoly apply_to_polynomial(const DiffPoly& p, const MPoly& f) {
  const int x = p.var();
  const MPoly X = MPoly::var(x);
  int top = 0;
  for (const auto& kv : p.terms()) top = std::max(top, kv.first.first);
  std::vector<MPoly> d{f};
  for (int k = 1; k <= top; ++k) {
    MPoly next = d.back().derivative(x);
    if (p.basis() == Basis::Delta) next = next * X;
    d.push_back(next);
  }
  MPoly r;
  for (const auto& [kl, c] : p.terms())
    r += c * d[static_cast<std::size_t>(kl.first)] * d[static_cast<std::size_t>(kl.second)];
  return r;
}

}  // namespace p6tau
