#include "p6tau/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "p6tau/errors.hpp"

namespace p6tau {

namespace {

struct Registry {
  std::mutex mu;
  std::deque<std::string> names;  // deque keeps references stable
  std::unordered_map<std::string, int> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

int exponent_of(const Monomial& m, int var) {
  for (const auto& [v, e] : m)
    if (v == var) return e;
  return 0;
}

Monomial with_exponent(const Monomial& m, int var, int e) {
  Monomial r;
  bool placed = false;
  for (const auto& [v, x] : m) {
    if (v == var) {
      if (e != 0) r.emplace_back(v, e);
      placed = true;
    } else {
      if (!placed && v > var) {
        if (e != 0) r.emplace_back(var, e);
        placed = true;
      }
      r.emplace_back(v, x);
    }
  }
  if (!placed && e != 0) r.emplace_back(var, e);
  return r;
}

int total(const Monomial& m) {
  int d = 0;
  for (const auto& p : m) d += p.second;
  return d;
}

// Monomial as (name, exponent) pairs sorted by name, for canonical ordering.
std::vector<std::pair<std::string, int>> named(const Monomial& m) {
  std::vector<std::pair<std::string, int>> r;
  for (const auto& [v, e] : m) r.emplace_back(variable_name(v), e);
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

int intern_variable(std::string_view name) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  std::string key(name);
  auto it = r.ids.find(key);
  if (it != r.ids.end()) return it->second;
  int id = static_cast<int>(r.names.size());
  r.names.push_back(key);
  r.ids.emplace(key, id);
  return id;
}

const std::string& variable_name(int id) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  return r.names.at(static_cast<std::size_t>(id));
}

MPoly::MPoly(long c) {
  if (c != 0) terms_.emplace(Monomial{}, Rational(c));
}

MPoly::MPoly(const Rational& c) {
  if (!p6tau::is_zero(c)) terms_.emplace(Monomial{}, c);
}

MPoly MPoly::var(std::string_view name) { return var(intern_variable(name)); }

MPoly MPoly::var(int id) { return term(1, Monomial{{id, 1}}); }

MPoly MPoly::term(const Rational& c, Monomial m) {
  MPoly p;
  p.add_term(m, c);
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational MPoly::constant() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
  if (p6tau::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (p6tau::is_zero(it->second)) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const Rational& s) {
  if (p6tau::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= s;
  return *this;
}

MPoly& MPoly::operator/=(const MPoly& o) {
  if (!o.is_constant() || o.is_zero())
    throw InvalidInput("polynomial division is only by nonzero constants");
  return *this *= Rational(1 / o.constant());
}

MPoly operator-(MPoly a) {
  for (auto& kv : a.terms_) kv.second = -kv.second;
  return a;
}

MPoly MPoly::pow(int e) const {
  if (e < 0) {
    if (!is_constant() || is_zero()) throw InvalidInput("negative power of a non-constant polynomial");
    return MPoly(Rational(1 / constant())).pow(-e);
  }
  MPoly result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

int MPoly::degree(int var) const {
  int d = 0;
  for (const auto& kv : terms_) d = std::max(d, exponent_of(kv.first, var));
  return d;
}

int MPoly::min_degree(int var) const {
  if (terms_.empty()) return 0;
  int d = -1;
  for (const auto& kv : terms_) {
    int e = exponent_of(kv.first, var);
    if (d < 0 || e < d) d = e;
  }
  return d;
}

int MPoly::total_degree() const {
  int d = 0;
  for (const auto& kv : terms_) d = std::max(d, total(kv.first));
  return d;
}

MPoly MPoly::coefficient(int var, int k) const {
  MPoly r;
  for (const auto& [m, c] : terms_)
    if (exponent_of(m, var) == k) r.add_term(with_exponent(m, var, 0), c);
  return r;
}

MPoly MPoly::derivative(int var) const {
  MPoly r;
  for (const auto& [m, c] : terms_) {
    int e = exponent_of(m, var);
    if (e == 0) continue;
    r.add_term(with_exponent(m, var, e - 1), c * e);
  }
  return r;
}

MPoly MPoly::substitute(int var, const MPoly& value) const {
  int d = degree(var);
  std::vector<MPoly> powers{MPoly(1)};
  for (int i = 1; i <= d; ++i) powers.push_back(powers.back() * value);
  MPoly r;
  for (const auto& [m, c] : terms_) {
    int e = exponent_of(m, var);
    MPoly rest = term(c, with_exponent(m, var, 0));
    r += e == 0 ? rest : rest * powers[static_cast<std::size_t>(e)];
  }
  return r;
}

MPoly MPoly::shift(int var, int k) const {
  MPoly r;
  for (const auto& [m, c] : terms_) {
    int e = exponent_of(m, var) + k;
    if (e < 0) throw InternalMismatch("negative exponent after shift of " + variable_name(var));
    r.add_term(with_exponent(m, var, e), c);
  }
  return r;
}

std::vector<int> MPoly::variables() const {
  std::vector<int> vs;
  for (const auto& kv : terms_)
    for (const auto& p : kv.first) vs.push_back(p.first);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  struct Item {
    int deg;
    std::vector<std::pair<std::string, int>> names;
    Rational c;
  };
  std::vector<Item> items;
  for (const auto& [m, c] : terms_) items.push_back({total(m), named(m), c});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.deg != b.deg) return a.deg > b.deg;
    return a.names < b.names;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& it : items) {
    Rational mag = abs(it.c);
    if (first) {
      if (sgn(it.c) < 0) out << "-";
    } else {
      out << (sgn(it.c) < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (it.names.empty() || mag != 1) {
      out << p6tau::to_string(mag);
      need_star = true;
    }
    for (const auto& [name, e] : it.names) {
      if (need_star) out << "*";
      out << name;
      if (e > 1) out << "^" << e;
      need_star = true;
    }
  }
  return out.str();
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MPoly parse() {
    MPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw InvalidInput("cannot parse polynomial '" + std::string(s_) + "': " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    MPoly r;
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    r = product();
    if (negate) r = -r;
    for (;;) {
      if (eat('+')) r += product();
      else if (eat('-')) r -= product();
      else return r;
    }
  }

  MPoly product() {
    MPoly r = power();
    for (;;) {
      if (eat('*')) r *= power();
      else if (eat('/')) {
        MPoly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        r /= d;
      } else {
        return r;
      }
    }
  }

  MPoly power() {
    MPoly base = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be an integer");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (neg) {
        if (!base.is_constant() || base.is_zero()) fail("negative power of a non-constant");
        e = -e;
      }
      return base.pow(e);
    }
    return base;
  }

  MPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly r = expr();
      if (!eat(')')) fail("missing ')'");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save;  // an identifier starting with e, e.g. 2*eps
        }
      }
      return MPoly(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return MPoly::var(s_.substr(start, pos_ - start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_mpoly(std::string_view text) { return Parser(text).parse(); }

}  // namespace p6tau
