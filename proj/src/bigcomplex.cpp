#include "p6tau/bigcomplex.hpp"

#include <atomic>
#include <cmath>

#include "p6tau/errors.hpp"

namespace p6tau {

namespace {

std::atomic<unsigned> g_bits{256};

unsigned digits_for(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

void apply_default(unsigned bits) { BigReal::default_precision(digits_for(bits)); }

struct Init {
  Init() { apply_default(256); }
} g_init;

BigReal from_q(const Rational& q) {
  BigReal r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

}  // namespace

unsigned bigcomplex_precision() { return g_bits.load(); }

void set_bigcomplex_precision(unsigned bits) {
  if (bits < 16) throw InvalidInput("precision must be at least 16 bits");
  g_bits.store(bits);
  apply_default(bits);
}

ScopedPrecision::ScopedPrecision(unsigned bits) : saved_(bigcomplex_precision()) {
  set_bigcomplex_precision(bits);
}

ScopedPrecision::~ScopedPrecision() { set_bigcomplex_precision(saved_); }

BigComplex::BigComplex(const Rational& q) : re_(from_q(q)), im_(0) {}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigReal r = re_ * o.re_ - im_ * o.im_;
  BigReal i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  if (o.re_ == 0 && o.im_ == 0) throw NonFinite("division by zero");
  // Smith's algorithm avoids overflow in the denominator.
  if (boost::multiprecision::abs(o.re_) >= boost::multiprecision::abs(o.im_)) {
    BigReal r = o.im_ / o.re_;
    BigReal d = o.re_ + o.im_ * r;
    BigReal nr = (re_ + im_ * r) / d;
    BigReal ni = (im_ - re_ * r) / d;
    re_ = std::move(nr);
    im_ = std::move(ni);
  } else {
    BigReal r = o.re_ / o.im_;
    BigReal d = o.re_ * r + o.im_;
    BigReal nr = (re_ * r + im_) / d;
    BigReal ni = (im_ * r - re_) / d;
    re_ = std::move(nr);
    im_ = std::move(ni);
  }
  return *this;
}

bool BigComplex::is_finite() const {
  return boost::multiprecision::isfinite(re_) && boost::multiprecision::isfinite(im_);
}

BigReal abs(const BigComplex& z) { return boost::multiprecision::hypot(z.re(), z.im()); }

BigComplex exp(const BigComplex& z) {
  BigReal m = boost::multiprecision::exp(z.re());
  return BigComplex(m * boost::multiprecision::cos(z.im()), m * boost::multiprecision::sin(z.im()));
}

BigComplex log(const BigComplex& z, int sheet) {
  if (z.re() == 0 && z.im() == 0) throw NonFinite("log of zero");
  BigReal arg = boost::multiprecision::atan2(z.im(), z.re());
  if (sheet != 0) arg += 2 * boost::math::constants::pi<BigReal>() * sheet;
  return BigComplex(boost::multiprecision::log(abs(z)), arg);
}

BigComplex pow(const BigComplex& z, const BigComplex& w, int sheet) {
  BigComplex r = exp(w * log(z, sheet));
  if (!r.is_finite()) throw NonFinite("power overflow");
  return r;
}

BigComplex sqrt(const BigComplex& z) {
  if (z.re() == 0 && z.im() == 0) return z;
  return exp(log(z) * BigComplex(q_of(1, 2)));
}

bool is_zero(const BigComplex& z) {
  BigReal threshold = boost::multiprecision::ldexp(BigReal(1), 8 - static_cast<int>(bigcomplex_precision()));
  return abs(z) < threshold;
}

BigReal parse_bigreal(std::string_view text) { return from_q(parse_rational(text)); }

BigComplex parse_bigcomplex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw InvalidInput("empty complex number");
  if (s.back() != 'i') return BigComplex(parse_bigreal(s), BigReal(0));
  s.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  if (im_part[0] == '+') im_part.erase(0, 1);
  BigReal re = re_part.empty() ? BigReal(0) : parse_bigreal(re_part);
  return BigComplex(re, parse_bigreal(im_part));
}

std::string to_decimal(const BigReal& x) {
  if (x == 0) return "0";
  return x.str(static_cast<std::streamsize>(x.precision() + 3), std::ios_base::scientific);
}

std::string to_string(const BigComplex& z) {
  std::string s = to_decimal(z.re());
  if (z.im() == 0) return s;
  std::string i = to_decimal(z.im());
  if (i[0] != '-') i = "+" + i;
  return s + i + "i";
}

}  // namespace p6tau
