#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <complex>
#include <string>
#include <string_view>

#include "p6tau/rational.hpp"

namespace p6tau {

using BigReal = boost::multiprecision::mpfr_float;

// Working precision for BigComplex, in bits (default 256). Values created
// afterwards use it; existing values keep theirs.
unsigned bigcomplex_precision();
void set_bigcomplex_precision(unsigned bits);

class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_;
};

class BigComplex {
 public:
  BigComplex() : re_(0), im_(0) {}
  BigComplex(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  BigComplex(const Rational& q);  // NOLINT(google-explicit-constructor)
  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit BigComplex(std::complex<double> z) : re_(z.real()), im_(z.imag()) {}

  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator-(const BigComplex& a) { return BigComplex(-a.re_, -a.im_); }
  friend bool operator==(const BigComplex& a, const BigComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  BigComplex conj() const { return BigComplex(re_, -im_); }
  std::complex<double> to_complex() const {
    return {static_cast<double>(re_), static_cast<double>(im_)};
  }
  bool is_finite() const;

 private:
  BigReal re_;
  BigReal im_;
};

BigReal abs(const BigComplex& z);
BigComplex exp(const BigComplex& z);
// log with the imaginary part in (-pi, pi] + 2*pi*sheet.
BigComplex log(const BigComplex& z, int sheet = 0);
// z^w = exp(w * log(z, sheet)).
BigComplex pow(const BigComplex& z, const BigComplex& w, int sheet = 0);
BigComplex sqrt(const BigComplex& z);

// |z| < 2^(8 - precision)
bool is_zero(const BigComplex& z);

// Accepts "a", "a+bi", "a-bi", "bi", "i", "-i" with decimal or p/q parts.
BigComplex parse_bigcomplex(std::string_view text);

// Decimal text with enough digits to round-trip at the value's precision.
std::string to_decimal(const BigReal& x);
std::string to_string(const BigComplex& z);
BigReal parse_bigreal(std::string_view text);

}  // namespace p6tau
