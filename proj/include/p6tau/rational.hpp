#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace p6tau {

using Rational = mpq_class;

// Accepts integers, "p/q", and finite decimals with optional exponent
// ("0.25", "-1.5e-3"). Decimals are converted exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational q_of(long p, long q = 1) {
  Rational r{mpz_class(p), mpz_class(q)};
  r.canonicalize();
  return r;
}

Rational binomial(int n, int k);

}  // namespace p6tau
