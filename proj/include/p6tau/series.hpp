#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "p6tau/errors.hpp"
#include "p6tau/scalar.hpp"

namespace p6tau {

// (m, n) = (m2/2, n2/2) with m2 = n2 (mod 2). Ordered by weight, then m2.
struct LatticeIndex {
  int m2 = 0;
  int n2 = 0;

  int weight() const { return (m2 + n2) / 2; }
  bool valid() const { return m2 >= 0 && n2 >= 0 && ((m2 - n2) % 2 == 0); }

  friend bool operator<(const LatticeIndex& a, const LatticeIndex& b) {
    int wa = a.m2 + a.n2, wb = b.m2 + b.n2;
    if (wa != wb) return wa < wb;
    return a.m2 < b.m2;
  }
  friend bool operator==(const LatticeIndex& a, const LatticeIndex& b) {
    return a.m2 == b.m2 && a.n2 == b.n2;
  }
  friend LatticeIndex operator+(const LatticeIndex& a, const LatticeIndex& b) {
    return {a.m2 + b.m2, a.n2 + b.n2};
  }
};

inline std::string to_string(const LatticeIndex& k) {
  auto half = [](int v) { return v % 2 == 0 ? std::to_string(v / 2) : std::to_string(v) + "/2"; };
  return "(" + half(k.m2) + "," + half(k.n2) + ")";
}

// All lattice indices of weight w, in canonical order.
inline std::vector<LatticeIndex> stratum_indices(int w) {
  std::vector<LatticeIndex> out;
  for (int m2 = 0; m2 <= 2 * w; ++m2) out.push_back({m2, 2 * w - m2});
  return out;
}

template <class S>
bool scalars_equal(const S& a, const S& b) {
  if constexpr (std::is_same_v<S, BigComplex>) {
    return is_zero(a - b);
  } else {
    return a == b;
  }
}

// Truncated series  sum a_{m,n} t^{alpha + sigma^2 + (m+n) + 2 sigma (m-n)}.
template <class S>
class SigmaSeries {
 public:
  SigmaSeries(S alpha, S sigma, int trunc_weight)
      : alpha_(std::move(alpha)), sigma_(std::move(sigma)), w_(trunc_weight) {
    if (w_ < 0) throw InvalidInput("negative truncation weight");
  }

  const S& alpha() const { return alpha_; }
  const S& sigma() const { return sigma_; }
  int trunc_weight() const { return w_; }
  const std::map<LatticeIndex, S>& terms() const { return terms_; }

  // Stores c at k. Exact zeros are not stored; terms above the truncation
  // weight are rejected.
  void set(const LatticeIndex& k, S c) {
    if (!k.valid()) throw InvalidInput("invalid lattice index " + to_string(k));
    if (k.m2 + k.n2 > 2 * w_) throw InvalidInput("index " + to_string(k) + " above truncation weight");
    if (ScalarTraits<S>::exact() && scalar_is_zero(c)) {
      terms_.erase(k);
      return;
    }
    terms_[k] = std::move(c);
  }

  void add(const LatticeIndex& k, const S& c) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      set(k, c);
    } else {
      S v = it->second + c;
      set(k, std::move(v));
    }
  }

  S coeff(const LatticeIndex& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? from_q<S>(0) : it->second;
  }

  // alpha + sigma^2 + (m+n) + 2 sigma (m-n)
  S exponent(const LatticeIndex& k) const {
    return alpha_ + sigma_ * sigma_ + from_q<S>(k.m2 + k.n2, 2) + sigma_ * from_q<S>(k.m2 - k.n2);
  }

  SigmaSeries truncated(int w) const {
    SigmaSeries r(alpha_, sigma_, std::min(w, w_));
    for (const auto& [k, c] : terms_)
      if (k.m2 + k.n2 <= 2 * r.w_) r.terms_.emplace(k, c);
    return r;
  }

  // Same terms, larger nominal truncation (used to pad iterates).
  SigmaSeries widened(int w) const {
    SigmaSeries r = *this;
    r.w_ = std::max(w, w_);
    return r;
  }

  SigmaSeries with_alpha(S alpha) const {
    SigmaSeries r = *this;
    r.alpha_ = std::move(alpha);
    return r;
  }

  bool is_zero() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& kv) { return scalar_is_zero(kv.second); });
  }

 private:
  S alpha_;
  S sigma_;
  int w_;
  std::map<LatticeIndex, S> terms_;
};

template <class S>
void require_same_sigma(const SigmaSeries<S>& f, const SigmaSeries<S>& g) {
  if (!scalars_equal(f.sigma(), g.sigma())) throw SigmaMismatch("series have different sigma");
}

// Unit element: alpha = -sigma^2 so that the (0,0) term is t^0.
template <class S>
SigmaSeries<S> series_constant(const S& sigma, int w, const S& c) {
  SigmaSeries<S> r(-(sigma * sigma), sigma, w);
  r.set({0, 0}, c);
  return r;
}

template <class S>
SigmaSeries<S> series_add(const SigmaSeries<S>& f, const SigmaSeries<S>& g) {
  require_same_sigma(f, g);
  if (!scalars_equal(f.alpha(), g.alpha())) throw OffsetMismatch("series have different alpha");
  SigmaSeries<S> r = f.truncated(std::min(f.trunc_weight(), g.trunc_weight()));
  for (const auto& [k, c] : g.terms())
    if (k.m2 + k.n2 <= 2 * r.trunc_weight()) r.add(k, c);
  return r;
}

template <class S>
SigmaSeries<S> series_scale(const SigmaSeries<S>& f, const S& s) {
  SigmaSeries<S> r(f.alpha(), f.sigma(), f.trunc_weight());
  for (const auto& [k, c] : f.terms()) r.set(k, c * s);
  return r;
}

template <class S>
SigmaSeries<S> series_sub(const SigmaSeries<S>& f, const SigmaSeries<S>& g) {
  return series_add(f, series_scale(g, from_q<S>(-1)));
}

template <class S>
SigmaSeries<S> series_mul(const SigmaSeries<S>& f, const SigmaSeries<S>& g) {
  require_same_sigma(f, g);
  const int w = std::min(f.trunc_weight(), g.trunc_weight());
  SigmaSeries<S> r(f.alpha() + g.alpha() + f.sigma() * f.sigma(), f.sigma(), w);
  std::map<LatticeIndex, S> acc;
  for (const auto& [i, a] : f.terms()) {
    if (i.m2 + i.n2 > 2 * w) break;
    for (const auto& [j, b] : g.terms()) {
      LatticeIndex k = i + j;
      if (k.m2 + k.n2 > 2 * w) break;
      auto it = acc.find(k);
      if (it == acc.end()) acc.emplace(k, a * b);
      else it->second = it->second + a * b;
    }
  }
  for (auto& [k, c] : acc) r.set(k, std::move(c));
  return r;
}

// delta = t d/dt
template <class S>
SigmaSeries<S> apply_delta(const SigmaSeries<S>& f) {
  SigmaSeries<S> r(f.alpha(), f.sigma(), f.trunc_weight());
  for (const auto& [k, c] : f.terms()) r.set(k, c * f.exponent(k));
  return r;
}

template <class S>
SigmaSeries<S> apply_delta_power(SigmaSeries<S> f, int k) {
  for (int i = 0; i < k; ++i) f = apply_delta(f);
  return f;
}

// t^p f with the conservative truncation W - p.
template <class S>
SigmaSeries<S> mul_t_power(const SigmaSeries<S>& f, int p) {
  if (p < 0) throw InvalidInput("negative power of t");
  if (p > f.trunc_weight()) throw TruncationExhausted("t-power exceeds truncation weight");
  SigmaSeries<S> r(f.alpha(), f.sigma(), f.trunc_weight() - p);
  for (const auto& [k, c] : f.terms()) {
    LatticeIndex s{k.m2 + p, k.n2 + p};
    if (s.m2 + s.n2 <= 2 * r.trunc_weight()) r.set(s, c);
  }
  return r;
}

// t^p f keeping the truncation weight: the shifted series is determined
// through W + p, so nothing above W is needed.
template <class S>
SigmaSeries<S> shift_t_power(const SigmaSeries<S>& f, int p) {
  if (p < 0) throw InvalidInput("negative power of t");
  SigmaSeries<S> r(f.alpha(), f.sigma(), f.trunc_weight());
  for (const auto& [k, c] : f.terms()) {
    LatticeIndex s{k.m2 + p, k.n2 + p};
    if (s.m2 + s.n2 <= 2 * r.trunc_weight()) r.set(s, c);
  }
  return r;
}

// Inverse by solving the convolution stratum by stratum.
template <class S>
SigmaSeries<S> series_inverse_stratum(const SigmaSeries<S>& f) {
  const S a00 = f.coeff({0, 0});
  if (scalar_is_zero(a00)) throw SeedZero("series with zero leading coefficient is not invertible");
  const S& s = f.sigma();
  SigmaSeries<S> g(-f.alpha() - from_q<S>(2) * s * s, s, f.trunc_weight());
  const S inv = from_q<S>(1) / a00;
  g.set({0, 0}, inv);
  for (int w = 1; w <= f.trunc_weight(); ++w) {
    for (const LatticeIndex& k : stratum_indices(w)) {
      S acc = from_q<S>(0);
      bool any = false;
      for (const auto& [i, a] : f.terms()) {
        if (i.m2 == 0 && i.n2 == 0) continue;
        if (i.m2 > k.m2 || i.n2 > k.n2) continue;
        LatticeIndex j{k.m2 - i.m2, k.n2 - i.n2};
        auto it = g.terms().find(j);
        if (it == g.terms().end()) continue;
        acc = acc + a * it->second;
        any = true;
      }
      if (any) g.set(k, -(acc * inv));
    }
  }
  return g;
}

// Inverse by Newton iteration g <- g (2 - f g), doubling the weight.
template <class S>
SigmaSeries<S> series_inverse_newton(const SigmaSeries<S>& f) {
  const S a00 = f.coeff({0, 0});
  if (scalar_is_zero(a00)) throw SeedZero("series with zero leading coefficient is not invertible");
  const S& s = f.sigma();
  const int target = f.trunc_weight();
  SigmaSeries<S> g(-f.alpha() - from_q<S>(2) * s * s, s, 0);
  g.set({0, 0}, from_q<S>(1) / a00);
  int w = 0;
  while (w < target) {
    w = std::min(target, std::max(1, 2 * w));
    SigmaSeries<S> gw = g.widened(w);
    SigmaSeries<S> e = series_mul(f.truncated(w), gw);  // unit + O(higher)
    SigmaSeries<S> two = series_constant(s, w, from_q<S>(2));
    g = series_mul(gw, series_sub(two, e));
  }
  return g;
}

// Newton result, cross-checked against the stratum recursion.
template <class S>
SigmaSeries<S> series_inverse(const SigmaSeries<S>& f) {
  SigmaSeries<S> g = series_inverse_newton(f);
  SigmaSeries<S> h = series_inverse_stratum(f);
  for (int w = 0; w <= f.trunc_weight(); ++w)
    for (const LatticeIndex& k : stratum_indices(w))
      if (!scalars_equal(g.coeff(k), h.coeff(k)))
        throw InternalMismatch("series inverse: Newton and stratum recursion disagree at " + to_string(k));
  return g;
}

template <class S>
SigmaSeries<S> series_div(const SigmaSeries<S>& f, const SigmaSeries<S>& g) {
  return series_mul(f, series_inverse(g));
}

// Largest coefficient magnitude per weight stratum (numeric modes).
template <class S>
std::vector<double> max_abs_by_weight(const SigmaSeries<S>& f) {
  std::vector<double> out(static_cast<std::size_t>(f.trunc_weight()) + 1, 0.0);
  for (const auto& [k, c] : f.terms()) {
    double v;
    if constexpr (std::is_same_v<S, BigComplex>) v = static_cast<double>(abs(c));
    else v = std::abs(c);
    auto& slot = out[static_cast<std::size_t>(k.weight())];
    slot = std::max(slot, v);
  }
  return out;
}

// ---- evaluation ----

inline BigComplex to_big(const BigComplex& x, const BigComplex&) { return x; }
inline BigComplex to_big(const RatFunc& x, const BigComplex& sigma0) {
  return x.evaluate<BigComplex>(sigma0);
}
inline BigComplex to_big(const Rational& x, const BigComplex&) { return BigComplex(x); }

struct SeriesValue {
  BigComplex value;
  BigComplex top_stratum;       // contribution of the highest stored weight
  std::vector<BigComplex> strata;  // contribution per weight
  double error_estimate() const { return static_cast<double>(abs(top_stratum)); }
};

inline bool on_negative_axis(const BigComplex& t) { return t.im() == 0 && t.re() < 0; }

// sum a_{m,n}(sigma0) t0^{eps(m,n)}. With no sheet given, t0 on the negative
// real axis is rejected.
template <class S>
SeriesValue evaluate(const SigmaSeries<S>& f, const BigComplex& t0, const BigComplex& sigma0,
                     std::optional<int> sheet = std::nullopt) {
  if (on_negative_axis(t0) && !sheet) throw BranchCut("t0 on the branch cut; pass a sheet");
  if (t0.re() == 0 && t0.im() == 0) throw NonFinite("evaluation at t = 0");
  const int sh = sheet.value_or(0);
  const BigComplex logt = log(t0, sh);
  const BigComplex alpha = to_big(f.alpha(), sigma0);
  SeriesValue out;
  out.strata.assign(static_cast<std::size_t>(f.trunc_weight()) + 1, BigComplex(0));
  for (const auto& [k, c] : f.terms()) {
    BigComplex eps = alpha + sigma0 * sigma0 + BigComplex(q_of(k.m2 + k.n2, 2)) +
                     sigma0 * BigComplex(k.m2 - k.n2);
    BigComplex term = to_big(c, sigma0) * exp(eps * logt);
    if (!term.is_finite()) throw NonFinite("series term overflow at " + to_string(k));
    out.strata[static_cast<std::size_t>(k.weight())] += term;
  }
  for (const auto& s : out.strata) out.value += s;
  out.top_stratum = out.strata.back();
  return out;
}

}  // namespace p6tau
