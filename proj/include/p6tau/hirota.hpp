#pragma once

#include <array>
#include <map>
#include <vector>

#include "p6tau/diffpoly.hpp"
#include "p6tau/series.hpp"

namespace p6tau {

// Dense polynomial in t, ascending degree.
template <class S>
using TPoly = std::vector<S>;

template <class S>
TPoly<S> tpoly_mul(const TPoly<S>& a, const TPoly<S>& b) {
  if (a.empty() || b.empty()) return {};
  TPoly<S> r(a.size() + b.size() - 1, from_q<S>(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

template <class S>
TPoly<S> tpoly_add(const TPoly<S>& a, const TPoly<S>& b) {
  TPoly<S> r(std::max(a.size(), b.size()), from_q<S>(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

template <class S>
TPoly<S> tpoly_from(std::initializer_list<long> c) {
  TPoly<S> r;
  for (long v : c) r.push_back(from_q<S>(v));
  return r;
}

// Sum of poly(t) * word acting on f.f. Canonical: one entry per word, odd
// Hirota orders dropped, trailing exact zeros trimmed.
template <class S>
class HirotaForm {
 public:
  void add(const HirotaWord& w, const TPoly<S>& poly) {
    if (w.N % 2) return;  // D^N f.f = 0 for odd N
    auto it = terms_.find(w);
    TPoly<S> p = it == terms_.end() ? poly : tpoly_add(it->second, poly);
    if constexpr (ScalarTraits<S>::exact()) {
      while (!p.empty() && scalar_is_zero(p.back())) p.pop_back();
    }
    if (p.empty()) {
      if (it != terms_.end()) terms_.erase(it);
      return;
    }
    terms_[w] = std::move(p);
  }

  const std::map<HirotaWord, TPoly<S>>& terms() const { return terms_; }

  int max_degree() const {
    int d = 0;
    for (const auto& kv : terms_) d = std::max(d, static_cast<int>(kv.second.size()) - 1);
    return d;
  }

  friend bool operator==(const HirotaForm& a, const HirotaForm& b) { return a.terms_ == b.terms_; }

 private:
  std::map<HirotaWord, TPoly<S>> terms_;
};

template <class S>
struct BetaParams {
  std::array<S, 6> b;  // beta1..beta6 at b[0..5]

  BetaParams() { b.fill(from_q<S>(0)); }
  BetaParams(S b1, S b2, S b3, S b4, S b5, S b6) : b{b1, b2, b3, b4, b5, b6} {}

  const S& operator()(int i) const { return b[static_cast<std::size_t>(i - 1)]; }
  S& operator()(int i) { return b[static_cast<std::size_t>(i - 1)]; }

  // Gauge invariant 2 beta4 + beta5 + 2 beta6.
  S J() const { return from_q<S>(2) * b[3] + b[4] + from_q<S>(2) * b[5]; }
  bool reducible_to_second_order() const { return scalar_is_zero(J()); }
  bool beta4_zero() const { return scalar_is_zero(b[3]); }
};

// The type-(H) operator with three singular points.
template <class S>
HirotaForm<S> build_typeH_equation(const BetaParams<S>& beta) {
  const S one = from_q<S>(1);
  HirotaForm<S> L;
  const TPoly<S> tm1 = tpoly_from<S>({-1, 1});
  const TPoly<S> tm1sq = tpoly_mul(tm1, tm1);
  const TPoly<S> t_tm1 = tpoly_from<S>({0, -1, 1});
  L.add({0, 4}, tpoly_from<S>({1, -4, 6, -4, 1}));
  L.add({1, 2}, tpoly_from<S>({-2, 4, 0, -4, 2}));
  L.add({2, 0}, tpoly_from<S>({0, 1, -2, 1}));
  // (t-1)^2 (t^2 - t + 1 - b1 - b5 t - b6 t^2)
  L.add({0, 2}, tpoly_mul(tm1sq, TPoly<S>{one - beta(1), -one - beta(5), one - beta(6)}));
  // t(t-1)(b4 (t-1) - b1 - b5 - b6)
  L.add({1, 0}, tpoly_mul(t_tm1, TPoly<S>{-beta(4) - beta(1) - beta(5) - beta(6), beta(4)}));
  // t(t-1)(b2 t + b3)
  L.add({0, 0}, tpoly_mul(t_tm1, TPoly<S>{beta(3), beta(2)}));
  return L;
}

// D^4 + (c - 2 delta) D^2, the t = 0 block (c = 1 - beta1).
template <class S>
HirotaForm<S> lowest_block_form(const S& c) {
  HirotaForm<S> L;
  L.add({0, 4}, TPoly<S>{from_q<S>(1)});
  L.add({1, 2}, TPoly<S>{from_q<S>(-2)});
  L.add({0, 2}, TPoly<S>{c});
  return L;
}

// sum_i (-1)^i C(N,i) (delta^{N-i} f)(delta^i g)
template <class S>
SigmaSeries<S> hirota_pair(int N, const SigmaSeries<S>& f, const SigmaSeries<S>& g) {
  if (N < 0) throw InvalidInput("negative Hirota order");
  require_same_sigma(f, g);
  std::vector<SigmaSeries<S>> df{f}, dg{g};
  for (int i = 1; i <= N; ++i) {
    df.push_back(apply_delta(df.back()));
    dg.push_back(apply_delta(dg.back()));
  }
  std::optional<SigmaSeries<S>> acc;
  for (int i = 0; i <= N; ++i) {
    Rational c = binomial(N, i);
    if (i % 2) c = -c;
    SigmaSeries<S> term = series_scale(
        series_mul(df[static_cast<std::size_t>(N - i)], dg[static_cast<std::size_t>(i)]), from_q<S>(c));
    acc = acc ? series_add(*acc, term) : term;
  }
  return *acc;
}

template <class S>
SigmaSeries<S> apply_word(const HirotaWord& w, const SigmaSeries<S>& f) {
  return apply_delta_power(hirota_pair(w.N, f, f), w.j);
}

// Residual L f.f, determined through the truncation weight of f.
template <class S>
SigmaSeries<S> apply_equation(const HirotaForm<S>& L, const SigmaSeries<S>& f) {
  if (L.max_degree() > f.trunc_weight())
    throw TruncationExhausted("operator degree exceeds the series truncation weight");
  std::map<int, SigmaSeries<S>> pairs;
  std::optional<SigmaSeries<S>> acc;
  for (const auto& [w, poly] : L.terms()) {
    auto it = pairs.find(w.N);
    if (it == pairs.end()) it = pairs.emplace(w.N, hirota_pair(w.N, f, f)).first;
    SigmaSeries<S> base = apply_delta_power(it->second, w.j);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      if (ScalarTraits<S>::exact() && scalar_is_zero(poly[d])) continue;
      SigmaSeries<S> term = series_scale(shift_t_power(base, static_cast<int>(d)), poly[d]);
      acc = acc ? series_add(*acc, term) : term;
    }
  }
  if (!acc) {
    const S& s = f.sigma();
    return SigmaSeries<S>(f.alpha() + f.alpha() + s * s, s, f.trunc_weight());
  }
  return *acc;
}

// Rational-coefficient view of an exact operator (for the diffpoly layer).
inline MPoly to_mpoly(const MPoly& x) { return x; }
inline MPoly to_mpoly(const Rational& x) { return MPoly(x); }

template <class S>
DiffPoly to_diffpoly(const HirotaForm<S>& L, std::string_view var = "t") {
  const MPoly T = MPoly::var(var);
  DiffPoly r(var);
  for (const auto& [w, poly] : L.terms()) {
    MPoly c;
    for (std::size_t d = 0; d < poly.size(); ++d) c += to_mpoly(poly[d]) * T.pow(static_cast<int>(d));
    r += expand_word(w, var).scaled(c);
  }
  return r;
}

// Inverse of to_diffpoly: decomposition on the nine words delta^j D^N with
// N even and j + N <= 4 (triangular by total order).
HirotaForm<MPoly> to_hirota_form(const DiffPoly& p);

// The t = 0 block D^4 + (1 - 2 delta) D^2 in both monomial bases.
struct LowestBlock {
  DiffPoly delta_basis;
  DiffPoly ddt_basis;
};
LowestBlock lowest_block_expanded();

}  // namespace p6tau
