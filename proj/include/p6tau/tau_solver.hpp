#pragma once

#include <map>
#include <vector>

#include "p6tau/hirota.hpp"

namespace p6tau {

template <class S>
struct SeedData {
  S sigma;
  S a00;
  S a10;
  S a01;
  int weight = 8;
};

// (x+y)^j (x-y)^N: the action of a word on the pure-power pair (t^x, t^y),
// up to the factor t^{x+y}.
template <class S>
S word_symbol(const HirotaWord& w, const S& x, const S& y) {
  S r = from_q<S>(1);
  const S s = x + y, d = x - y;
  for (int i = 0; i < w.j; ++i) r = r * s;
  for (int i = 0; i < w.N; ++i) r = r * d;
  return r;
}

// Symbol of the t^deg part of an operator, evaluated at (x, y).
template <class S>
S operator_symbol(const HirotaForm<S>& L, int deg, const S& x, const S& y) {
  S r = from_q<S>(0);
  for (const auto& [w, poly] : L.terms()) {
    if (deg >= static_cast<int>(poly.size())) continue;
    const S& c = poly[static_cast<std::size_t>(deg)];
    if (ScalarTraits<S>::exact() && scalar_is_zero(c)) continue;
    r = r + c * word_symbol(w, x, y);
  }
  return r;
}

// Coefficient of a_{m,n} a_{0,0} in the weight stratum: the lowest block
// applied to the symmetrized pair (t^rho, t^{rho+eps}), rho = sigma^2 - beta1/4.
template <class S>
S indicial_factor(const S& beta1, const S& sigma, const LatticeIndex& idx) {
  const HirotaForm<S> block = lowest_block_form<S>(from_q<S>(1) - beta1);
  const S rho = sigma * sigma - beta1 * from_q<S>(1, 4);
  const S eps = from_q<S>(idx.m2 + idx.n2, 2) + sigma * from_q<S>(idx.m2 - idx.n2);
  const S rhoe = rho + eps;
  return operator_symbol<S>(block, 0, rho, rhoe) + operator_symbol<S>(block, 0, rhoe, rho);
}

template <class S>
bool resonant(const S& F) {
  if constexpr (std::is_same_v<S, BigComplex>) {
    BigReal threshold = boost::multiprecision::ldexp(BigReal(1), -static_cast<int>(bigcomplex_precision() / 2));
    return abs(F) < threshold;
  } else {
    return scalar_is_zero(F);
  }
}

template <class S>
bool is_seed_index(const LatticeIndex& k) {
  return (k.m2 == 0 && k.n2 == 0) || (k.m2 == 2 && k.n2 == 0) || (k.m2 == 0 && k.n2 == 2);
}

// Order-by-order solution of L f.f = 0 in the gauge alpha = -beta1/4.
template <class S>
SigmaSeries<S> solve_series(const BetaParams<S>& beta, const SeedData<S>& seeds) {
  if (scalar_is_zero(seeds.a00)) throw SeedZero("a00 must be nonzero");
  if (seeds.weight < 0) throw InvalidInput("negative weight");
  const S& sigma = seeds.sigma;
  const HirotaForm<S> L = build_typeH_equation(beta);
  const int maxdeg = L.max_degree();
  const S alpha = -(beta(1) * from_q<S>(1, 4));
  SigmaSeries<S> f(alpha, sigma, seeds.weight);
  const S rho = alpha + sigma * sigma;

  std::map<LatticeIndex, S> known;  // includes explicit zeros
  std::map<LatticeIndex, S> expo;
  auto exponent = [&](const LatticeIndex& k) {
    auto it = expo.find(k);
    if (it != expo.end()) return it->second;
    S e = rho + from_q<S>(k.m2 + k.n2, 2) + sigma * from_q<S>(k.m2 - k.n2);
    expo.emplace(k, e);
    return e;
  };

  auto residual_without = [&](const LatticeIndex& k) {
    S R = from_q<S>(0);
    for (int d = 0; d <= maxdeg; ++d) {
      if (k.m2 < d || k.n2 < d) break;
      LatticeIndex kp{k.m2 - d, k.n2 - d};
      for (const auto& [i, ai] : known) {
        if (i.m2 + i.n2 > kp.m2 + kp.n2) break;
        if (i.m2 > kp.m2 || i.n2 > kp.n2) continue;
        LatticeIndex j{kp.m2 - i.m2, kp.n2 - i.n2};
        auto jt = known.find(j);
        if (jt == known.end()) continue;
        if (ScalarTraits<S>::exact() && (scalar_is_zero(ai) || scalar_is_zero(jt->second))) continue;
        R = R + ai * jt->second * operator_symbol(L, d, exponent(i), exponent(j));
      }
    }
    return R;
  };

  // Weight 0 and the two free weight-1 coefficients.
  known.emplace(LatticeIndex{0, 0}, seeds.a00);
  for (int w = 1; w <= seeds.weight; ++w) {
    auto idx = stratum_indices(w);
    for (std::size_t a = 1; a < idx.size(); ++a)
      if (scalars_equal(exponent(idx[a - 1]), exponent(idx[a])))
        throw Resonance(idx[a].m2, idx[a].n2, "exponents collide inside stratum " + std::to_string(w));
    std::vector<std::pair<LatticeIndex, S>> solved;
    for (const LatticeIndex& k : idx) {
      if (w == 1 && is_seed_index<S>(k)) {
        solved.emplace_back(k, k.m2 == 2 ? seeds.a10 : seeds.a01);
        continue;
      }
      const S F = indicial_factor(beta(1), sigma, k);
      if (resonant(F))
        throw Resonance(k.m2, k.n2, "indicial factor vanishes at " + to_string(k));
      S R = residual_without(k);
      solved.emplace_back(k, -(R / (seeds.a00 * F)));
    }
    for (auto& [k, v] : solved) known.emplace(k, std::move(v));
  }
  for (const auto& [k, v] : known) f.set(k, v);
  return f;
}

// b_{k,l} of sum b_{k,l} t^{(sigma+k)^2 + l}: (m,n) = ((k^2+k+l)/2, (k^2-k+l)/2).
template <class S>
struct GilView {
  std::map<std::pair<int, int>, S> coeffs;
  std::vector<std::pair<LatticeIndex, S>> nonrepresentable;
};

inline bool gil_representable(const LatticeIndex& idx, int& k, int& l) {
  k = (idx.m2 - idx.n2) / 2;
  l = (idx.m2 + idx.n2) / 2 - k * k;
  return l >= 0;
}

inline LatticeIndex gil_to_lattice(int k, int l) { return {k * k + k + l, k * k - k + l}; }

template <class S>
GilView<S> reindex_gil_view(const SigmaSeries<S>& f, bool strict = false) {
  GilView<S> out;
  for (const auto& [idx, c] : f.terms()) {
    int k, l;
    if (gil_representable(idx, k, l)) {
      out.coeffs.emplace(std::make_pair(k, l), c);
    } else if (!scalar_is_zero(c)) {
      if (strict) throw NonRepresentable("lattice point " + to_string(idx) + " has no (k,l) form");
      out.nonrepresentable.emplace_back(idx, c);
    }
  }
  return out;
}

}  // namespace p6tau
