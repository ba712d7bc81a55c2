#include "p6tau/params.hpp"

namespace p6tau {

DiffPoly conjugate_by_gauge(const DiffPoly& p, const MPoly& a, const MPoly& c) {
  if (p.basis() != Basis::Delta) throw InvalidInput("gauge conjugation expects the delta basis");
  const int x = p.var();
  const MPoly T = MPoly::var(x);
  const MPoly Tm1 = T - MPoly(1);
  const int K = std::max(0, p.max_order());

  // psi_i = (t-1)^i phi^{-1} delta^i phi
  const MPoly rho = a * Tm1 + c * T;
  std::vector<MPoly> psi{MPoly(1)};
  for (int i = 0; i < K; ++i) {
    const MPoly& q = psi.back();
    psi.push_back(rho * q + Tm1 * T * q.derivative(x) - T * q * Rational(i));
  }
  // (t-1)^k phi^{-1} delta^k f = sum_i C(k,i) psi_i (t-1)^{k-i} delta^{k-i} g
  auto expand = [&](int k) {
    std::vector<std::pair<int, MPoly>> out;
    for (int i = 0; i <= k; ++i) out.emplace_back(k - i, psi[static_cast<std::size_t>(i)] * Tm1.pow(k - i) * binomial(k, i));
    return out;
  };
  DiffPoly r(p.var_name(), Basis::Delta, p.shift());
  for (const auto& [kl, coef] : p.terms()) {
    const MPoly pre = coef * Tm1.pow(K - kl.first - kl.second);
    for (const auto& [k1, c1] : expand(kl.first))
      for (const auto& [k2, c2] : expand(kl.second)) r.add(k1, k2, pre * c1 * c2);
  }
  return r;
}

}  // namespace p6tau
