#include "p6tau/hirota.hpp"

#include "p6tau/errors.hpp"

namespace p6tau {

namespace {

// Words of total order s, N descending: D^s (if even), delta^2 D^{s-2}, ...
std::vector<HirotaWord> words_of_order(int s) {
  std::vector<HirotaWord> out;
  for (int N = s - (s % 2); N >= 0; N -= 2) out.push_back({s - N, N});
  return out;
}

std::vector<std::pair<int, int>> monomials_of_order(int s) {
  std::vector<std::pair<int, int>> out;
  for (int k = s; 2 * k >= s; --k) out.emplace_back(k, s - k);
  return out;
}

// Solves M x = b over Q for a square nonsingular M.
std::vector<MPoly> solve(std::vector<std::vector<Rational>> M, std::vector<MPoly> b) {
  const std::size_t n = M.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(M[piv][col])) ++piv;
    if (piv == n) throw InternalMismatch("word basis is singular");
    std::swap(M[piv], M[col]);
    std::swap(b[piv], b[col]);
    Rational inv = 1 / M[col][col];
    for (auto& v : M[col]) v *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(M[r][col])) continue;
      Rational f = M[r][col];
      for (std::size_t c = 0; c < n; ++c) M[r][c] -= f * M[col][c];
      b[r] -= b[col] * MPoly(f);
    }
  }
  return b;
}

}  // namespace

HirotaForm<MPoly> to_hirota_form(const DiffPoly& p) {
  if (p.basis() != Basis::Delta) throw InvalidInput("word decomposition expects the delta basis");
  const int x = p.var();
  for (const auto& kv : p.terms())
    if (kv.first.first + kv.first.second > 4) throw InvalidInput("order above four has no word form");
  HirotaForm<MPoly> out;
  for (int s = 0; s <= 4; ++s) {
    auto words = words_of_order(s);
    auto monos = monomials_of_order(s);
    std::vector<std::vector<Rational>> M(monos.size(), std::vector<Rational>(words.size()));
    for (std::size_t c = 0; c < words.size(); ++c) {
      DiffPoly e = expand_word(words[c], p.var_name());
      for (std::size_t r = 0; r < monos.size(); ++r)
        M[r][c] = e.coeff(monos[r].first, monos[r].second).constant();
    }
    std::vector<MPoly> rhs;
    bool any = false;
    for (const auto& m : monos) {
      rhs.push_back(p.coeff(m.first, m.second));
      any = any || !rhs.back().is_zero();
    }
    if (!any) continue;
    std::vector<MPoly> x_w = solve(M, rhs);
    for (std::size_t c = 0; c < words.size(); ++c) {
      if (x_w[c].is_zero()) continue;
      TPoly<MPoly> poly;
      for (int d = 0; d <= x_w[c].degree(x); ++d) poly.push_back(x_w[c].coefficient(x, d));
      out.add(words[c], poly);
    }
  }
  return out;
}

LowestBlock lowest_block_expanded() {
  DiffPoly d = to_diffpoly(lowest_block_form<Rational>(Rational(1)));
  return {d, to_ddt_basis(d)};
}

}  // namespace p6tau
