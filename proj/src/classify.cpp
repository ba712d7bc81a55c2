#include "p6tau/classify.hpp"

#include <algorithm>

#include "p6tau/errors.hpp"
#include "p6tau/upoly.hpp"

namespace p6tau {

namespace {

MPoly unknown(int i) { return MPoly::var("a" + std::to_string(i)); }

// Reads a polynomial of total degree <= 1 in a1..a9 as (coefficients, constant).
std::pair<std::vector<Rational>, Rational> linear_form(const MPoly& p) {
  std::vector<Rational> row(9);
  Rational cst = 0;
  for (const auto& [m, c] : p.terms()) {
    if (m.empty()) {
      cst += c;
      continue;
    }
    if (m.size() != 1 || m[0].second != 1)
      throw InconsistentAnsatz("nonlinear condition " + p.to_string());
    const std::string& name = variable_name(m[0].first);
    if (name.size() != 2 || name[0] != 'a' || name[1] < '1' || name[1] > '9')
      throw InconsistentAnsatz("unexpected symbol " + name);
    row[static_cast<std::size_t>(name[1] - '1')] += c;
  }
  return {row, cst};
}

UPoly to_upoly(const MPoly& p, int var) {
  std::vector<Rational> c;
  for (int d = 0; d <= p.degree(var); ++d) {
    MPoly k = p.coefficient(var, d);
    if (!k.is_constant()) throw InvalidInput("top coefficient depends on formal parameters");
    c.push_back(k.constant());
  }
  return UPoly(c);
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0) return out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  return out;
}

// Distinct rational roots, by the rational root theorem.
std::vector<Rational> rational_roots(UPoly p) {
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, mpz_class(c.get_den()));
  std::vector<mpz_class> z;
  for (const auto& c : p.coeffs()) z.push_back(mpz_class(c * l));
  std::size_t lo = 0;
  while (lo < z.size() && z[lo] == 0) ++lo;
  if (lo > 0) roots.push_back(0);
  for (const auto& a : divisors(z[lo]))
    for (const auto& b : divisors(z.back()))
      for (int s : {1, -1}) {
        Rational r(a * s, b);
        r.canonicalize();
        if (p(r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

DiffPoly classification_ansatz() {
  const MPoly T = MPoly::var("t");
  const MPoly Tm1 = T - MPoly(1);
  DiffPoly p("t");
  p += expand_word({0, 4}).scaled(Tm1.pow(4));
  p += expand_word({1, 2}).scaled(Tm1.pow(3) * (T + MPoly(1)) * Rational(2));
  p += expand_word({0, 2}).scaled(Tm1.pow(2) * (MPoly(1) + unknown(1) + (MPoly(1) + unknown(2)) * T.pow(2)));
  p.add(2, 0, Tm1.pow(2) * unknown(3) * T);
  p.add(1, 1, Tm1.pow(2) * unknown(4) * T);
  p.add(1, 0, T * Tm1 * (unknown(5) * T + unknown(6)));
  p.add(0, 0, T * (unknown(7) * T.pow(2) + unknown(8) * T + unknown(9)));
  return p;
}

Classification classify_three_point() {
  Classification out;
  out.log.push_back("hypothesis: the coefficient of f delta^4 f is 2(t-1)^4 (t = 1 is its only zero, order 4)");
  const DiffPoly ansatz = classification_ansatz();
  out.log.push_back("ansatz: " + ansatz.to_string());

  const DiffPoly at1 = rebase_at_one(ansatz);
  auto [p0, deg] = lowest_term(at1);
  out.log.push_back("lowest stratum at u = t - 1 has degree " + std::to_string(deg) + ": " + p0.to_string());
  if (deg != 0) throw InconsistentAnsatz("lowest degree at t = 1 is not zero");

  TypeHConditions cond = typeH_conditions(p0);
  if (!cond.multiple.is_constant() || cond.multiple.is_zero())
    throw InconsistentAnsatz("top coefficient of the lowest stratum is not a nonzero constant");
  out.log.push_back("constant multiple: " + cond.multiple.to_string());

  // Rows over Q, columns a9..a1 so that pivots fall on the highest index.
  std::vector<std::vector<Rational>> rows;
  std::vector<MPoly> raw;
  for (const MPoly& e : cond.must_vanish) {
    out.log.push_back("type (H) requires: " + e.to_string() + " = 0");
    auto [coef, cst] = linear_form(e);
    std::vector<Rational> r;
    for (int i = 8; i >= 0; --i) r.push_back(coef[static_cast<std::size_t>(i)]);
    r.push_back(cst);
    rows.push_back(r);
    raw.push_back(e);
  }
  std::vector<int> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 9 && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    Rational inv = 1 / rows[rank][col];
    for (auto& v : rows[rank]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col];
      for (std::size_t c = 0; c < rows[r].size(); ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivots.push_back(static_cast<int>(col));
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r].back() != 0) throw InconsistentAnsatz("type (H) conditions at t = 1 are inconsistent");

  std::vector<bool> is_pivot(9, false);
  std::vector<std::pair<int, MPoly>> subst;
  for (std::size_t r = 0; r < rank; ++r) {
    const int col = pivots[r];
    const int idx = 9 - col;  // unknown a_idx
    is_pivot[static_cast<std::size_t>(col)] = true;
    MPoly solved = MPoly(-rows[r].back());
    MPoly relation = unknown(idx) + MPoly(rows[r].back());
    for (int c = 0; c < 9; ++c) {
      if (c == col || rows[r][static_cast<std::size_t>(c)] == 0) continue;
      solved -= unknown(9 - c) * rows[r][static_cast<std::size_t>(c)];
      relation += unknown(9 - c) * rows[r][static_cast<std::size_t>(c)];
    }
    // Clear denominators for the read-off form.
    mpz_class l = 1;
    for (const auto& [m, c] : relation.terms()) l = lcm(l, mpz_class(c.get_den()));
    relation *= Rational(l);
    out.constraints.push_back({"a" + std::to_string(idx), solved, relation});
    subst.emplace_back(intern_variable("a" + std::to_string(idx)), solved);
    out.log.push_back("solve: a" + std::to_string(idx) + " = " + solved.to_string());
  }
  std::sort(out.constraints.begin(), out.constraints.end(),
            [](const LinearRelation& a, const LinearRelation& b) { return a.pivot < b.pivot; });
  for (int c = 8; c >= 0; --c)
    if (!is_pivot[static_cast<std::size_t>(c)]) out.free_unknowns.push_back("a" + std::to_string(9 - c));

  DiffPoly fam = ansatz;
  for (const auto& [v, val] : subst) fam = fam.substituted(v, val);
  out.family = fam;
  out.family_words = to_hirota_form(fam);

  BetaParams<MPoly> b;
  b(1) = -unknown(1);
  b(2) = unknown(7);
  b(3) = unknown(7) + unknown(8);
  b(4) = unknown(5) * q_of(1, 2);
  b(5) = -(unknown(3) * q_of(1, 2));
  b(6) = -unknown(2);
  out.beta = b;
  const DiffPoly reference = to_diffpoly(build_typeH_equation(b));
  if (!(reference == fam)) throw InconsistentAnsatz("family does not match the beta form of the operator");
  out.log.push_back("beta map: beta1 = -a1, beta2 = a7, beta3 = a7 + a8, beta4 = a5/2, beta5 = -a3/2, beta6 = -a2");

  PointReport one = check_point(rebase_at_one(fam), "1");
  if (!one.typeH) throw InconsistentAnsatz("family is not of type (H) at t = 1");
  out.alpha_at_one = *one.alpha;
  out.log.push_back("exponent at t = 1: " + out.alpha_at_one.to_string());
  return out;
}

PointReport check_point(const DiffPoly& local, const std::string& name) {
  PointReport r;
  r.point = name;
  auto [p0, deg] = lowest_term(local);
  r.degree = deg;
  TypeHConditions c = typeH_conditions(p0);
  r.multiple = c.multiple;
  if (c.multiple.is_zero()) {
    r.reason = "no f delta^4 f term in the lowest stratum";
    return r;
  }
  if (!c.must_vanish.empty()) {
    r.reason = "template violated: " + c.must_vanish.front().to_string() + " != 0";
    return r;
  }
  if (!c.alpha) {
    r.reason = "multiple " + c.multiple.to_string() + " is not a constant";
    return r;
  }
  r.alpha = c.alpha;
  r.typeH = true;
  return r;
}

AllPointsReport verify_typeH_all_points(const DiffPoly& p) {
  if (p.basis() != Basis::Delta) throw InvalidInput("type (H) check expects the delta basis");
  const int t = p.var();
  const MPoly top = p.coeff(4, 0);
  if (top.is_zero() || top.degree(t) == 0)
    throw DegenerateTopCoefficient("coefficient of f delta^4 f is constant in " + p.var_name());
  AllPointsReport rep;
  rep.at0 = check_point(p, "0");
  rep.at1 = check_point(rebase_at_one(p), "1");
  rep.atinf = check_point(invert_at_infinity(p), "inf");

  UPoly q = to_upoly(top, t);
  const UPoly x = UPoly::x(), xm1 = UPoly::x() - UPoly(1);
  auto strip = [&](const UPoly& f) {
    while (q.degree() > 0) {
      auto [quo, rem] = UPoly::divmod(q, f);
      if (!rem.is_zero()) break;
      q = quo;
    }
  };
  strip(x);
  strip(xm1);
  for (const Rational& r : rational_roots(q)) {
    const UPoly f = UPoly::x() - UPoly(r);
    strip(f);
    rep.extras.push_back(check_point(rebase_at(p, r, "v"), to_string(r)));
  }
  rep.unresolved_degree = std::max(0, q.degree());
  rep.all_typeH = rep.at0.typeH && rep.at1.typeH && rep.atinf.typeH && rep.unresolved_degree == 0 &&
                  std::all_of(rep.extras.begin(), rep.extras.end(), [](const PointReport& e) { return e.typeH; });
  return rep;
}

AllPointsReport verify_typeH_all_points(const HirotaForm<MPoly>& L) {
  return verify_typeH_all_points(to_diffpoly(L));
}

std::pair<DiffPoly, int> reduce_order_at_one(const DiffPoly& p) {
  const DiffPoly u = rebase_at_one(p);
  const int deg = lowest_term(u).second;
  if (deg < 0) throw InvalidInput("negative lowest degree at t = 1");
  DiffPoly q(u.var_name(), Basis::Delta, u.shift());
  for (const auto& [kl, c] : u.terms()) q.add(kl.first, kl.second, c.shift(u.var(), -deg));
  return {q, deg};
}

}  // namespace p6tau
