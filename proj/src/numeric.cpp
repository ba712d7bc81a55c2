#include "p6tau/numeric.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace p6tau {

namespace {

double vmax(const State& y) {
  double m = 0;
  for (const auto& v : y) m = std::max(m, std::abs(v));
  return m;
}

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> ks) {
  State r = y;
  for (std::size_t i = 0; i < r.size(); ++i) {
    cd acc = 0;
    for (const auto& [a, k] : ks) acc += a * (*k)[i];
    r[i] += h * acc;
  }
  return r;
}

bool finite(const State& y) {
  for (const auto& v : y)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

struct Dense {
  State r1, r2, r3, r4, r5;
  double h;

  State value(double th) const {
    State y(r1.size());
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] = r1[i] + th * (r2[i] + (1 - th) * (r3[i] + th * (r4[i] + (1 - th) * r5[i])));
    return y;
  }
  // d/dtau of the interpolant
  State slope(double th) const {
    State y(r1.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      cd g = r3[i] + th * (r4[i] + (1 - th) * r5[i]);
      cd gp = r4[i] + (1 - 2 * th) * r5[i];
      cd inner = r2[i] + (1 - th) * g;
      cd innerp = -g + (1 - th) * gp;
      y[i] = (inner + th * innerp) / h;
    }
    return y;
  }
};

void mark_pole(Trajectory& tr, const std::string& why) {
  tr.status = RunStatus::MovablePole;
  tr.message = why;
}

}  // namespace

void Trajectory::require_completed() const {
  if (status == RunStatus::MovablePole) throw MovablePole(message);
}

Trajectory integrate_dopri(const Field& f, cd t0, cd t1, State y, const IntegratorOptions& opt,
                           const PoleGuard& guard) {
  if (!(opt.tol > 0)) throw InvalidInput("tolerance must be positive");
  const cd span = t1 - t0;
  auto F = [&](double tau, const State& s) {
    State d = f(t0 + tau * span, s);
    for (auto& v : d) v *= span;
    return d;
  };
  Trajectory tr;
  tr.samples.push_back({0.0, t0, y});
  if (guard)
    if (auto why = guard(t0, y)) {
      mark_pole(tr, *why);
      return tr;
    }
  for (std::size_t i = 0; i < opt.output_tau.size(); ++i)
    if (!(opt.output_tau[i] > 0 && opt.output_tau[i] <= 1) || (i > 0 && opt.output_tau[i] <= opt.output_tau[i - 1]))
      throw InvalidInput("output grid must increase inside (0, 1]");
  std::size_t next_out = 0;
  double tau = 0, h = std::min(opt.initial_step, 1.0);
  State k1 = F(tau, y);
  while (tau < 1.0) {
    if (tr.accepted_steps + tr.rejected_steps >= opt.max_steps) throw StepUnderflow("step budget exhausted");
    h = std::min(h, 1.0 - tau);
    if (h < opt.min_step) throw StepUnderflow("step size underflow at t = " + std::to_string((t0 + tau * span).real()));
    State k2 = F(tau + c2 * h, axpy(y, h, {{a21, &k1}}));
    State k3 = F(tau + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    State k4 = F(tau + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    State k5 = F(tau + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    State k6 = F(tau + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    State yn = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    State k7 = F(tau + h, yn);
    double err = 0;
    if (!finite(yn) || !finite(k7)) {
      err = 1e10;
    } else {
      for (std::size_t i = 0; i < y.size(); ++i) {
        cd e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double sc = opt.tol * (1.0 + std::max(std::abs(y[i]), std::abs(yn[i])));
        err = std::max(err, std::abs(e) / sc);
      }
    }
    Dense dn;
    double defect = 0;
    if (err <= 1.0) {
      dn.h = h;
      dn.r1 = y;
      dn.r2.resize(y.size());
      dn.r3.resize(y.size());
      dn.r4.resize(y.size());
      dn.r5.resize(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        dn.r2[i] = yn[i] - y[i];
        dn.r3[i] = h * k1[i] - dn.r2[i];
        dn.r4[i] = dn.r2[i] - h * k7[i] - dn.r3[i];
        dn.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      // defect of the interpolant at the step midpoint, in units of the step;
      // it is controlled like the local error
      State ym = dn.value(0.5), sm = dn.slope(0.5), fm = F(tau + 0.5 * h, ym);
      for (std::size_t i = 0; i < y.size(); ++i)
        defect = std::max(defect, std::abs(sm[i] - fm[i]) * h / (1.0 + std::abs(ym[i])));
      if (!std::isfinite(defect)) defect = 1e10 * opt.tol;
      err = std::max(err, defect / opt.tol);
    }
    if (err > 1.0) {
      ++tr.rejected_steps;
      h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
      continue;
    }
    tr.max_defect = std::max(tr.max_defect, defect);

    const double tau_new = (1.0 - tau - h < 1e-15) ? 1.0 : tau + h;
    if (opt.output_tau.empty()) {
      tr.samples.push_back({tau_new, t0 + tau_new * span, yn});
    } else {
      while (next_out < opt.output_tau.size() && opt.output_tau[next_out] <= tau_new + 1e-15) {
        const double to = opt.output_tau[next_out++];
        tr.samples.push_back({to, t0 + to * span, to >= tau_new ? yn : dn.value((to - tau) / h)});
      }
    }
    tau = tau_new;
    y = std::move(yn);
    k1 = std::move(k7);
    ++tr.accepted_steps;
    if (guard)
      if (auto why = guard(t0 + tau * span, y)) {
        mark_pole(tr, *why);
        return tr;
      }
    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
  }
  return tr;
}

Trajectory integrate_rk4(const Field& f, cd t0, cd t1, State y, int steps, const PoleGuard& guard) {
  if (steps <= 0) throw InvalidInput("step count must be positive");
  const cd span = t1 - t0;
  const double h = 1.0 / steps;
  Trajectory tr;
  tr.samples.push_back({0.0, t0, y});
  for (int n = 0; n < steps; ++n) {
    const double tau = n * h;
    auto F = [&](double s, const State& v) {
      State d = f(t0 + s * span, v);
      for (auto& x : d) x *= span;
      return d;
    };
    State k1 = F(tau, y);
    State k2 = F(tau + h / 2, axpy(y, h / 2, {{1.0, &k1}}));
    State k3 = F(tau + h / 2, axpy(y, h / 2, {{1.0, &k2}}));
    State k4 = F(tau + h, axpy(y, h, {{1.0, &k3}}));
    y = axpy(y, h / 6, {{1.0, &k1}, {2.0, &k2}, {2.0, &k3}, {1.0, &k4}});
    const double tn = (n + 1 == steps) ? 1.0 : (n + 1) * h;
    tr.samples.push_back({tn, t0 + tn * span, y});
    ++tr.accepted_steps;
    if (!finite(y)) {
      mark_pole(tr, "non-finite state");
      return tr;
    }
    if (guard)
      if (auto why = guard(t0 + tn * span, y)) {
        mark_pole(tr, *why);
        return tr;
      }
  }
  return tr;
}

Field p6_field(const AbcdParams<cd>& k) {
  return [k](cd t, const State& y) -> State {
    const cd q = y[0], dq = y[1];
    const cd qt = q - t;
    cd d2 = 0.5 * (1.0 / q + 1.0 / (q - 1.0) + 1.0 / qt) * dq * dq -
            (1.0 / t + 1.0 / (t - 1.0) + 1.0 / qt) * dq +
            q * (q - 1.0) * qt / (t * t * (t - 1.0) * (t - 1.0)) *
                (k.a + k.b * t / (q * q) + k.c * (t - 1.0) / ((q - 1.0) * (q - 1.0)) +
                 k.d * t * (t - 1.0) / (qt * qt));
    return {dq, d2};
  };
}

namespace {

void require_off_fixed(cd t0, cd t1) {
  // the straight path must avoid t = 0 and t = 1
  for (cd s : {cd(0), cd(1)}) {
    const cd d = t1 - t0;
    double u = std::real((s - t0) * std::conj(d)) / std::norm(d);
    u = std::clamp(u, 0.0, 1.0);
    if (std::abs(t0 + u * d - s) < 1e-12) throw PoleAtT("integration path meets a fixed singular point");
  }
}

}  // namespace

Trajectory integrate_p6(const AbcdParams<cd>& k, cd t0, cd t1, cd q0, cd dq0, const IntegratorOptions& opt) {
  require_off_fixed(t0, t1);
  const double g = opt.pole_guard;
  PoleGuard guard = [g](cd t, const State& y) -> std::optional<std::string> {
    const cd q = y[0];
    if (std::abs(q) < g || std::abs(q - 1.0) < g || std::abs(q - t) < g)
      return "q meets 0, 1 or t near t = " + std::to_string(t.real());
    if (std::abs(q) > 1 / g || std::abs(y[1]) > 1 / g) return "q blows up near t = " + std::to_string(t.real());
    return std::nullopt;
  };
  Trajectory tr = integrate_dopri(p6_field(k), t0, t1, {q0, dq0}, opt, guard);
  tr.equation = "painleve6";
  tr.components = {"q", "dq"};
  return tr;
}

namespace {

// Truncated Taylor arithmetic to order 3.
struct Jet {
  std::array<cd, 4> c{};
  Jet() = default;
  Jet(cd v) { c[0] = v; }  // NOLINT(google-explicit-constructor)
  Jet(double v) { c[0] = v; }  // NOLINT(google-explicit-constructor)
};
Jet operator+(Jet a, const Jet& b) {
  for (int i = 0; i < 4; ++i) a.c[i] += b.c[i];
  return a;
}
Jet operator-(Jet a, const Jet& b) {
  for (int i = 0; i < 4; ++i) a.c[i] -= b.c[i];
  return a;
}
Jet operator-(Jet a) {
  for (auto& v : a.c) v = -v;
  return a;
}
Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; i + j < 4; ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}
Jet operator/(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k < 4; ++k) {
    cd s = a.c[k];
    for (int j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
    r.c[k] = s / b.c[0];
  }
  return r;
}

template <class T>
T ham_A(const T& t, const T& q) {
  return q * (q - 1.0) * (q - t);
}

template <class T>
T ham_B(const ThetaParams<cd>& th, const T& t, const T& q) {
  return T(th.thetat) * (q - 1.0) * (q - t) + T(th.kappa1 - th.kappa2 - 1.0) * q * (q - t) +
         T(th.theta0 + 1.0) * q * (q - 1.0);
}

template <class T>
std::pair<T, T> ham_rhs(const ThetaParams<cd>& th, const T& t, const T& q, const T& p) {
  const T u = t * (t - 1.0);
  const T Aq = T(3.0) * q * q - T(2.0) * (t + 1.0) * q + t;
  const T Bq = T(th.thetat) * (T(2.0) * q - 1.0 - t) + T(th.kappa1 - th.kappa2 - 1.0) * (T(2.0) * q - t) +
               T(th.theta0 + 1.0) * (T(2.0) * q - 1.0);
  const T dq = (T(2.0) * ham_A(t, q) * p + ham_B(th, t, q)) / u;
  const T dp = -((Aq * p * p + Bq * p + T(th.K())) / u);
  return {dq, dp};
}

}  // namespace

Field hamilton_field(const ThetaParams<cd>& th) {
  return [th](cd t, const State& y) -> State {
    auto [dq, dp] = ham_rhs<cd>(th, t, y[0], y[1]);
    return {dq, dp};
  };
}

std::array<cd, 4> hamilton_h_jet(const ThetaParams<cd>& th, cd t0, cd q0, cd p0) {
  Jet t, q(q0), p(p0);
  t.c[0] = t0;
  t.c[1] = 1.0;
  for (int pass = 0; pass < 3; ++pass) {
    auto [dq, dp] = ham_rhs<Jet>(th, t, q, p);
    for (int k = 0; k < 3; ++k) {
      q.c[k + 1] = dq.c[k] / double(k + 1);
      p.c[k + 1] = dp.c[k] / double(k + 1);
    }
  }
  Jet h = ham_A(t, q) * p * p + ham_B(th, t, q) * p + Jet(th.K()) * (q - t);
  return {h.c[0], h.c[1], 2.0 * h.c[2], 6.0 * h.c[3]};
}

Trajectory integrate_hamilton(const ThetaParams<cd>& th, cd t0, cd t1, cd q0, cd p0, const IntegratorOptions& opt) {
  require_theta_invariant(th);
  require_off_fixed(t0, t1);
  const double g = opt.pole_guard;
  PoleGuard guard = [g](cd t, const State& y) -> std::optional<std::string> {
    if (std::abs(y[0]) > 1 / g || std::abs(y[1]) > 1 / g)
      return "(q, p) blows up near t = " + std::to_string(t.real());
    return std::nullopt;
  };
  Trajectory tr = integrate_dopri(hamilton_field(th), t0, t1, {q0, p0}, opt, guard);
  tr.equation = "hamilton";
  tr.components = {"q", "p", "h", "dh", "d2h"};
  tr.residual_name = "sigma_form";
  for (auto& s : tr.samples) {
    auto j = hamilton_h_jet(th, s.t, s.y[0], s.y[1]);
    s.y.push_back(j[0]);
    s.y.push_back(j[1]);
    s.y.push_back(j[2]);
    s.residual = std::abs(sigma_form_residual<cd>(th, s.t, j[0], j[1], j[2]));
  }
  return tr;
}

Field third_order_field(const BetaParams<cd>& b) {
  return [b](cd t, const State& y) -> State {
    const cd u = t * (t - 1.0);
    const cd rest = third_order_residual<cd>(b, t, y[0], y[1], y[2], cd(0));
    return {y[1], y[2], -rest / (u * u)};
  };
}

Trajectory integrate_third_order(const BetaParams<cd>& b, cd t0, cd t1, const std::array<cd, 3>& h0,
                                 const IntegratorOptions& opt) {
  require_off_fixed(t0, t1);
  const double g = opt.pole_guard;
  PoleGuard guard = [g](cd t, const State& y) -> std::optional<std::string> {
    if (vmax(y) > 1 / g) return "h blows up near t = " + std::to_string(t.real());
    return std::nullopt;
  };
  Trajectory tr = integrate_dopri(third_order_field(b), t0, t1, {h0[0], h0[1], h0[2]}, opt, guard);
  tr.equation = "third_order";
  tr.components = {"h", "dh", "d2h"};
  return tr;
}

double conservation_drift(const BetaParams<cd>& b, const Trajectory& tr) {
  if (tr.samples.empty()) return 0.0;
  auto E = [&](const Sample& s) { return second_order_expression<cd>(b, s.t, s.y[0], s.y[1], s.y[2]); };
  // largest individual term along the run
  auto terms = [&](const Sample& s) {
    const cd t = s.t, h = s.y[0], dh = s.y[1], d2h = s.y[2];
    const cd u = t * (t - 1.0);
    return std::max({std::abs(u * u * d2h * d2h), std::abs(4.0 * u * dh * dh * dh),
                     std::abs(4.0 * (2.0 * t - 1.0) * h * dh * dh), std::abs(4.0 * h * h * dh),
                     std::abs(b(1) * dh * dh), std::abs(b(2) * (t * dh - h)), std::abs(b(3) * dh),
                     std::abs(b(5) * (h * dh - t * dh * dh)),
                     std::abs(b(6) * (2.0 * t * h * dh - t * t * dh * dh - h * h))});
  };
  double scale = 1.0;
  const cd e0 = E(tr.samples.front());
  double drift = 0;
  for (const auto& s : tr.samples) {
    scale = std::max(scale, terms(s));
    drift = std::max(drift, std::abs(E(s) - e0));
  }
  return drift / scale;
}

std::array<cd, 3> h_from_series(const SigmaSeries<BigComplex>& f, const BigComplex& t) {
  const BigComplex& sigma = f.sigma();
  std::vector<BigComplex> v;
  SigmaSeries<BigComplex> g = f;
  for (int k = 0; k < 4; ++k) {
    v.push_back(evaluate(g, t, sigma).value);
    g = apply_delta(g);
  }
  const BigComplex F1 = v[1] / v[0], F2 = v[2] / v[0], F3 = v[3] / v[0];
  const BigComplex one(1), two(2), three(3);
  const BigComplex dg = F2 - F1 * F1;
  const BigComplex d2g = F3 - three * F1 * F2 + two * F1 * F1 * F1;
  const BigComplex tm = t - one;
  const BigComplex h = tm * F1;
  const BigComplex dh = t * F1 + tm * dg;
  const BigComplex d2h = t * F1 + two * t * dg + tm * d2g;
  return {h.to_complex(), (dh / t).to_complex(), ((d2h - dh) / (t * t)).to_complex()};
}

CrosscheckReport crosscheck_series_vs_ode(const CrosscheckConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  if (!(cfg.t_match > 0 && cfg.t_end > cfg.t_match && cfg.t_end < 1))
    throw InvalidInput("need 0 < t_match < t_end < 1");
  if (cfg.samples < 2) throw InvalidInput("need at least two comparison points");
  SeedData<BigComplex> seeds{cfg.sigma, cfg.a00, cfg.a10, cfg.a01, cfg.weight};
  const SigmaSeries<BigComplex> f = solve_series(cfg.beta, seeds);

  BetaParams<cd> b;
  for (int i = 1; i <= 6; ++i) b(i) = cfg.beta(i).to_complex();

  CrosscheckReport rep;
  rep.t_match = cfg.t_match;
  const auto h0 = h_from_series(f, BigComplex(Rational(cfg.t_match)));
  IntegratorOptions opt;
  opt.tol = cfg.tol;
  opt.initial_step = 1e-2;
  for (int i = 1; i < cfg.samples; ++i) opt.output_tau.push_back(double(i) / (cfg.samples - 1));
  Trajectory tr = integrate_third_order(b, cd(cfg.t_match), cd(cfg.t_end), h0, opt);
  tr.require_completed();
  rep.ode_defect = tr.max_defect;

  for (const Sample& s : tr.samples) {
    const double t = s.t.real();
    const auto hs = h_from_series(f, BigComplex(Rational(t)));
    std::array<double, 4> row{t, std::abs(s.y[0] - hs[0]), std::abs(s.y[1] - hs[1]), std::abs(s.y[2] - hs[2])};
    rep.max_deviation = std::max(rep.max_deviation, row[1]);
    rep.max_deviation_dh = std::max(rep.max_deviation_dh, row[2]);
    rep.max_deviation_d2h = std::max(rep.max_deviation_d2h, row[3]);
    rep.table.push_back(row);
  }

  {
    const SeriesValue ve = evaluate(f, BigComplex(Rational(cfg.t_end)), cfg.sigma);
    rep.series_tail_estimate = static_cast<double>(abs(ve.top_stratum) / abs(ve.value));
    const SeriesValue v = evaluate(f, BigComplex(q_of(1, 100)), cfg.sigma);
    const double fv = static_cast<double>(abs(v.value));
    for (const auto& st : v.strata) rep.top_strata.push_back(static_cast<double>(abs(st)) / fv);
    rep.strata_decay = true;
    for (std::size_t w = 4; w < rep.top_strata.size(); ++w)
      if (!(rep.top_strata[w] < rep.top_strata[w - 1])) rep.strata_decay = false;
  }

  if (b.reducible_to_second_order() || std::abs(b.J()) < 1e-12) rep.conservation_drift = conservation_drift(b, tr);
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream out;
  out.precision(17);
  out << "t_re,t_im";
  for (const auto& c : tr.components) out << "," << c << "_re," << c << "_im";
  if (!tr.residual_name.empty()) out << "," << tr.residual_name << "_residual";
  out << "\n";
  for (const auto& s : tr.samples) {
    out << s.t.real() << "," << s.t.imag();
    for (const auto& v : s.y) out << "," << v.real() << "," << v.imag();
    if (!tr.residual_name.empty()) out << "," << s.residual;
    out << "\n";
  }
  return out.str();
}

}  // namespace p6tau
