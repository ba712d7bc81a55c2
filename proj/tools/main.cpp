#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "p6tau/classify.hpp"
#include "p6tau/json_io.hpp"
#include "p6tau/numeric.hpp"
#include "p6tau/reduction.hpp"
#include "p6tau/tau_solver.hpp"

using namespace p6tau;

namespace {

struct Global {
  unsigned precision = 256;
  bool exact = false;
  int weight = 8;
  double tol = 1e-10;
  std::string out;
  bool porcelain = false;
  std::uint64_t seed = 20240611;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  return out;
}

template <class S>
S from_text(const std::string& s);
template <>
Rational from_text<Rational>(const std::string& s) {
  return parse_rational(s);
}
template <>
RatFunc from_text<RatFunc>(const std::string& s) {
  return parse_ratfunc(s, "1");
}
template <>
BigComplex from_text<BigComplex>(const std::string& s) {
  return parse_bigcomplex(s);
}
template <>
MPoly from_text<MPoly>(const std::string& s) {
  return parse_mpoly(s);
}

template <class S>
std::vector<S> values(const std::string& list, std::size_t n, const std::string& what) {
  std::vector<std::string> parts = split(list);
  if (parts.size() != n)
    throw InvalidInput(what + " needs " + std::to_string(n) + " comma-separated values, got " +
                       std::to_string(parts.size()));
  std::vector<S> v;
  for (const auto& p : parts) v.push_back(from_text<S>(p));
  return v;
}

template <class S>
ThetaParams<S> theta_from(const std::string& list) {
  std::vector<std::string> parts = split(list);
  if (parts.size() == 4) {
    auto v = values<S>(list, 4, "--theta");
    return theta_from_four(v[0], v[1], v[2], v[3]);
  }
  auto v = values<S>(list, 5, "--theta");
  ThetaParams<S> th{v[0], v[1], v[2], v[3], v[4]};
  require_theta_invariant(th);
  return th;
}

template <class S>
BetaParams<S> beta_from_list(const std::string& list) {
  auto v = values<S>(list, 6, "--beta");
  BetaParams<S> b;
  for (int i = 1; i <= 6; ++i) b(i) = v[static_cast<std::size_t>(i - 1)];
  return b;
}

// --theta or --beta, one of them
struct ParamInput {
  std::string theta;
  std::string beta;
  bool normalized = false;

  template <class S>
  BetaParams<S> resolve(const std::string& fallback_theta = "") const {
    if (!theta.empty() && !beta.empty()) throw InvalidInput("give either --theta or --beta, not both");
    if (!beta.empty()) return beta_from_list<S>(beta);
    const std::string t = theta.empty() ? fallback_theta : theta;
    if (t.empty()) throw InvalidInput("parameters missing: give --theta or --beta");
    const ThetaParams<S> th = theta_from<S>(t);
    return normalized ? theta_to_beta_normalized(th) : theta_to_beta(th);
  }
};

// Comma lists stay one string; a config file hands them over split, so rejoin.
CLI::Option* as_list(CLI::Option* o) { return o->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join); }

void add_params(CLI::App* sub, ParamInput& p) {
  as_list(sub->add_option("--theta", p.theta, "theta0,theta1,thetat,kappa1[,kappa2] (sum zero)"));
  as_list(sub->add_option("--beta", p.beta, "beta1,...,beta6"));
  sub->add_flag("--normalized", p.normalized, "with --theta, use the beta5 = beta6 = 0 chart");
}

std::string option_key(const CLI::Option* o) { return o->get_single_name(); }

// Every option of the run with its effective text value.
json config_echo(const CLI::App& app, const CLI::App* sub) {
  json c = json::object();
  auto add = [](const CLI::App* a, json& dst) {
    for (const CLI::Option* o : a->get_options()) {
      const std::string k = option_key(o);
      if (k == "help" || k == "config" || k.empty()) continue;
      if (o->get_expected_max() == 0) {
        dst[k] = o->count() > 0;
      } else if (o->count() > 0) {
        std::string joined;
        for (const auto& r : o->results()) joined += (joined.empty() ? "" : ",") + r;
        dst[k] = joined;
      } else {
        dst[k] = o->get_default_str();
      }
    }
  };
  json global = json::object();
  add(&app, global);
  c["global"] = global;
  if (sub) {
    json local = json::object();
    add(sub, local);
    c["subcommand"] = sub->get_name();
    c["options"] = local;
  }
  return c;
}

struct Output {
  const Global& g;

  void log(const std::string& s) const {
    if (!g.porcelain) std::cerr << s << "\n";
  }

  void emit(const json& j) const {
    const std::string text = dump(j);
    if (g.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + g.out);
    f << text;
    log("wrote " + g.out);
  }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- series ----

struct SeriesArgs {
  ParamInput params;
  std::string sigma;
  std::string a00 = "1", a10 = "1", a01 = "1";
};

template <class S>
json run_series(const Global& g, const SeriesArgs& a, const S& sigma, const Output& out) {
  const BetaParams<S> beta = a.params.resolve<S>();
  SeedData<S> seeds{sigma, from_text<S>(a.a00), from_text<S>(a.a10), from_text<S>(a.a01), g.weight};
  const auto t0 = std::chrono::steady_clock::now();
  const SigmaSeries<S> f = solve_series(beta, seeds);
  const SigmaSeries<S> r = apply_equation(build_typeH_equation(beta), f);
  json rep = residual_report(r);
  out.log("series: " + std::to_string(f.terms().size()) + " terms through weight " + std::to_string(g.weight) +
          ", residual_max " + fmt(rep.at("residual_max").get<double>()) + ", " + fmt(seconds_since(t0)) + " s");
  return {{"beta", beta_to_json(beta)}, {"series", series_to_json(f)}, {"residual", rep}};
}

json cmd_series(const Global& g, const SeriesArgs& a, const Output& out) {
  if (g.exact) {
    const RatFunc sigma = a.sigma == "sigma" ? RatFunc::sigma() : from_text<RatFunc>(a.sigma);
    json j = run_series<RatFunc>(g, a, sigma, out);
    j["mode"] = "exact";
    return j;
  }
  json j = run_series<BigComplex>(g, a, parse_bigcomplex(a.sigma), out);
  j["mode"] = "numeric";
  return j;
}

// ---- classify ----

struct ClassifyArgs {
  std::string verify_beta;
  std::string at;
};

std::string canonical_point(const std::string& p) {
  if (p == "0" || p == "1") return p;
  if (p == "inf" || p == "infinity") return "inf";
  throw InvalidInput("unsupported point '" + p + "': choose 0, 1 or inf");
}

json cmd_classify(const ClassifyArgs& a, const Output& out) {
  const std::string at = a.at.empty() ? "" : canonical_point(a.at);
  AllPointsReport rep;
  json j;
  if (!a.verify_beta.empty()) {
    const BetaParams<MPoly> b = beta_from_list<MPoly>(a.verify_beta);
    rep = verify_typeH_all_points(build_typeH_equation(b));
    j["beta"] = beta_to_json(b);
  } else {
    const auto t0 = std::chrono::steady_clock::now();
    const Classification c = classify_three_point();
    out.log("classify: " + std::to_string(c.constraints.size()) + " constraints, " +
            std::to_string(c.free_unknowns.size()) + " free unknowns, " + fmt(seconds_since(t0)) + " s");
    for (const auto& r : c.constraints) out.log("  " + r.relation.to_string() + " = 0");
    j = classification_to_json(c);
    rep = verify_typeH_all_points(c.family_words);
  }
  if (at.empty()) {
    j["points"] = all_points_to_json(rep);
    out.log(std::string("type (H) at 0, 1, inf: ") + (rep.all_typeH ? "yes" : "no"));
  } else {
    const PointReport& p = at == "0" ? rep.at0 : at == "1" ? rep.at1 : rep.atinf;
    j["point"] = point_report_to_json(p);
    out.log("type (H) at " + at + ": " + (p.typeH ? "yes" : "no"));
  }
  return j;
}

// ---- convert ----

struct ConvertArgs {
  std::string from = "theta";
  std::string to = "beta";
  std::string values;
  std::string branch = "1,1,1,1";
};

json scalar_text(const Rational& x) { return to_string(x); }
json scalar_text(const BigComplex& x) { return scalar_to_json(x); }

template <class S>
json theta_json(const ThetaParams<S>& t) {
  return {{"theta0", scalar_text(t.theta0)}, {"theta1", scalar_text(t.theta1)}, {"thetat", scalar_text(t.thetat)},
          {"kappa1", scalar_text(t.kappa1)}, {"kappa2", scalar_text(t.kappa2)}};
}

template <class S>
json abcd_json(const AbcdParams<S>& k) {
  return {{"a", scalar_text(k.a)}, {"b", scalar_text(k.b)}, {"c", scalar_text(k.c)}, {"d", scalar_text(k.d)}};
}

template <class S>
json beta_json(const BetaParams<S>& b) {
  json j = json::object();
  for (int i = 1; i <= 6; ++i) j["beta" + std::to_string(i)] = scalar_text(b(i));
  j["J"] = scalar_text(b.J());
  return j;
}

template <class S>
json run_convert(const ConvertArgs& a) {
  ThetaParams<S> th;
  if (a.from == "theta") {
    th = theta_from<S>(a.values);
  } else if (a.from == "abcd") {
    auto v = values<S>(a.values, 4, "abcd");
    auto s = values<Rational>(a.branch, 4, "--branch");
    AbcdBranch br{static_cast<int>(s[0].get_num().get_si()), static_cast<int>(s[1].get_num().get_si()),
                  static_cast<int>(s[2].get_num().get_si()), static_cast<int>(s[3].get_num().get_si())};
    for (const auto& x : s)
      if (x != 1 && x != -1) throw InvalidInput("branch signs must be +1 or -1");
    th = abcd_to_theta(AbcdParams<S>{v[0], v[1], v[2], v[3]}, br);
  } else {
    throw InvalidInput("--from must be theta or abcd");
  }
  if (a.to == "beta") return beta_json(theta_to_beta(th));
  if (a.to == "normalized") return beta_json(theta_to_beta_normalized(th));
  if (a.to == "abcd") return abcd_json(theta_to_abcd(th));
  if (a.to == "theta") return theta_json(th);
  throw InvalidInput("--to must be beta, normalized, abcd or theta");
}

json cmd_convert(const Global& g, const ConvertArgs& a, const Output& out) {
  if (a.values.empty()) throw InvalidInput("convert needs the parameter values");
  bool rational = true;
  try {
    for (const auto& p : split(a.values)) (void)parse_rational(p);
  } catch (const InvalidInput&) {
    rational = false;
  }
  json j;
  if (rational) {
    j = {{"mode", "exact"}, {"output", run_convert<Rational>(a)}};
  } else {
    ScopedPrecision prec(g.precision);
    j = {{"mode", "numeric"}, {"output", run_convert<BigComplex>(a)}};
  }
  j["from"] = a.from;
  j["to"] = a.to;
  out.log("convert " + a.from + " -> " + a.to + ": " + j["output"].dump());
  return j;
}

// ---- gauge ----

struct GaugeArgs {
  ParamInput params;
  std::string alpha = "0";
  std::string gamma = "0";
  bool normalize = false;
};

json cmd_gauge(const GaugeArgs& a, const Output& out) {
  BetaParams<MPoly> b;
  if (a.params.theta.empty() && a.params.beta.empty()) {
    for (int i = 1; i <= 6; ++i) b(i) = MPoly::var("b" + std::to_string(i));
  } else {
    b = a.params.resolve<MPoly>();
  }
  MPoly al = parse_mpoly(a.alpha), ga = parse_mpoly(a.gamma);
  if (a.normalize) std::tie(al, ga) = normalizing_gauge(b);
  const BetaParams<MPoly> g = gauge_beta(b, al, ga);
  json j = {{"beta_in", beta_to_json(b)}, {"alpha", al.to_string()}, {"gamma", ga.to_string()},
            {"beta_out", beta_to_json(g)}, {"J_in", b.J().to_string()}, {"J_out", g.J().to_string()},
            {"constant_shift", gauge_constant_shift(b, al, ga).to_string()}};
  out.log("gauge: J " + b.J().to_string() + " -> " + g.J().to_string());
  return j;
}

// ---- integrate ----

struct IntegrateArgs {
  std::string equation = "hamilton";
  ParamInput params;
  std::string abcd;
  std::string t0 = "0.3", t1 = "0.7";
  std::string q0 = "0.4+0.2i", p0 = "0.3-0.1i", dq0, h0;
  int samples = 0;
  int rk4 = 0;
  std::string csv;
};

cd to_cd(const std::string& s) { return parse_bigcomplex(s).to_complex(); }

template <class T>
ThetaParams<cd> theta_cd(const ThetaParams<T>& t) {
  return {t.theta0.to_complex(), t.theta1.to_complex(), t.thetat.to_complex(), t.kappa1.to_complex(),
          t.kappa2.to_complex()};
}

json state_json(const State& y) {
  json a = json::array();
  for (const auto& v : y) a.push_back(scalar_to_json(v));
  return a;
}

json cmd_integrate(const Global& g, const IntegrateArgs& a, const Output& out) {
  ScopedPrecision prec(g.precision);
  IntegratorOptions opt;
  opt.tol = g.tol;
  if (a.samples < 0) throw InvalidInput("--samples must be non-negative");
  for (int i = 1; i <= a.samples; ++i) opt.output_tau.push_back(double(i) / a.samples);
  const cd t0 = to_cd(a.t0), t1 = to_cd(a.t1);
  const std::string theta_text = a.params.theta.empty() ? "0,0,0,0,0" : a.params.theta;

  Trajectory tr;
  Field field;
  State y0;
  json extra = json::object();
  if (a.equation == "p6" || a.equation == "hamilton") {
    if (!a.params.beta.empty()) throw InvalidInput(a.equation + " takes --theta (or --abcd for p6), not --beta");
    const ThetaParams<cd> th = theta_cd(theta_from<BigComplex>(theta_text));
    const cd q0 = to_cd(a.q0), p0 = to_cd(a.p0);
    if (a.equation == "hamilton") {
      tr = integrate_hamilton(th, t0, t1, q0, p0, opt);
      field = hamilton_field(th);
      y0 = {q0, p0};
      double worst = 0;
      for (const auto& s : tr.samples) worst = std::max(worst, s.residual);
      extra["max_sigma_form_residual"] = worst;
    } else {
      AbcdParams<cd> k;
      if (!a.abcd.empty()) {
        auto v = values<BigComplex>(a.abcd, 4, "--abcd");
        k = {v[0].to_complex(), v[1].to_complex(), v[2].to_complex(), v[3].to_complex()};
      } else {
        const AbcdParams<cd> kk = theta_to_abcd(th);
        k = kk;
      }
      // default q'(t0) is that of the Hamilton flow through (q0, p0)
      const cd dq0 = a.dq0.empty() ? hamilton_field(th)(t0, {q0, p0})[0] : to_cd(a.dq0);
      tr = integrate_p6(k, t0, t1, q0, dq0, opt);
      field = p6_field(k);
      y0 = {q0, dq0};
    }
  } else if (a.equation == "third-order") {
    const BetaParams<BigComplex> bb = a.params.resolve<BigComplex>("0,0,0,0,0");
    BetaParams<cd> b;
    for (int i = 1; i <= 6; ++i) b(i) = bb(i).to_complex();
    std::array<cd, 3> h0;
    if (!a.h0.empty()) {
      auto v = values<BigComplex>(a.h0, 3, "--h0");
      h0 = {v[0].to_complex(), v[1].to_complex(), v[2].to_complex()};
    } else {
      // h, h', h'' of the Hamilton flow through (q0, p0)
      if (!a.params.beta.empty()) throw InvalidInput("with --beta give the initial data with --h0");
      const auto j = hamilton_h_jet(theta_cd(theta_from<BigComplex>(theta_text)), t0, to_cd(a.q0), to_cd(a.p0));
      h0 = {j[0], j[1], j[2]};
    }
    tr = integrate_third_order(b, t0, t1, h0, opt);
    field = third_order_field(b);
    y0 = {h0[0], h0[1], h0[2]};
    if (std::abs(b.J()) < 1e-12) extra["conservation_drift"] = conservation_drift(b, tr);
  } else {
    throw InvalidInput("--equation must be p6, hamilton or third-order");
  }

  const bool done = tr.status == RunStatus::Completed;
  json j = {{"equation", tr.equation},
            {"components", tr.components},
            {"status", done ? "completed" : "movable_pole"},
            {"accepted_steps", tr.accepted_steps},
            {"rejected_steps", tr.rejected_steps},
            {"max_defect", tr.max_defect},
            {"samples", tr.samples.size()},
            {"end", {{"t", scalar_to_json(tr.samples.back().t)}, {"state", state_json(tr.samples.back().y)}}}};
  if (!done) j["message"] = tr.message;
  for (auto& [k, v] : extra.items()) j[k] = v;
  if (a.rk4 > 0 && done) {
    Trajectory r = integrate_rk4(field, t0, t1, y0, a.rk4);
    double diff = 0;
    for (std::size_t i = 0; i < y0.size(); ++i)
      diff = std::max(diff, std::abs(r.samples.back().y[i] - tr.samples.back().y[i]));
    j["rk4_endpoint_difference"] = diff;
  }
  if (!a.csv.empty()) {
    std::ofstream f(a.csv, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + a.csv);
    f << trajectory_csv(tr);
    out.log("wrote " + a.csv);
  }
  out.log("integrate " + tr.equation + ": " + (done ? "completed" : "stopped (" + tr.message + ")") + ", " +
          std::to_string(tr.accepted_steps) + " steps, defect " + fmt(tr.max_defect));
  return j;
}

// ---- crosscheck ----

struct CrosscheckArgs {
  ParamInput params;
  std::string sigma = "0.31+0.07i";
  std::string a00 = "1", a10 = "1", a01 = "1";
  double t_match = 0.05;
  double t_end = 0;  // 0: twice t_match
  int samples = 11;
};

json cmd_crosscheck(const Global& g, const CrosscheckArgs& a, const Output& out) {
  ScopedPrecision prec(g.precision);
  CrosscheckConfig cfg;
  cfg.sigma = parse_bigcomplex(a.sigma);
  cfg.beta = a.params.resolve<BigComplex>("0,0,0,0,0");
  cfg.a00 = parse_bigcomplex(a.a00);
  cfg.a10 = parse_bigcomplex(a.a10);
  cfg.a01 = parse_bigcomplex(a.a01);
  cfg.weight = g.weight;
  cfg.t_match = a.t_match;
  cfg.t_end = a.t_end > 0 ? a.t_end : 2 * a.t_match;
  cfg.tol = g.tol;
  cfg.samples = a.samples;
  const CrosscheckReport r = crosscheck_series_vs_ode(cfg);
  out.log("crosscheck: max deviation " + fmt(r.max_deviation) + " on [" + fmt(cfg.t_match) + ", " +
          fmt(cfg.t_end) + "], ode defect " + fmt(r.ode_defect) + ", " + fmt(r.runtime_seconds) + " s");
  json j = crosscheck_to_json(r);
  j["t_end"] = cfg.t_end;
  j["beta"] = beta_to_json(cfg.beta);
  return j;
}

// ---- selftest ----

json cmd_selftest(const Global& g, const Output& out) {
  std::mt19937_64 rng(g.seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  auto rq = [&] { return q_of(num(rng), den(rng)); };
  auto rbeta = [&] {
    BetaParams<Rational> b;
    for (int i = 1; i <= 6; ++i) b(i) = rq();
    return b;
  };
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    all = all && pass;
    out.log((pass ? "PASS " : "FAIL ") + name + ": " + detail);
  };

  {
    const Classification c = classify_three_point();
    record("classification", c.constraints.size() == 3 && c.free_unknowns.size() == 6,
           std::to_string(c.constraints.size()) + " constraints");
  }
  {
    bool ok = true;
    for (int i = 0; i < 5; ++i) {
      BetaParams<MPoly> b;
      const BetaParams<Rational> bq = rbeta();
      for (int k = 1; k <= 6; ++k) b(k) = MPoly(bq(k));
      const AllPointsReport r = verify_typeH_all_points(build_typeH_equation(b));
      ok = ok && r.all_typeH && r.at0.alpha && *r.at0.alpha == MPoly(-(bq(1) / 4));
    }
    record("type_h_random_beta", ok, "5 draws");
  }
  {
    const BetaParams<Rational> bq = rbeta();
    BetaParams<RatFunc> b;
    for (int k = 1; k <= 6; ++k) b(k) = RatFunc(bq(k));
    const auto f = solve_series(b, SeedData<RatFunc>{RatFunc::sigma(), 1, RatFunc(rq()), RatFunc(rq()), 4});
    record("exact_series_w4", apply_equation(build_typeH_equation(b), f).is_zero(), "residual in Q(sigma)");
  }
  {
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
      const BetaParams<Rational> b = rbeta();
      ok = ok && gauge_beta(b, rq(), rq()).J() == b.J();
    }
    record("gauge_invariant", ok, "20 draws");
  }
  {
    BetaParams<MPoly> b;
    for (int i = 1; i <= 6; ++i) b(i) = MPoly::var("b" + std::to_string(i));
    b(4) = -(b(5) * q_of(1, 2)) - b(6);
    const JetVars v = jet_vars();
    const MPoly d = total_derivative_t(second_order_expression(b, v.t, v.h[0], v.h[1], v.h[2])) -
                    v.h[2] * third_order_residual(b, v.t, v.h[0], v.h[1], v.h[2], v.h[3]) * Rational(2);
    record("reduction_identity", d.is_zero(), "symbolic");
  }
  {
    const ThetaParams<cd> th{0.0, 0.0, 0.0, 0.0, 0.0};
    IntegratorOptions opt;
    opt.tol = g.tol;
    const Trajectory tr = integrate_hamilton(th, 0.3, 0.7, {0.4, 0.2}, {0.3, -0.1}, opt);
    double worst = 0;
    for (const auto& s : tr.samples) worst = std::max(worst, s.residual);
    record("sigma_form_along_flow", tr.status == RunStatus::Completed && worst < 1e-8, "residual " + fmt(worst));
  }
  return {{"checks", checks}, {"all_pass", all}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tau functions of the sixth Painleve equation: series, operators, reductions and integration."};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file; command-line flags win");

  Global g;
  app.add_option("--precision", g.precision, "bits for multiprecision numerics");
  app.add_flag("--exact", g.exact, "exact arithmetic in Q(sigma)");
  app.add_option("--weight", g.weight, "series truncation weight")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", g.tol, "integrator tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "write the JSON report here instead of stdout");
  app.add_flag("--porcelain", g.porcelain, "no human-readable logs on stderr");
  app.add_option("--seed", g.seed, "seed for randomized checks");
  for (CLI::Option* o : app.get_options()) o->configurable();

  SeriesArgs series;
  CLI::App* c_series = app.add_subcommand("series", "solve for the tau series and report the residual");
  add_params(c_series, series.params);
  c_series->add_option("--sigma", series.sigma, "sigma (complex; 'sigma' or a rational in --exact mode)")->required();
  c_series->add_option("--a00", series.a00, "seed a00");
  c_series->add_option("--a10", series.a10, "seed a10");
  c_series->add_option("--a01", series.a01, "seed a01");

  ClassifyArgs classify;
  CLI::App* c_classify = app.add_subcommand("classify", "derive the three-point family and check type (H)");
  as_list(c_classify->add_option("--verify-beta", classify.verify_beta, "check the operator of these beta1..beta6"));
  c_classify->add_option("--at", classify.at, "report one point only: 0, 1 or inf");

  ConvertArgs convert;
  CLI::App* c_convert = app.add_subcommand("convert", "convert between parameter charts");
  c_convert->add_option("--from", convert.from, "theta or abcd");
  c_convert->add_option("--to", convert.to, "beta, normalized, abcd or theta");
  as_list(c_convert->add_option("--branch", convert.branch, "square-root signs s0,s1,st,sk for abcd -> theta"));
  as_list(c_convert->add_option("values", convert.values, "comma-separated parameter values"))->required();

  GaugeArgs gauge;
  CLI::App* c_gauge = app.add_subcommand("gauge", "apply f = t^(alpha/2) (t-1)^(gamma/2) g to the beta chart");
  add_params(c_gauge, gauge.params);
  c_gauge->add_option("--alpha", gauge.alpha, "exponent of t in f.f (symbols allowed)");
  c_gauge->add_option("--gamma", gauge.gamma, "exponent of t - 1 in f.f (symbols allowed)");
  c_gauge->add_flag("--normalize", gauge.normalize, "use the gauge that zeroes beta5 and beta6");

  IntegrateArgs integ;
  CLI::App* c_integ = app.add_subcommand("integrate", "integrate p6, the Hamilton system or the third-order equation");
  c_integ->add_option("--equation", integ.equation, "p6, hamilton or third-order")
      ->check(CLI::IsMember({"p6", "hamilton", "third-order"}));
  add_params(c_integ, integ.params);
  as_list(c_integ->add_option("--abcd", integ.abcd, "a,b,c,d for p6 (overrides --theta)"));
  c_integ->add_option("--t0", integ.t0, "start point");
  c_integ->add_option("--t1", integ.t1, "end point");
  c_integ->add_option("--q0", integ.q0, "initial q");
  c_integ->add_option("--p0", integ.p0, "initial p");
  c_integ->add_option("--dq0", integ.dq0, "initial q' for p6 (default: from the Hamilton flow)");
  as_list(c_integ->add_option("--h0", integ.h0, "h,h',h'' for third-order (default: from the Hamilton flow)"));
  c_integ->add_option("--samples", integ.samples, "equally spaced dense-output samples (0: step ends)");
  c_integ->add_option("--rk4", integ.rk4, "also run fixed-step RK4 with this many steps");
  c_integ->add_option("--csv", integ.csv, "write the trajectory as CSV");

  CrosscheckArgs cross;
  CLI::App* c_cross = app.add_subcommand("crosscheck", "continue the series by the third-order ODE and compare");
  add_params(c_cross, cross.params);
  c_cross->add_option("--sigma", cross.sigma, "sigma");
  c_cross->add_option("--a00", cross.a00, "seed a00");
  c_cross->add_option("--a10", cross.a10, "seed a10");
  c_cross->add_option("--a01", cross.a01, "seed a01");
  c_cross->add_option("--t-match", cross.t_match, "where the ODE takes over");
  c_cross->add_option("--t-end", cross.t_end, "end of the overlap (0: twice t-match)");
  c_cross->add_option("--samples", cross.samples, "comparison points");

  CLI::App* c_self = app.add_subcommand("selftest", "quick randomized checks of the whole chain");

  for (CLI::App* sub : app.get_subcommands({}))
    for (CLI::Option* o : sub->get_options()) o->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const Output out{g};
  try {
    set_bigcomplex_precision(g.precision);
    json j;
    if (sub == c_series) j = cmd_series(g, series, out);
    else if (sub == c_classify) j = cmd_classify(classify, out);
    else if (sub == c_convert) j = cmd_convert(g, convert, out);
    else if (sub == c_gauge) j = cmd_gauge(gauge, out);
    else if (sub == c_integ) j = cmd_integrate(g, integ, out);
    else if (sub == c_cross) j = cmd_crosscheck(g, cross, out);
    else j = cmd_selftest(g, out);
    j["command"] = sub->get_name();
    j["config"] = config_echo(app, sub);
    out.emit(j);
    if (sub == c_self && !j.at("all_pass").get<bool>()) return 4;
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
