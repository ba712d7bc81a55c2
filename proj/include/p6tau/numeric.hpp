#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "p6tau/reduction.hpp"
#include "p6tau/tau_solver.hpp"

namespace p6tau {

using cd = std::complex<double>;
using State = std::vector<cd>;
// dy/dt at (t, y)
using Field = std::function<State(cd t, const State& y)>;
// Returns a reason when the state is too close to a movable pole.
using PoleGuard = std::function<std::optional<std::string>(cd t, const State& y)>;

enum class RunStatus { Completed, MovablePole };

struct Sample {
  double tau;  // path parameter in [0, 1]
  cd t;
  State y;
  double residual = 0.0;  // equation-specific check value, see Trajectory::residual_name
};

struct Trajectory {
  std::string equation;
  std::vector<std::string> components;
  std::string residual_name;  // empty: no residual column
  std::vector<Sample> samples;
  RunStatus status = RunStatus::Completed;
  std::string message;
  int accepted_steps = 0;
  int rejected_steps = 0;
  double max_defect = 0.0;  // largest scaled midpoint defect of the dense output
  // Throws MovablePole when the run was cut short.
  void require_completed() const;
};

struct IntegratorOptions {
  double tol = 1e-10;
  double initial_step = 1e-3;  // in the path parameter
  double min_step = 1e-14;
  int max_steps = 200000;
  double pole_guard = 1e-6;
  // When set, samples are emitted at these path parameters (increasing, in
  // (0, 1]) from the dense output instead of at the step ends.
  std::vector<double> output_tau;
};

// Adaptive Dormand-Prince 5(4) along the straight path t0 -> t1, with
// dense-output defect monitoring.
Trajectory integrate_dopri(const Field& f, cd t0, cd t1, State y0, const IntegratorOptions& opt,
                           const PoleGuard& guard = {});

// Classical fixed-step RK4 on the same path (cross-check integrator).
Trajectory integrate_rk4(const Field& f, cd t0, cd t1, State y0, int steps, const PoleGuard& guard = {});

// State (q, q') of the sixth Painleve equation with constants (a, b, c, d).
Field p6_field(const AbcdParams<cd>& k);
Trajectory integrate_p6(const AbcdParams<cd>& k, cd t0, cd t1, cd q0, cd dq0, const IntegratorOptions& opt);

// Hamiltonian system for (q, p); samples are extended with h, h', h'' from jets.
Field hamilton_field(const ThetaParams<cd>& th);
Trajectory integrate_hamilton(const ThetaParams<cd>& th, cd t0, cd t1, cd q0, cd p0, const IntegratorOptions& opt);

// (h, h', h'', h''') along the Hamiltonian flow at one point.
std::array<cd, 4> hamilton_h_jet(const ThetaParams<cd>& th, cd t, cd q, cd p);

// State (h, h', h'') of the third-order equation.
Field third_order_field(const BetaParams<cd>& b);
Trajectory integrate_third_order(const BetaParams<cd>& b, cd t0, cd t1, const std::array<cd, 3>& h0,
                                 const IntegratorOptions& opt);

// Largest drift of the second-order first integral along a third-order run,
// relative to the largest of its terms along the run.
double conservation_drift(const BetaParams<cd>& b, const Trajectory& tr);

// h, h', h'' from a tau series at a real or complex point.
std::array<cd, 3> h_from_series(const SigmaSeries<BigComplex>& f, const BigComplex& t);

struct CrosscheckConfig {
  BigComplex sigma;
  BetaParams<BigComplex> beta;
  BigComplex a00{1}, a10{1}, a01{1};
  int weight = 8;
  double t_match = 0.05;
  double t_end = 0.1;
  double tol = 1e-12;
  int samples = 11;  // comparison points on [t_match, t_end]
};

struct CrosscheckReport {
  double max_deviation = 0.0;    // |h_ode - h_series| on the overlap
  double max_deviation_dh = 0.0;
  double max_deviation_d2h = 0.0;
  double t_match = 0.0;
  double series_tail_estimate = 0.0;  // top stratum of f at t_end, relative to f
  double ode_defect = 0.0;
  std::vector<double> top_strata;      // |stratum w| / |f| at t = 0.01 for w = 0..W
  bool strata_decay = false;
  std::optional<double> conservation_drift;  // set when 2 beta4 + beta5 + 2 beta6 = 0
  double runtime_seconds = 0.0;
  std::vector<std::array<double, 4>> table;  // t, |dev h|, |dev h'|, |dev h''|
};

CrosscheckReport crosscheck_series_vs_ode(const CrosscheckConfig& cfg);

// One CSV line per sample: t_re, t_im, re/im of each component, then the
// residual column if the trajectory has one.
std::string trajectory_csv(const Trajectory& tr);

}  // namespace p6tau
