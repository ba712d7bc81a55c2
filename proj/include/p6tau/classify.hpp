#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p6tau/hirota.hpp"

namespace p6tau {

// The general three-point ansatz with formal unknowns a1..a9:
//   (t-1)^4 D^4 + 2(t-1)^3(t+1) delta D^2
//   + (t-1)^2 [(1 + a1 + (1 + a2) t^2) D^2 + a3 t f delta^2 f + a4 t (delta f)^2]
//   + t(t-1)(a5 t + a6) f delta f + t(a7 t^2 + a8 t + a9) f^2
DiffPoly classification_ansatz();

struct LinearRelation {
  std::string pivot;   // unknown solved for
  MPoly solved;        // pivot = solved
  MPoly relation;      // relation = 0 (integer coefficients, as read off)
};

struct Classification {
  std::vector<LinearRelation> constraints;
  std::vector<std::string> free_unknowns;
  DiffPoly family;              // ansatz with the constraints substituted
  BetaParams<MPoly> beta;       // beta_i as affine functions of the free unknowns
  HirotaForm<MPoly> family_words;
  MPoly alpha_at_one;           // type-(H) exponent of the family at t = 1
  std::vector<std::string> log;
};

// Rebase at t = 1, impose type (H) on the lowest stratum, eliminate.
Classification classify_three_point();

struct PointReport {
  std::string point;
  bool typeH = false;
  std::optional<MPoly> alpha;
  std::optional<MPoly> multiple;
  int degree = 0;  // of the lowest stratum; an overall power of the local variable is immaterial
  std::string reason;
};

struct AllPointsReport {
  PointReport at0, at1, atinf;
  std::vector<PointReport> extras;  // rational zeros of the top coefficient other than 0, 1
  int unresolved_degree = 0;        // degree of the irrational part of the top coefficient
  bool all_typeH = false;
};

AllPointsReport verify_typeH_all_points(const DiffPoly& p);
AllPointsReport verify_typeH_all_points(const HirotaForm<MPoly>& L);

// Type-(H) check of the lowest stratum of p in its own local variable.
PointReport check_point(const DiffPoly& local, const std::string& name);

// When the top coefficient vanishes to order n > 4 at t = 1, the rebased
// equation is divisible by u^{n-4}; returns the quotient and the power removed.
std::pair<DiffPoly, int> reduce_order_at_one(const DiffPoly& p);

}  // namespace p6tau
