#include "p6tau/reduction.hpp"

namespace p6tau {

JetVars jet_vars() {
  JetVars v;
  v.t = MPoly::var("t");
  for (int i = 0; i < 5; ++i) v.h[static_cast<std::size_t>(i)] = MPoly::var("h" + std::to_string(i));
  return v;
}

MPoly total_derivative_t(const MPoly& p) {
  const int t = intern_variable("t");
  MPoly r = p.derivative(t);
  for (int i = 0; i < 4; ++i) {
    const int hi = intern_variable("h" + std::to_string(i));
    MPoly d = p.derivative(hi);
    if (!d.is_zero()) r += d * MPoly::var("h" + std::to_string(i + 1));
  }
  if (!p.derivative(intern_variable("h4")).is_zero())
    throw InvalidInput("total derivative needs h5");
  return r;
}

}  // namespace p6tau
