#pragma once

// The eps -> 0 limit model, a pair of coupled nonlinear Schroedinger equations
//
//   d_t U = C d_x^2 U + F_e(t, U),   C = (i/2) diag(1, -1),
//
// integrated by Strang splitting with both sub-flows exact.

#include "uadirac/fields.hpp"
#include "uadirac/model.hpp"

#include <functional>
#include <vector>

namespace uadirac {

struct LimitState {
  double t = 0.0;
  SpinorField U;
};

/// Half nonlinear step, exact linear step, half nonlinear step. Only V_e,
/// lambda and the grid of `m` are used.
LimitState limit_step(const LimitState& s, double dt, const DiracModel& m);

/// U(0) = Phi_0, advanced to T (rounded to whole steps).
LimitState limit_propagate(const DiracModel& m, const SpinorField& phi0, double dt, double T);

/// Phi = diag(e^{-it/eps^2}, e^{it/eps^2}) U.
SpinorField limit_reconstruct(const LimitState& s, double eps);

struct LimitCompareRow {
  double eps;
  double err_linf;
};

struct LimitCompareResult {
  std::vector<LimitCompareRow> rows;
  double slope = 0.0; // least-squares slope of log err vs log eps
};

/// Error between the Dirac solution and the reconstructed limit solution at
/// T for every eps. `reference(eps)` supplies Phi^eps(T) on the grid of `m`.
LimitCompareResult limit_compare(const DiracModel& m, const SpinorField& phi0, const std::vector<double>& eps_values,
                                 double T, double dt, const std::function<SpinorField(double)>& reference);

} // namespace uadirac
