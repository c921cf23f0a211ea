#pragma once

// Scalar toy model of the two-scale problem,
//
//   d_t u + eps^{-2} d_tau u = -i eps^{-1} a(tau) u,   u(0, tau) = u_in(tau),
//
// with a zero-mean 2 pi-periodic coefficient a and b(tau) = int_0^tau a.
// Exact solution: u(t, tau) = e^{-i eps b(tau)} e^{i eps b(tau - t/eps^2)} u_in(tau - t/eps^2).

#include "uadirac/fields.hpp"

#include <functional>
#include <string>
#include <vector>

namespace uadirac {

using TauFunction = std::function<cplx(double)>;

struct ToyProblem {
  std::string name;
  std::function<double(double)> a;
  std::function<double(double)> b;
  cplx u0{1.0, 0.0};
  double eps = 1.0;
  int p = 1;
};

/// Built-in coefficients with exact antiderivatives: "cos", "sin", "cos2", "zero".
ToyProblem make_toy_problem(const std::string& a_name, cplx u0, double eps, int p = 1);

/// Arbitrary coefficient; b is obtained by spectral integration of the
/// `nquad`-point interpolant. Throws ConfigError if a has nonzero mean.
ToyProblem make_toy_problem(std::function<double(double)> a, cplx u0, double eps, int p = 1, int nquad = 64);

cplx toy_exact(const ToyProblem& prob, const TauFunction& u_in, double t, double tau);

/// u_in(tau) = u0 sum_{k=0}^{2p-1} (-i eps b(tau))^k / k!.
TauFunction toy_prepared_initial(const ToyProblem& prob);

/// u_in(tau) = u0.
TauFunction toy_unprepared_initial(const ToyProblem& prob);

struct ToyDerivativeRow {
  double eps;
  double estimate; // max over the tau-grid of |d_t^p u(0, tau)|
};

/// Central-difference estimates (step eps^2/100) of max_tau |d_t^p u(0, tau)|
/// over `eps_values`, p = prob.p in 1..3, data prepared with the same p.
std::vector<ToyDerivativeRow> toy_derivative_bound(const ToyProblem& prob, bool prepared,
                                                   const std::vector<double>& eps_values = {0.5, 0.25, 0.125,
                                                                                           0.0625, 0.03125,
                                                                                           0.015625},
                                                   int ntau = 64);

} // namespace uadirac
