#pragma once

// The Dirac problem definition: Pauli matrices, potentials, the nonlinearity
// F and its derivatives, the filtering map and the conserved functionals.
//
// Inner product convention: (a, b) = a_1 conj(b_1) + a_2 conj(b_2), so that
// (beta U, U) = |u_1|^2 - |u_2|^2 is real.

#include "uadirac/fields.hpp"
#include "uadirac/spectral.hpp"

#include <array>
#include <functional>
#include <string>

namespace uadirac {

/// A real scalar potential V(t, x) together with its time derivative.
struct Potential {
  std::string name;
  std::function<double(double t, double x)> value;
  std::function<double(double t, double x)> dt;
  bool is_static = true;
};

namespace potentials {
Potential zero();
Potential constant(double v);
/// (1 - x) / (2 + 2 x^2), the electric potential of all three presets.
Potential preset_electric();
/// (x + 1)^2 / (1 + x^2), the magnetic potential of presets II and III.
Potential preset_magnetic();
/// V(t, x) = t.
Potential linear_in_time();
/// V(t, x) = sin t.
Potential sine_in_time();
/// Registry lookup: "zero", "preset-electric", "preset-magnetic",
/// "linear-t", "sin-t", or "const:<value>".
Potential by_name(const std::string& name);
} // namespace potentials

struct DiracModel {
  double eps;
  double lambda;
  Potential ve;
  Potential vm;
  SpaceGrid grid;

  DiracModel(double eps, double lambda, Potential ve, Potential vm, SpaceGrid grid);
  bool static_potentials() const { return ve.is_static && vm.is_static; }
};

/// Initial profile Phi_0(x) as a function, so it can be sampled on any grid.
using SpinorProfile = std::function<std::array<cplx, 2>(double x)>;
SpinorField sample_profile(const SpinorProfile& phi0, const SpaceGrid& grid);

/// Potentials and their time derivatives sampled on the grid at one time.
struct PotentialSamples {
  RVector ve, vm, dve, dvm;
};
PotentialSamples sample_potentials(const DiracModel& m, double t);

namespace pauli {
Mat2 alpha();
Mat2 beta();
/// A(tau) = [[0, e^{2 i tau}], [e^{-2 i tau}, 0]].
Mat2 A(double tau);
} // namespace pauli

// --- nonlinearity ------------------------------------------------------------

/// F(t, tau, U) = -i [V_e + V_m A(tau)] U - i lambda (beta U, U) beta U.
SpinorField nonlinearity_F(double t, double tau, const SpinorField& u, const DiracModel& m);
/// F evaluated at every tau-node of the field's grid.
TwoScaleField nonlinearity_F(double t, const TwoScaleField& u, const DiracModel& m);

/// F_e(t, U) = -i [V_e U + lambda (beta U, U) beta U], the tau-average of F.
SpinorField F_e(double t, const SpinorField& u, const DiracModel& m);

/// Real-linear directional derivative of F in U along W.
SpinorField dF_du(double t, double tau, const SpinorField& u, const SpinorField& w, const DiracModel& m);
TwoScaleField dF_du(double t, const TwoScaleField& u, const TwoScaleField& w, const DiracModel& m);
/// Directional derivative of F_e.
SpinorField dFe_du(double t, const SpinorField& u, const SpinorField& w, const DiracModel& m);

/// -i [dV_e/dt + dV_m/dt A(tau)] U
SpinorField dF_dt(double t, double tau, const SpinorField& u, const DiracModel& m);
TwoScaleField dF_dt(double t, const TwoScaleField& u, const DiracModel& m);
SpinorField dFe_dt(double t, const SpinorField& u, const DiracModel& m);

// --- functionals ---------------------------------------------------------------

/// Periodic quadrature of |phi_1|^2 + |phi_2|^2.
double mass(const SpinorField& phi, const SpaceGrid& grid);

/// Energy for static potentials (evaluated at t = 0):
///   int eps^{-2} rho - (i/eps) conj(Phi) alpha dx Phi + V_e |Phi|^2
///       + V_m 2 Re(conj(phi_1) phi_2) + (lambda/2) rho^2,   rho = |phi_1|^2 - |phi_2|^2,
/// the Hamiltonian of the cubic Dirac equation. Throws
/// NumericalError when the quadrature has an imaginary part above 1e-10
/// relative to its magnitude.
double energy(const SpinorField& phi, const DiracModel& m);

// --- filtering ---------------------------------------------------------------

enum class FilterDirection { forward, inverse };

/// forward: diag(e^{it/eps^2}, e^{-it/eps^2}) Phi; inverse: the conjugate.
SpinorField filter(const SpinorField& phi, double t, double eps, FilterDirection dir);

} // namespace uadirac
