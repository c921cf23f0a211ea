#pragma once

// Data-parallel inner loops of the solver. Every kernel exists as one body
// with two drivers: a plain serial loop (the reference, kept for testing and
// benchmarking) and an OpenMP `parallel for` over the same index range. The
// iterations are independent, so both drivers give bitwise identical output.

#include "uadirac/fields.hpp"

#include <Eigen/LU>

#include <vector>

namespace uadirac {

enum class Exec { serial, parallel };

/// Pointwise nonlinearity at one tau-node:
/// f = -i [ve + vm A(tau)] u - i lambda (|u1|^2 - |u2|^2) beta u, e2 = e^{2 i tau}.
inline void nonlinearity_point(double ve, double vm, double lambda, cplx e2, cplx u1, cplx u2, cplx& f1,
                               cplx& f2) {
  const double rho = std::norm(u1) - std::norm(u2);
  f1 = -kI * (ve * u1 + vm * e2 * u2) - kI * (lambda * rho) * u1;
  f2 = -kI * (ve * u2 + vm * std::conj(e2) * u1) + kI * (lambda * rho) * u2;
}

/// Evaluate F over the whole (tau, x) grid into `out`.
void evaluate_nonlinearity(const RVector& ve, const RVector& vm, double lambda, const CVector& e2,
                           const TwoScaleField& u, TwoScaleField& out, Exec exec);

/// Dense factorizations of one implicit mode family, for a step of size h:
///
///   P = Id/h + kappa D_tau/eps^2,      gamma_l = i mu_l kappa / eps,
///   B_l = gamma_l^{-1} P e^{-2 i tau} P - gamma_l e^{-2 i tau}.
///
/// kappa = 1 gives the UA1 matrices (A_tau, A_tau^l, B_tau^l) and the UA2
/// prediction matrices; kappa = 1/2 gives the Crank-Nicolson family
/// (A_tau^+, A_tau^{+,l}, B_tau^{+,l}). Only l = -N/2 ... -1 are factorized,
/// l > 0 reuse B_l = -B_{-l}.
struct ModeFactorizations {
  double h = 0.0;
  double kappa = 1.0;
  double eps = 1.0;
  CMatrix P;
  Eigen::PartialPivLU<CMatrix> P_lu;
  std::vector<Eigen::PartialPivLU<CMatrix>> B_lu; // index m <-> l = -(m + 1)
  RVector mu;                                      // FFT order
  CVector e2;                                      // e^{2 i tau_j}

  /// LU of B_l for l < 0.
  const Eigen::PartialPivLU<CMatrix>& B_negative(int l) const { return B_lu[static_cast<std::size_t>(-l - 1)]; }
};

/// Dense B_l assembled from the formula (used at build time and in tests).
CMatrix assemble_B(const CMatrix& P, const CVector& e2, cplx gamma);

/// Build and factorize a mode family. `D` is the tau pseudo-differential
/// matrix, `mu` the x-wavenumbers in FFT order. Checks B_l = -B_{-l} to 1e-12
/// and throws ConfigError (naming eps, h and l) on a singular factorization.
ModeFactorizations build_mode_family(double h, double kappa, double eps, const CMatrix& D, const CVector& e2,
                                     const RVector& mu, Exec exec);

/// One first-order (semi-implicit Euler) solve per x-mode:
///   (u' - u)/h + D u'/eps^2 = -(1/eps) A(tau) i mu u' + f
/// on Fourier-x coefficients u_hat, f_hat (N_tau x N, FFT order).
void solve_euler_modes(const ModeFactorizations& fam, const TwoScaleField& u_hat, const TwoScaleField& f_hat,
                       TwoScaleField& out, Exec exec);

/// One Crank-Nicolson correction solve per x-mode, using the block
/// elimination of the fully discrete second-order scheme. `Pminus` is
/// A_tau^- = Id/dt - D_tau/(2 eps^2).
void solve_cn_modes(const ModeFactorizations& fam, const CMatrix& Pminus, const TwoScaleField& u_hat,
                    const TwoScaleField& f_hat, TwoScaleField& out, Exec exec);

} // namespace uadirac
