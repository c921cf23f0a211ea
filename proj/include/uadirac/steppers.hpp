#pragma once

// Fully discrete uniformly accurate schemes for the two-scale problem
//
//   d_t U + eps^{-2} d_tau U = -eps^{-1} A(tau) d_x U + F(t, tau, U),
//
// Fourier-spectral in x and tau. UA1 is a semi-implicit Euler step, UA2 a
// first-order prediction to t_{n+1/2} followed by a Crank-Nicolson step with
// midpoint nonlinearity. Per x-mode the implicit tau-systems are solved by a
// 2x2 block elimination against cached dense factorizations.

#include "uadirac/fields.hpp"
#include "uadirac/initdata.hpp"
#include "uadirac/kernels.hpp"
#include "uadirac/model.hpp"
#include "uadirac/spectral.hpp"

#include <cstdint>
#include <functional>

namespace uadirac {

enum class Scheme { ua1, ua2 };

/// half_step: prediction is a first-order step of size dt/2 (Id coefficient
/// 2/dt). printed: the printed Id/(2 dt) + D_tau/eps^2 matrix.
enum class PredictionVariant { half_step, printed };

/// fully_discrete: Crank-Nicolson with (U^{n+1} - U^n)/dt.
/// semi_discrete_printed: the same with (U^{n+1} - U^n)/(2 dt).
enum class CorrectionVariant { fully_discrete, semi_discrete_printed };

struct StepperOptions {
  PredictionVariant prediction = PredictionVariant::half_step;
  CorrectionVariant correction = CorrectionVariant::fully_discrete;
  Exec exec = Exec::parallel;
};

struct SchemeMatrices {
  Scheme scheme = Scheme::ua1;
  double eps = 1.0;
  double dt = 0.0;
  StepperOptions opts;
  CMatrix D;                  // D_tau
  ModeFactorizations main;    // UA1: A_tau family; UA2: A_tau^+ family
  ModeFactorizations predict; // UA2 prediction family
  CMatrix Pminus;             // UA2: A_tau^-
};

SchemeMatrices build_matrices(const DiracModel& m, double dt, const TauGrid& tg, Scheme scheme,
                              const StepperOptions& opts = {});

struct TwoScaleState {
  long n = 0;
  double t = 0.0;
  TwoScaleField U;
  Scheme scheme = Scheme::ua1;
};

/// Throw DivergenceError(step) if the state holds NaN/Inf.
void check_finite(const TwoScaleState& s);

TwoScaleState ua1_step(const TwoScaleState& s, const SchemeMatrices& M, const DiracModel& m);
TwoScaleState ua2_step(const TwoScaleState& s, const SchemeMatrices& M, const DiracModel& m);
TwoScaleState step(const TwoScaleState& s, const SchemeMatrices& M, const DiracModel& m);

struct PropagateOptions {
  G1Variant g1 = G1Variant::printed;
  StepperOptions stepper;
  /// Called on the initial state, after every `hook_every` steps and on the
  /// final state.
  std::function<void(const TwoScaleState&)> hook;
  long hook_every = 1;
};

/// Prepare order-`order` data and advance to T = n dt (T is rounded to a
/// whole number of steps, with a warning if it was not one).
TwoScaleState propagate(const DiracModel& m, const SpinorField& phi0, const TauGrid& tg, int order, Scheme scheme,
                        double dt, double T, const PropagateOptions& opts = {});

/// Advance an existing state by `steps` steps.
TwoScaleState advance(TwoScaleState s, long steps, const SchemeMatrices& M, const DiracModel& m,
                      const PropagateOptions& opts = {});

/// Phi(t_n, x) = diag(e^{-i t_n/eps^2}, e^{i t_n/eps^2}) U^n(t_n/eps^2, x),
/// tau-interpolated spectrally.
SpinorField reconstruct_phi(const TwoScaleState& s, double eps);

/// Right-hand side of the two-scale equation:
/// -eps^{-2} D_tau U - eps^{-1} A(tau) d_x U + F(t, tau, U).
TwoScaleField two_scale_rhs(const DiracModel& m, const CMatrix& D, double t, const TwoScaleField& U);

/// Randomized probe of max_tau |Q_l^{-1} W| / max_tau |W| for the per-mode
/// operator Q_l = Id + (dt/eps) i mu A(tau) + (dt/eps^2) D_tau on C^2-valued
/// tau-vectors. The right-hand sides are random trigonometric polynomials
/// with |k| <= N_tau/8.
double q_nonexpansive_check(double eps, double dt, double mu, int ntau, int trials, std::uint64_t seed = 1);

} // namespace uadirac
