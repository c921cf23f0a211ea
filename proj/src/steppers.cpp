#include "uadirac/steppers.hpp"
#include "uadirac/error.hpp"
#include "uadirac/log.hpp"
#include "uadirac/tau_ops.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace uadirac {

namespace {

void check_dims(const TwoScaleState& s, const SchemeMatrices& M, const DiracModel& m) {
  if (s.U.ntau() != M.D.rows() || s.U.nx() != m.grid.size() || M.main.mu.size() != m.grid.size())
    throw ConfigError("stepper: state, matrices and model disagree on the grid");
  if (M.eps != m.eps) throw ConfigError("stepper: matrices were built for a different epsilon");
}

TwoScaleField nonlinearity_hat(const DiracModel& m, const CVector& e2, double t, const TwoScaleField& u, Exec exec) {
  const auto pot = sample_potentials(m, t);
  TwoScaleField f;
  evaluate_nonlinearity(pot.ve, pot.vm, m.lambda, e2, u, f, exec);
  fft_x_forward(f);
  return f;
}

} // namespace

SchemeMatrices build_matrices(const DiracModel& m, double dt, const TauGrid& tg, Scheme scheme,
                              const StepperOptions& opts) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("stepper: dt must be positive");
  SchemeMatrices M;
  M.scheme = scheme;
  M.eps = m.eps;
  M.dt = dt;
  M.opts = opts;
  M.D = dtau_matrix(tg);
  const RVector& mu = m.grid.wavenumbers();
  if (scheme == Scheme::ua1) {
    M.main = build_mode_family(dt, 1.0, m.eps, M.D, tg.e2(), mu, opts.exec);
    return M;
  }
  const double h_pred = opts.prediction == PredictionVariant::half_step ? 0.5 * dt : 2.0 * dt;
  M.predict = build_mode_family(h_pred, 1.0, m.eps, M.D, tg.e2(), mu, opts.exec);
  const double h_corr = opts.correction == CorrectionVariant::fully_discrete ? dt : 2.0 * dt;
  M.main = build_mode_family(h_corr, 0.5, m.eps, M.D, tg.e2(), mu, opts.exec);
  M.Pminus = CMatrix::Identity(tg.size(), tg.size()) / h_corr - (0.5 / (m.eps * m.eps)) * M.D;
  return M;
}

void check_finite(const TwoScaleState& s) {
  if (!s.U.all_finite()) throw DivergenceError(s.n, "non-finite values in the two-scale field");
}

TwoScaleState ua1_step(const TwoScaleState& s, const SchemeMatrices& M, const DiracModel& m) {
  check_dims(s, M, m);
  const Exec exec = M.opts.exec;
  const TwoScaleField f_hat = nonlinearity_hat(m, M.main.e2, s.t, s.U, exec);
  TwoScaleField u_hat = s.U;
  fft_x_forward(u_hat);
  TwoScaleState next;
  solve_euler_modes(M.main, u_hat, f_hat, next.U, exec);
  fft_x_backward(next.U);
  next.n = s.n + 1;
  next.t = static_cast<double>(next.n) * M.dt;
  next.scheme = Scheme::ua1;
  check_finite(next);
  return next;
}

TwoScaleState ua2_step(const TwoScaleState& s, const SchemeMatrices& M, const DiracModel& m) {
  check_dims(s, M, m);
  if (M.scheme != Scheme::ua2) throw ConfigError("stepper: UA2 step needs UA2 matrices");
  const Exec exec = M.opts.exec;
  const CVector& e2 = M.main.e2;
  TwoScaleField u_hat = s.U;
  fft_x_forward(u_hat);

  const TwoScaleField f_hat = nonlinearity_hat(m, e2, s.t, s.U, exec);
  TwoScaleField half;
  solve_euler_modes(M.predict, u_hat, f_hat, half, exec);
  fft_x_backward(half);
  if (!half.all_finite()) throw DivergenceError(s.n + 1, "non-finite values in the prediction");

  const TwoScaleField f_half = nonlinearity_hat(m, e2, s.t + 0.5 * M.dt, half, exec);
  TwoScaleState next;
  solve_cn_modes(M.main, M.Pminus, u_hat, f_half, next.U, exec);
  fft_x_backward(next.U);
  next.n = s.n + 1;
  next.t = static_cast<double>(next.n) * M.dt;
  next.scheme = Scheme::ua2;
  check_finite(next);
  return next;
}

TwoScaleState step(const TwoScaleState& s, const SchemeMatrices& M, const DiracModel& m) {
  return M.scheme == Scheme::ua1 ? ua1_step(s, M, m) : ua2_step(s, M, m);
}

TwoScaleState advance(TwoScaleState s, long steps, const SchemeMatrices& M, const DiracModel& m,
                      const PropagateOptions& opts) {
  const long every = std::max(1L, opts.hook_every);
  for (long k = 0; k < steps; ++k) {
    s = step(s, M, m);
    if (opts.hook && (s.n % every == 0 || k + 1 == steps)) opts.hook(s);
  }
  return s;
}

TwoScaleState propagate(const DiracModel& m, const SpinorField& phi0, const TauGrid& tg, int order, Scheme scheme,
                        double dt, double T, const PropagateOptions& opts) {
  if (!(dt > 0.0)) throw ConfigError("propagate: dt must be positive");
  if (!(T >= 0.0)) throw ConfigError("propagate: T must be nonnegative");
  const long steps = std::lround(T / dt);
  if (std::abs(static_cast<double>(steps) * dt - T) > 1e-9 * std::max(1.0, T)) {
    std::ostringstream os;
    os << "T=" << T << " is not a multiple of dt=" << dt << "; running to " << static_cast<double>(steps) * dt;
    log_warning(os.str());
  }
  TwoScaleState s;
  s.scheme = scheme;
  s.U = prepare_initial_data(phi0, m, tg, order, opts.g1).field;
  check_finite(s);
  if (opts.hook) opts.hook(s);
  if (steps == 0) return s;
  const SchemeMatrices M = build_matrices(m, dt, tg, scheme, opts.stepper);
  return advance(std::move(s), steps, M, m, opts);
}

SpinorField reconstruct_phi(const TwoScaleState& s, double eps) {
  const SpinorField u = trig_interp_tau(s.U, s.t / (eps * eps));
  return filter(u, s.t, eps, FilterDirection::inverse);
}

TwoScaleField two_scale_rhs(const DiracModel& m, const CMatrix& D, double t, const TwoScaleField& U) {
  const TauGrid tg(static_cast<int>(U.ntau()));
  const CVector& e2 = tg.e2();
  const TwoScaleField du = spectral_dx(U, m.grid, 1);
  TwoScaleField r = nonlinearity_F(t, U, m);
  const double inv_eps = 1.0 / m.eps;
  r.c[0] -= (inv_eps * inv_eps) * (D * U.c[0]);
  r.c[1] -= (inv_eps * inv_eps) * (D * U.c[1]);
  r.c[0] -= inv_eps * (e2.asDiagonal() * du.c[1]);
  r.c[1] -= inv_eps * (e2.conjugate().asDiagonal() * du.c[0]);
  return r;
}

double q_nonexpansive_check(double eps, double dt, double mu, int ntau, int trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("q check: need at least one trial");
  const TauGrid tg(ntau);
  const CMatrix D = dtau_matrix(tg);
  const CVector& e2 = tg.e2();
  const Index n = ntau;
  CMatrix Q = CMatrix::Identity(2 * n, 2 * n);
  Q.topLeftCorner(n, n) += (dt / (eps * eps)) * D;
  Q.bottomRightCorner(n, n) += (dt / (eps * eps)) * D;
  const cplx g = kI * mu * dt / eps;
  for (Index j = 0; j < n; ++j) {
    Q(j, n + j) += g * e2[j];
    Q(n + j, j) += g * std::conj(e2[j]);
  }
  const Eigen::PartialPivLU<CMatrix> lu(Q);
  if (!(lu.rcond() > 1e-14)) throw NumericalError("q check: singular Q");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int kmax = std::max(1, ntau / 8);
  auto sup_norm = [n](const CVector& v) {
    double worst = 0.0;
    for (Index j = 0; j < n; ++j) worst = std::max(worst, std::sqrt(std::norm(v[j]) + std::norm(v[n + j])));
    return worst;
  };
  double ratio = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    CVector W = CVector::Zero(2 * n);
    for (int c = 0; c < 2; ++c)
      for (int k = -kmax; k <= kmax; ++k) {
        const cplx coef(normal(rng), normal(rng));
        for (Index j = 0; j < n; ++j) W[c * n + j] += coef * std::exp(kI * (k * tg.point(static_cast<int>(j))));
      }
    const CVector V = lu.solve(W);
    ratio = std::max(ratio, sup_norm(V) / sup_norm(W));
  }
  return ratio;
}

} // namespace uadirac
