#include "uadirac/limit.hpp"
#include "uadirac/diagnostics.hpp"
#include "uadirac/error.hpp"
#include "uadirac/log.hpp"

#include <cmath>

namespace uadirac {

namespace {

// Exact flow of d_t u1 = -i[V_e + lambda rho] u1, d_t u2 = -i[V_e - lambda rho] u2
// over time h; rho = |u1|^2 - |u2|^2 is invariant.
void nonlinear_flow(SpinorField& u, double h, double t_mid, const DiracModel& m) {
  const auto pot = sample_potentials(m, t_mid);
  for (Index j = 0; j < u.size(); ++j) {
    const double rho = std::norm(u.c[0][j]) - std::norm(u.c[1][j]);
    u.c[0][j] *= std::exp(-kI * ((pot.ve[j] + m.lambda * rho) * h));
    u.c[1][j] *= std::exp(-kI * ((pot.ve[j] - m.lambda * rho) * h));
  }
}

void linear_flow(SpinorField& u, double h, const SpaceGrid& grid) {
  const RVector& mu = grid.wavenumbers();
  for (int c = 0; c < 2; ++c) {
    const double sign = c == 0 ? -1.0 : 1.0;
    fft_forward(u.c[c]);
    for (Index k = 0; k < u.size(); ++k) u.c[c][k] *= std::exp(kI * (sign * 0.5 * mu[k] * mu[k] * h));
    fft_backward(u.c[c]);
  }
}

} // namespace

LimitState limit_step(const LimitState& s, double dt, const DiracModel& m) {
  if (!(dt > 0.0)) throw ConfigError("limit: dt must be positive");
  LimitState next{s.t + dt, s.U};
  nonlinear_flow(next.U, 0.5 * dt, s.t + 0.25 * dt, m);
  linear_flow(next.U, dt, m.grid);
  nonlinear_flow(next.U, 0.5 * dt, s.t + 0.75 * dt, m);
  return next;
}

LimitState limit_propagate(const DiracModel& m, const SpinorField& phi0, double dt, double T) {
  if (!(dt > 0.0)) throw ConfigError("limit: dt must be positive");
  const long steps = std::lround(T / dt);
  if (std::abs(static_cast<double>(steps) * dt - T) > 1e-9 * std::max(1.0, T))
    log_warning("limit: T is not a multiple of dt, rounding to whole steps");
  LimitState s{0.0, phi0};
  for (long k = 0; k < steps; ++k) {
    s = limit_step(s, dt, m);
    s.t = static_cast<double>(k + 1) * dt;
  }
  return s;
}

SpinorField limit_reconstruct(const LimitState& s, double eps) {
  return filter(s.U, s.t, eps, FilterDirection::inverse);
}

LimitCompareResult limit_compare(const DiracModel& m, const SpinorField& phi0, const std::vector<double>& eps_values,
                                 double T, double dt, const std::function<SpinorField(double)>& reference) {
  if (eps_values.empty()) throw ConfigError("limit: empty epsilon list");
  const LimitState lim = limit_propagate(m, phi0, dt, T);
  LimitCompareResult out;
  std::vector<double> errs, epss;
  for (double eps : eps_values) {
    const SpinorField phi = limit_reconstruct(lim, eps);
    const double err = linf_error(reference(eps), phi);
    out.rows.push_back({eps, err});
    errs.push_back(err);
    epss.push_back(eps);
  }
  if (errs.size() >= 2) out.slope = loglog_slope(errs, epss);
  return out;
}

} // namespace uadirac
