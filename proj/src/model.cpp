#include "uadirac/model.hpp"
#include "uadirac/error.hpp"
#include "uadirac/kernels.hpp"

#include <cmath>

namespace uadirac {

namespace potentials {

Potential zero() {
  return {"zero", [](double, double) { return 0.0; }, [](double, double) { return 0.0; }, true};
}

Potential constant(double v) {
  return {"const:" + std::to_string(v), [v](double, double) { return v; }, [](double, double) { return 0.0; },
          true};
}

Potential preset_electric() {
  return {"preset-electric", [](double, double x) { return (1.0 - x) / (2.0 + 2.0 * x * x); },
          [](double, double) { return 0.0; }, true};
}

Potential preset_magnetic() {
  return {"preset-magnetic", [](double, double x) { return (x + 1.0) * (x + 1.0) / (1.0 + x * x); },
          [](double, double) { return 0.0; }, true};
}

Potential linear_in_time() {
  return {"linear-t", [](double t, double) { return t; }, [](double, double) { return 1.0; }, false};
}

Potential sine_in_time() {
  return {"sin-t", [](double t, double) { return std::sin(t); }, [](double t, double) { return std::cos(t); },
          false};
}

Potential by_name(const std::string& name) {
  if (name == "zero") return zero();
  if (name == "preset-electric") return preset_electric();
  if (name == "preset-magnetic") return preset_magnetic();
  if (name == "linear-t") return linear_in_time();
  if (name == "sin-t") return sine_in_time();
  if (name.rfind("const:", 0) == 0) {
    try {
      return constant(std::stod(name.substr(6)));
    } catch (const std::exception&) {
      throw ConfigError("potential: cannot parse constant in '" + name + "'");
    }
  }
  throw ConfigError("potential: unknown name '" + name + "'");
}

} // namespace potentials

DiracModel::DiracModel(double eps_, double lambda_, Potential ve_, Potential vm_, SpaceGrid grid_)
    : eps(eps_), lambda(lambda_), ve(std::move(ve_)), vm(std::move(vm_)), grid(std::move(grid_)) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ConfigError("model: epsilon must lie in (0, 1]");
  if (!std::isfinite(lambda)) throw ConfigError("model: lambda must be finite");
}

SpinorField sample_profile(const SpinorProfile& phi0, const SpaceGrid& grid) {
  SpinorField s(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const auto v = phi0(grid.point(j));
    s.c[0][j] = v[0];
    s.c[1][j] = v[1];
  }
  return s;
}

PotentialSamples sample_potentials(const DiracModel& m, double t) {
  const int n = m.grid.size();
  PotentialSamples s{RVector(n), RVector(n), RVector(n), RVector(n)};
  for (int j = 0; j < n; ++j) {
    const double x = m.grid.point(j);
    s.ve[j] = m.ve.value(t, x);
    s.vm[j] = m.vm.value(t, x);
    s.dve[j] = m.ve.dt(t, x);
    s.dvm[j] = m.vm.dt(t, x);
  }
  return s;
}

namespace pauli {
Mat2 alpha() {
  Mat2 a;
  a << 0.0, 1.0, 1.0, 0.0;
  return a;
}
Mat2 beta() {
  Mat2 b;
  b << 1.0, 0.0, 0.0, -1.0;
  return b;
}
Mat2 A(double tau) {
  Mat2 a;
  a << 0.0, std::exp(2.0 * kI * tau), std::exp(-2.0 * kI * tau), 0.0;
  return a;
}
} // namespace pauli

// --- nonlinearity ------------------------------------------------------------

SpinorField nonlinearity_F(double t, double tau, const SpinorField& u, const DiracModel& m) {
  const auto pot = sample_potentials(m, t);
  const cplx e2 = std::exp(2.0 * kI * tau);
  SpinorField f(u.size());
  for (Index j = 0; j < u.size(); ++j)
    nonlinearity_point(pot.ve[j], pot.vm[j], m.lambda, e2, u.c[0][j], u.c[1][j], f.c[0][j], f.c[1][j]);
  return f;
}

TwoScaleField nonlinearity_F(double t, const TwoScaleField& u, const DiracModel& m) {
  const auto pot = sample_potentials(m, t);
  const TauGrid tg(static_cast<int>(u.ntau()));
  TwoScaleField f(u.ntau(), u.nx());
  evaluate_nonlinearity(pot.ve, pot.vm, m.lambda, tg.e2(), u, f, Exec::serial);
  return f;
}

SpinorField F_e(double t, const SpinorField& u, const DiracModel& m) {
  const auto pot = sample_potentials(m, t);
  SpinorField f(u.size());
  for (Index j = 0; j < u.size(); ++j) {
    const cplx u1 = u.c[0][j], u2 = u.c[1][j];
    const double rho = std::norm(u1) - std::norm(u2);
    f.c[0][j] = -kI * (pot.ve[j] * u1 + m.lambda * rho * u1);
    f.c[1][j] = -kI * (pot.ve[j] * u2 - m.lambda * rho * u2);
  }
  return f;
}

namespace {

// -i [ve + vm A] w - i lambda 2Re((beta w, u)) beta u - i lambda (beta u, u) beta w
inline void dfdu_point(double ve, double vm, double lambda, cplx e2, cplx u1, cplx u2, cplx w1, cplx w2, cplx& d1,
                       cplx& d2) {
  const double rho = std::norm(u1) - std::norm(u2);
  const double drho = 2.0 * std::real(w1 * std::conj(u1) - w2 * std::conj(u2));
  d1 = -kI * (ve * w1 + vm * e2 * w2) - kI * lambda * (drho * u1 + rho * w1);
  d2 = -kI * (ve * w2 + vm * std::conj(e2) * w1) + kI * lambda * (drho * u2 + rho * w2);
}

} // namespace

SpinorField dF_du(double t, double tau, const SpinorField& u, const SpinorField& w, const DiracModel& m) {
  const auto pot = sample_potentials(m, t);
  const cplx e2 = std::exp(2.0 * kI * tau);
  SpinorField d(u.size());
  for (Index j = 0; j < u.size(); ++j)
    dfdu_point(pot.ve[j], pot.vm[j], m.lambda, e2, u.c[0][j], u.c[1][j], w.c[0][j], w.c[1][j], d.c[0][j],
               d.c[1][j]);
  return d;
}

TwoScaleField dF_du(double t, const TwoScaleField& u, const TwoScaleField& w, const DiracModel& m) {
  const auto pot = sample_potentials(m, t);
  const TauGrid tg(static_cast<int>(u.ntau()));
  TwoScaleField d(u.ntau(), u.nx());
  for (Index x = 0; x < u.nx(); ++x)
    for (Index j = 0; j < u.ntau(); ++j)
      dfdu_point(pot.ve[x], pot.vm[x], m.lambda, tg.e2()[j], u.c[0](j, x), u.c[1](j, x), w.c[0](j, x),
                 w.c[1](j, x), d.c[0](j, x), d.c[1](j, x));
  return d;
}

SpinorField dFe_du(double t, const SpinorField& u, const SpinorField& w, const DiracModel& m) {
  const auto pot = sample_potentials(m, t);
  SpinorField d(u.size());
  for (Index j = 0; j < u.size(); ++j)
    dfdu_point(pot.ve[j], 0.0, m.lambda, 1.0, u.c[0][j], u.c[1][j], w.c[0][j], w.c[1][j], d.c[0][j], d.c[1][j]);
  return d;
}

SpinorField dF_dt(double t, double tau, const SpinorField& u, const DiracModel& m) {
  const auto pot = sample_potentials(m, t);
  const cplx e2 = std::exp(2.0 * kI * tau);
  SpinorField d(u.size());
  d.c[0] = -kI * (pot.dve.cast<cplx>().cwiseProduct(u.c[0]) + e2 * pot.dvm.cast<cplx>().cwiseProduct(u.c[1]));
  d.c[1] = -kI * (pot.dve.cast<cplx>().cwiseProduct(u.c[1]) +
                  std::conj(e2) * pot.dvm.cast<cplx>().cwiseProduct(u.c[0]));
  return d;
}

TwoScaleField dF_dt(double t, const TwoScaleField& u, const DiracModel& m) {
  const auto pot = sample_potentials(m, t);
  const TauGrid tg(static_cast<int>(u.ntau()));
  TwoScaleField d(u.ntau(), u.nx());
  for (Index x = 0; x < u.nx(); ++x)
    for (Index j = 0; j < u.ntau(); ++j) {
      const cplx e2 = tg.e2()[j];
      d.c[0](j, x) = -kI * (pot.dve[x] * u.c[0](j, x) + pot.dvm[x] * e2 * u.c[1](j, x));
      d.c[1](j, x) = -kI * (pot.dve[x] * u.c[1](j, x) + pot.dvm[x] * std::conj(e2) * u.c[0](j, x));
    }
  return d;
}

SpinorField dFe_dt(double t, const SpinorField& u, const DiracModel& m) {
  const auto pot = sample_potentials(m, t);
  SpinorField d(u.size());
  for (int c = 0; c < 2; ++c) d.c[c] = -kI * pot.dve.cast<cplx>().cwiseProduct(u.c[c]);
  return d;
}

// --- functionals ---------------------------------------------------------------

double mass(const SpinorField& phi, const SpaceGrid& grid) {
  return grid.dx() * (phi.c[0].squaredNorm() + phi.c[1].squaredNorm());
}

double energy(const SpinorField& phi, const DiracModel& m) {
  const auto pot = sample_potentials(m, 0.0);
  const SpinorField dphi = spectral_dx(phi, m.grid, 1);
  const double inv_eps = 1.0 / m.eps;
  cplx sum = 0.0;
  for (Index j = 0; j < phi.size(); ++j) {
    const cplx p1 = phi.c[0][j], p2 = phi.c[1][j];
    const double n1 = std::norm(p1), n2 = std::norm(p2);
    const double rho = n1 - n2;
    // conj(Phi)^T alpha dx Phi
    const cplx kinetic = std::conj(p1) * dphi.c[1][j] + std::conj(p2) * dphi.c[0][j];
    const double coupling = 2.0 * std::real(p1 * std::conj(p2)); // (Phi, alpha Phi)
    sum += inv_eps * inv_eps * rho - kI * inv_eps * kinetic + pot.ve[j] * (n1 + n2) + pot.vm[j] * coupling +
           0.5 * m.lambda * rho * rho;
  }
  sum *= m.grid.dx();
  if (std::abs(sum.imag()) > 1e-10 * (1.0 + std::abs(sum.real())))
    throw NumericalError("energy: quadrature has a non-negligible imaginary part");
  return sum.real();
}

// --- filtering ---------------------------------------------------------------

SpinorField filter(const SpinorField& phi, double t, double eps, FilterDirection dir) {
  const double sign = dir == FilterDirection::forward ? 1.0 : -1.0;
  const cplx phase = std::exp(kI * (sign * t / (eps * eps)));
  return SpinorField(phase * phi.c[0], std::conj(phase) * phi.c[1]);
}

} // namespace uadirac
