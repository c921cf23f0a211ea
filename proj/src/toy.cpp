#include "uadirac/toy.hpp"
#include "uadirac/error.hpp"
#include "uadirac/spectral.hpp"

#include <cmath>

namespace uadirac {

namespace {

void check_params(double eps, int p) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ConfigError("toy: epsilon must lie in (0, 1]");
  if (p < 1) throw ConfigError("toy: derivative order p must be >= 1");
}

using lcplx = std::complex<long double>;

// The exact solution with every operation after b() in extended precision.
// The derivative stencils below divide by h^p = (eps^2/100)^p; at p = 3 and
// eps = 1/64 double roundoff alone would exceed the bounded derivative.
lcplx exact_ld(const ToyProblem& q, bool prepared, long double t, double tau) {
  const long double eps = q.eps;
  const long double s = static_cast<long double>(tau) - t / (eps * eps);
  const long double bs = q.b(static_cast<double>(s)), bt = q.b(tau);
  const lcplx i(0.0L, 1.0L);
  lcplx u_in = 1.0L;
  if (prepared) {
    const lcplx z = -i * (eps * bs);
    lcplx term = 1.0L;
    for (int k = 1; k <= 2 * q.p - 1; ++k) {
      term *= z / static_cast<long double>(k);
      u_in += term;
    }
  }
  return std::exp(-i * (eps * bt)) * std::exp(i * (eps * bs)) * u_in * lcplx(q.u0);
}

} // namespace

ToyProblem make_toy_problem(const std::string& a_name, cplx u0, double eps, int p) {
  check_params(eps, p);
  ToyProblem prob;
  prob.name = a_name;
  prob.u0 = u0;
  prob.eps = eps;
  prob.p = p;
  if (a_name == "cos") {
    prob.a = [](double s) { return std::cos(s); };
    prob.b = [](double s) { return std::sin(s); };
  } else if (a_name == "sin") {
    prob.a = [](double s) { return std::sin(s); };
    prob.b = [](double s) { return 1.0 - std::cos(s); };
  } else if (a_name == "cos2") {
    prob.a = [](double s) { return std::cos(2.0 * s); };
    prob.b = [](double s) { return 0.5 * std::sin(2.0 * s); };
  } else if (a_name == "zero") {
    prob.a = [](double) { return 0.0; };
    prob.b = [](double) { return 0.0; };
  } else {
    throw ConfigError("toy: unknown coefficient '" + a_name + "' (cos, sin, cos2, zero)");
  }
  return prob;
}

ToyProblem make_toy_problem(std::function<double(double)> a, cplx u0, double eps, int p, int nquad) {
  check_params(eps, p);
  const TauGrid g(nquad);
  CVector hat(nquad);
  for (int j = 0; j < nquad; ++j) hat[j] = a(g.point(j));
  fft_forward(hat);
  if (std::abs(hat[0]) > 1e-13) throw ConfigError("toy: coefficient a must have zero tau-mean");
  // b(s) = sum_{k != 0} a_k (e^{iks} - 1)/(ik), real part of the interpolant.
  std::vector<std::pair<int, cplx>> modes;
  for (int k = 1; k < nquad; ++k) modes.emplace_back(g.mode_at(k), hat[k]);
  ToyProblem prob;
  prob.name = "custom";
  prob.u0 = u0;
  prob.eps = eps;
  prob.p = p;
  prob.a = std::move(a);
  prob.b = [modes](double s) {
    cplx sum = 0.0;
    for (const auto& [k, ak] : modes) sum += ak * (std::exp(kI * (k * s)) - 1.0) / (kI * static_cast<double>(k));
    return sum.real();
  };
  return prob;
}

cplx toy_exact(const ToyProblem& prob, const TauFunction& u_in, double t, double tau) {
  const double eps = prob.eps;
  const double s = tau - t / (eps * eps);
  return std::exp(-kI * (eps * prob.b(tau))) * std::exp(kI * (eps * prob.b(s))) * u_in(s);
}

TauFunction toy_prepared_initial(const ToyProblem& prob) {
  const int terms = 2 * prob.p - 1;
  return [prob, terms](double tau) {
    const cplx z = -kI * (prob.eps * prob.b(tau));
    cplx sum = 1.0, term = 1.0;
    for (int k = 1; k <= terms; ++k) {
      term *= z / static_cast<double>(k);
      sum += term;
    }
    return prob.u0 * sum;
  };
}

TauFunction toy_unprepared_initial(const ToyProblem& prob) {
  return [u0 = prob.u0](double) { return u0; };
}

std::vector<ToyDerivativeRow> toy_derivative_bound(const ToyProblem& prob, bool prepared,
                                                   const std::vector<double>& eps_values, int ntau) {
  if (prob.p < 1 || prob.p > 3) throw ConfigError("toy: derivative estimates are available for p = 1, 2, 3");
  const TauGrid g(ntau);
  std::vector<ToyDerivativeRow> rows;
  for (double eps : eps_values) {
    ToyProblem q = prob;
    check_params(eps, q.p);
    q.eps = eps;
    const long double h = static_cast<long double>(eps) * eps / 100.0L;
    double worst = 0.0;
    for (int j = 0; j < ntau; ++j) {
      const double tau = g.point(j);
      auto u = [&](long double t) { return exact_ld(q, prepared, t, tau); };
      lcplx d;
      switch (q.p) {
      case 1:
        d = (u(h) - u(-h)) / (2.0L * h);
        break;
      case 2:
        d = (u(h) - 2.0L * u(0.0L) + u(-h)) / (h * h);
        break;
      default:
        d = (u(2.0L * h) - 2.0L * u(h) + 2.0L * u(-h) - u(-2.0L * h)) / (2.0L * h * h * h);
        break;
      }
      worst = std::max(worst, static_cast<double>(std::abs(d)));
    }
    rows.push_back({eps, worst});
  }
  return rows;
}

} // namespace uadirac
