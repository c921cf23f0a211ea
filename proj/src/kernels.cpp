#include "uadirac/kernels.hpp"
#include "uadirac/error.hpp"

#include <sstream>

namespace uadirac {

namespace {

template <class Body>
void for_each_index(Index n, Exec exec, Body&& body) {
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) body(i);
  } else {
    for (Index i = 0; i < n; ++i) body(i);
  }
}

void check_lu(const Eigen::PartialPivLU<CMatrix>& lu, double eps, double h, int l) {
  const double rc = lu.rcond();
  if (!(rc > 1e-14)) {
    std::ostringstream os;
    os << "singular mode matrix (eps=" << eps << ", dt=" << h << ", l=" << l << ", rcond=" << rc << ")";
    throw ConfigError(os.str());
  }
}

// Solve P u1 + gamma E u2 = r1, P u2 + gamma conj(E) u1 = r2 for one mode.
void solve_block(const ModeFactorizations& fam, int l, double mu, const CVector& r1, const CVector& r2,
                 Eigen::Ref<CVector> u1, Eigen::Ref<CVector> u2) {
  if (l == 0) {
    u1 = fam.P_lu.solve(r1);
    u2 = fam.P_lu.solve(r2);
    return;
  }
  const cplx gamma = kI * mu * fam.kappa / fam.eps;
  const CVector e2c = fam.e2.conjugate();
  const CVector rhs = fam.P * e2c.cwiseProduct(r1) / gamma - r2;
  if (l < 0)
    u1 = fam.B_negative(l).solve(rhs);
  else
    u1 = -fam.B_negative(-l).solve(rhs);
  // The first row gives u2 = conj(E)(r1 - P u1)/gamma, but r1 and P u1 are both
  // O(|u|/dt) and cancel: for small dt and low modes that loses ~1/(dt |gamma|)
  // digits per step. The second row has no cancellation.
  u2 = fam.P_lu.solve(r2 - gamma * e2c.cwiseProduct(u1));
}

} // namespace

void evaluate_nonlinearity(const RVector& ve, const RVector& vm, double lambda, const CVector& e2,
                           const TwoScaleField& u, TwoScaleField& out, Exec exec) {
  const Index nt = u.ntau();
  if (out.ntau() != nt || out.nx() != u.nx()) out = TwoScaleField(nt, u.nx());
  for_each_index(u.nx(), exec, [&](Index x) {
    for (Index j = 0; j < nt; ++j)
      nonlinearity_point(ve[x], vm[x], lambda, e2[j], u.c[0](j, x), u.c[1](j, x), out.c[0](j, x),
                         out.c[1](j, x));
  });
}

CMatrix assemble_B(const CMatrix& P, const CVector& e2, cplx gamma) {
  const CVector e2c = e2.conjugate();
  CMatrix B = (P * e2c.asDiagonal() * P) / gamma;
  B.diagonal() -= gamma * e2c;
  return B;
}

ModeFactorizations build_mode_family(double h, double kappa, double eps, const CMatrix& D, const CVector& e2,
                                     const RVector& mu, Exec exec) {
  const Index nt = D.rows();
  const int n = static_cast<int>(mu.size());
  ModeFactorizations fam;
  fam.h = h;
  fam.kappa = kappa;
  fam.eps = eps;
  fam.mu = mu;
  fam.e2 = e2;
  fam.P = CMatrix::Identity(nt, nt) / h + (kappa / (eps * eps)) * D;
  fam.P_lu.compute(fam.P);
  check_lu(fam.P_lu, eps, h, 0);

  // FFT-order index of signed mode l.
  auto index_of = [n](int l) { return l >= 0 ? l : l + n; };
  const int half = n / 2;
  fam.B_lu.resize(static_cast<std::size_t>(half));
  std::vector<double> asym(static_cast<std::size_t>(half), 0.0);
  std::vector<double> rcond(static_cast<std::size_t>(half), 0.0);
  for_each_index(half, exec, [&](Index m) {
    const int l = -static_cast<int>(m) - 1;
    const cplx gamma = kI * mu[index_of(l)] * kappa / eps;
    const CMatrix B = assemble_B(fam.P, e2, gamma);
    if (-l < half) {
      const cplx gamma_pos = kI * mu[index_of(-l)] * kappa / eps;
      asym[static_cast<std::size_t>(m)] = (B + assemble_B(fam.P, e2, gamma_pos)).cwiseAbs().maxCoeff();
    }
    auto& lu = fam.B_lu[static_cast<std::size_t>(m)];
    lu.compute(B);
    rcond[static_cast<std::size_t>(m)] = lu.rcond();
  });
  for (int m = 0; m < half; ++m) {
    const double scale = 1.0 + fam.P.cwiseAbs().maxCoeff() * fam.P.cwiseAbs().maxCoeff();
    if (asym[static_cast<std::size_t>(m)] > 1e-12 * scale) {
      std::ostringstream os;
      os << "mode matrices violate B_l = -B_{-l} at l=" << m + 1 << " (defect " << asym[static_cast<std::size_t>(m)]
         << ")";
      throw NumericalError(os.str());
    }
    check_lu(fam.B_lu[static_cast<std::size_t>(m)], eps, h, -m - 1);
  }
  return fam;
}

void solve_euler_modes(const ModeFactorizations& fam, const TwoScaleField& u_hat, const TwoScaleField& f_hat,
                       TwoScaleField& out, Exec exec) {
  const int n = static_cast<int>(u_hat.nx());
  if (out.ntau() != u_hat.ntau() || out.nx() != u_hat.nx()) out = TwoScaleField(u_hat.ntau(), u_hat.nx());
  const double inv_h = 1.0 / fam.h;
  for_each_index(n, exec, [&](Index k) {
    const int l = k < n / 2 ? static_cast<int>(k) : static_cast<int>(k) - n;
    const CVector r1 = inv_h * u_hat.c[0].col(k) + f_hat.c[0].col(k);
    const CVector r2 = inv_h * u_hat.c[1].col(k) + f_hat.c[1].col(k);
    solve_block(fam, l, fam.mu[k], r1, r2, out.c[0].col(k), out.c[1].col(k));
  });
}

void solve_cn_modes(const ModeFactorizations& fam, const CMatrix& Pminus, const TwoScaleField& u_hat,
                    const TwoScaleField& f_hat, TwoScaleField& out, Exec exec) {
  const int n = static_cast<int>(u_hat.nx());
  if (out.ntau() != u_hat.ntau() || out.nx() != u_hat.nx()) out = TwoScaleField(u_hat.ntau(), u_hat.nx());
  for_each_index(n, exec, [&](Index k) {
    const int l = k < n / 2 ? static_cast<int>(k) : static_cast<int>(k) - n;
    const cplx gamma = kI * fam.mu[k] * fam.kappa / fam.eps;
    const auto u1 = u_hat.c[0].col(k);
    const auto u2 = u_hat.c[1].col(k);
    const CVector r1 = Pminus * u1 - gamma * fam.e2.cwiseProduct(u2) + f_hat.c[0].col(k);
    const CVector r2 = Pminus * u2 - gamma * fam.e2.conjugate().cwiseProduct(u1) + f_hat.c[1].col(k);
    solve_block(fam, l, fam.mu[k], r1, r2, out.c[0].col(k), out.c[1].col(k));
  });
}

} // namespace uadirac
