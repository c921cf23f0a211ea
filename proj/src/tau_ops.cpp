#include "uadirac/tau_ops.hpp"
#include "uadirac/spectral.hpp"

#include <vector>

namespace uadirac {

namespace {

// Multiply every nonzero tau-mode by symbol(k), zero the mean.
CMatrix apply_symbol(const CMatrix& h, cplx (*symbol)(int)) {
  CMatrix hat = h;
  fft_tau_forward(hat);
  const int n = static_cast<int>(h.rows());
  for (int r = 0; r < n; ++r) {
    const int k = r < n / 2 ? r : r - n;
    hat.row(r) *= (k == 0 ? cplx(0.0) : symbol(k));
  }
  fft_tau_backward(hat);
  return hat;
}

cplx inv_ik(int k) { return 1.0 / (kI * static_cast<double>(k)); }
cplx inv_ik2(int k) { return -1.0 / (static_cast<double>(k) * static_cast<double>(k)); }

} // namespace

CVector pi_avg(const CMatrix& h) { return h.colwise().mean().transpose(); }

SpinorField pi_avg(const TwoScaleField& h) { return SpinorField(pi_avg(h.c[0]), pi_avg(h.c[1])); }

CMatrix linv(const CMatrix& h) { return apply_symbol(h, inv_ik); }

TwoScaleField linv(const TwoScaleField& h) {
  TwoScaleField out;
  for (int c = 0; c < 2; ++c) out.c[c] = linv(h.c[c]);
  return out;
}

CMatrix linv2(const CMatrix& h) { return apply_symbol(h, inv_ik2); }

TwoScaleField linv2(const TwoScaleField& h) {
  TwoScaleField out;
  for (int c = 0; c < 2; ++c) out.c[c] = linv2(h.c[c]);
  return out;
}

OscMatrices osc_matrices(double tau) {
  const cplx e = std::exp(2.0 * kI * tau);
  OscMatrices m;
  m.A << 0.0, e, std::conj(e), 0.0;
  m.B << 0.0, -0.5 * kI * e, 0.5 * kI * std::conj(e), 0.0;
  m.C << 0.5 * kI, 0.0, 0.0, -0.5 * kI;
  return m;
}

TauMatrix sample_tau_matrix(int ntau, Mat2 (*fn)(double)) {
  const TauGrid g(ntau);
  TauMatrix out(static_cast<std::size_t>(ntau));
  for (int j = 0; j < ntau; ++j) out[static_cast<std::size_t>(j)] = fn(g.point(j));
  return out;
}

TwoScaleField apply_matrix(const TauMatrix& m, const TwoScaleField& u) {
  TwoScaleField out(u.ntau(), u.nx());
  for (Index j = 0; j < u.ntau(); ++j) {
    const Mat2& mj = m[static_cast<std::size_t>(j)];
    out.c[0].row(j) = mj(0, 0) * u.c[0].row(j) + mj(0, 1) * u.c[1].row(j);
    out.c[1].row(j) = mj(1, 0) * u.c[0].row(j) + mj(1, 1) * u.c[1].row(j);
  }
  return out;
}

TwoScaleField apply_matrix(const TauMatrix& m, const SpinorField& s) {
  return apply_matrix(m, TwoScaleField::broadcast(s, static_cast<Index>(m.size())));
}

SpinorField apply_matrix(const Mat2& m, const SpinorField& s) {
  return SpinorField(m(0, 0) * s.c[0] + m(0, 1) * s.c[1], m(1, 0) * s.c[0] + m(1, 1) * s.c[1]);
}

TwoScaleField apply_matrix(const Mat2& m, const TwoScaleField& u) {
  TwoScaleField out;
  out.c[0] = m(0, 0) * u.c[0] + m(0, 1) * u.c[1];
  out.c[1] = m(1, 0) * u.c[0] + m(1, 1) * u.c[1];
  return out;
}

} // namespace uadirac
