#include <doctest.h>

#include "support.hpp"
#include "uadirac/initdata.hpp"
#include "uadirac/spectral.hpp"
#include "uadirac/tau_ops.hpp"

using namespace uadirac;
using namespace uadirac::test;

namespace {

// 2x2 tau-matrix samples as an N_tau x 4 matrix (column-major entries).
CMatrix as_columns(const TauMatrix& m) {
  CMatrix out(static_cast<Index>(m.size()), 4);
  for (std::size_t j = 0; j < m.size(); ++j)
    for (int e = 0; e < 4; ++e) out(static_cast<Index>(j), e) = m[j](e % 2, e / 2);
  return out;
}

Mat2 b_of(double t) { return osc_matrices(t).B; }
Mat2 c_of(double t) { return osc_matrices(t).C; }

} // namespace

TEST_CASE("tau average") {
  const TauGrid tg(16);
  CMatrix h(16, 2);
  h.col(0) = tg.e2() * cplx(2, 1);
  h.col(1).setConstant(cplx(-0.5, 3));
  const CVector a = pi_avg(h);
  CHECK(std::abs(a[0]) < 1e-15);
  CHECK(std::abs(a[1] - cplx(-0.5, 3)) < 1e-15);
  CHECK(max_abs(pi_avg(as_columns(sample_tau_matrix(16, pauli::A)))) < 1e-15);
}

TEST_CASE("L^{-1} and L^{-2} on single modes") {
  const TauGrid tg(16);
  CMatrix h(16, 1);
  h.col(0) = tg.e2() * cplx(1, -2);
  CHECK(max_abs(linv(h) - h / (2.0 * kI)) < 1e-14);
  CHECK(max_abs(linv2(h) + h / 4.0) < 1e-14);

  const CMatrix c = CMatrix::Constant(16, 3, cplx(4, 4));
  CHECK(max_abs(linv(c)) < 1e-15);
  CHECK(max_abs(linv2(c)) < 1e-15);

  // L^{-1} A = B
  const CMatrix A = as_columns(sample_tau_matrix(16, pauli::A));
  const CMatrix B = as_columns(sample_tau_matrix(16, b_of));
  CHECK(max_abs(linv(A) - B) < 1e-15);
}

TEST_CASE("operator identities on band-limited data") {
  std::mt19937_64 rng(21);
  for (int nt : {16, 32}) {
    const CMatrix h = band_limited(nt, 5, nt / 4, rng);
    CHECK(max_abs(linv2(h) - linv(linv(h))) < 1e-13);
    // Pi L^{-1} = 0
    CHECK(max_abs(pi_avg(linv(h))) < 1e-15);
    CHECK(max_abs(pi_avg(linv2(h))) < 1e-15);
    // L L^{-1} = I - Pi
    const CMatrix D = dtau_matrix(TauGrid(nt));
    const CVector mean = pi_avg(h);
    CMatrix centred = h;
    for (Index c = 0; c < h.cols(); ++c) centred.col(c).array() -= mean[c];
    CHECK(max_abs(D * linv(h) - centred) < 1e-12);
  }
  // two-scale overloads act per component
  const TwoScaleField f = random_field(16, 3, rng);
  const TwoScaleField lf = linv(f);
  CHECK(max_abs(lf.c[1] - linv(f.c[1])) == 0.0);
  CHECK(max_abs(linv2(f).c[0] - linv2(f.c[0])) == 0.0);
  CHECK(max_abs(pi_avg(f).c[0] - pi_avg(f.c[0])) == 0.0);
}

TEST_CASE("oscillation matrices") {
  const OscMatrices o = osc_matrices(0.0);
  CHECK((o.A - pauli::alpha()).norm() < 1e-15);
  Mat2 b0;
  b0 << 0, -0.5 * kI, 0.5 * kI, 0;
  CHECK((o.B - b0).norm() < 1e-15);
  Mat2 c;
  c << 0.5 * kI, 0, 0, -0.5 * kI;
  for (double t : {0.0, 0.4, 2.5, -3.0}) {
    const OscMatrices q = osc_matrices(t);
    CHECK((q.A * q.B - c).norm() < 1e-15);
    CHECK((q.C - c).norm() < 1e-15);
    CHECK((q.A - pauli::A(t)).norm() < 1e-15);
  }
  // A(0) C = 4 B(0)^3
  CHECK((o.A * o.C - 4.0 * o.B * o.B * o.B).norm() < 1e-13);

  // L^{-1} B = -A/4 and (I - Pi) C = 0
  const CMatrix A = as_columns(sample_tau_matrix(64, pauli::A));
  const CMatrix B = as_columns(sample_tau_matrix(64, b_of));
  CHECK(max_abs(linv(B) + A / 4.0) < 1e-13);
  CHECK(max_abs(linv(as_columns(sample_tau_matrix(64, c_of)))) < 1e-15);
}

TEST_CASE("matrix application") {
  std::mt19937_64 rng(8);
  const SpinorField s = random_spinor(5, rng);
  const TauMatrix A = sample_tau_matrix(8, pauli::A);
  const TwoScaleField as = apply_matrix(A, s);
  const TwoScaleField au = apply_matrix(A, TwoScaleField::broadcast(s, 8));
  CHECK(max_abs(as - au) == 0.0);
  const SpinorField row = as.section(3);
  const cplx e = std::exp(2.0 * kI * (3 * 2 * M_PI / 8));
  CHECK(max_abs(row.c[0] - e * s.c[1]) < 1e-15);
  CHECK(max_abs(row.c[1] - std::conj(e) * s.c[0]) < 1e-15);
  const SpinorField sw = apply_matrix(pauli::alpha(), s);
  CHECK(max_abs(sw.c[0] - s.c[1]) == 0.0);
}

TEST_CASE("L^{-1}(I - Pi) A dx f0 vanishes") {
  for (Example e : {Example::II, Example::III}) {
    const DiracModel m = preset_model(e, 0.25, 64);
    const TauGrid tg(32);
    const AuxMap aux = aux_functions(preset_phi0(m.grid), m, tg, 2);
    const TwoScaleField& f0 = aux.at("f0");
    CHECK(max_abs(f0) > 0.1);
    const TwoScaleField r = linv(apply_matrix(sample_tau_matrix(32, pauli::A), spectral_dx(f0, m.grid, 1)));
    CHECK(max_abs(r) < 1e-12);
  }
}
