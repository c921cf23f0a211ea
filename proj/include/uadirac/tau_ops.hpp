#pragma once

// Calculus on 2 pi-periodic tau-functions, done through the discrete
// tau-Fourier transform. Every auxiliary function of the initial-data
// construction is a low-degree trigonometric polynomial in tau, so on
// N_tau >= 16 nodes this discrete calculus is exact.
//
// A "tau-function" here is a matrix whose columns are tau-sampled sequences
// (N_tau rows); operators act column by column.

#include "uadirac/fields.hpp"

#include <vector>

namespace uadirac {

/// Pi h: the tau-average (k = 0 coefficient) of every column.
CVector pi_avg(const CMatrix& h);
SpinorField pi_avg(const TwoScaleField& h);

/// L^{-1}(I - Pi): mode k != 0 times 1/(ik), mean set to zero. The Nyquist
/// mode k = -N_tau/2 is treated like any other nonzero mode.
CMatrix linv(const CMatrix& h);
TwoScaleField linv(const TwoScaleField& h);

/// L^{-2}(I - Pi): mode k != 0 times 1/(ik)^2.
CMatrix linv2(const CMatrix& h);
TwoScaleField linv2(const TwoScaleField& h);

struct OscMatrices {
  Mat2 A, B, C;
};

/// Closed forms: A(tau) = [[0, e^{2i tau}], [e^{-2i tau}, 0]],
/// B(tau) = L^{-1} A = -(i/2) [[0, e^{2i tau}], [-e^{-2i tau}, 0]],
/// C = A B = (i/2) diag(1, -1).
OscMatrices osc_matrices(double tau);

/// Samples of a tau-dependent 2x2 matrix at the nodes of an N_tau grid.
using TauMatrix = std::vector<Mat2>;
TauMatrix sample_tau_matrix(int ntau, Mat2 (*fn)(double));

/// Pointwise product M(tau_j) U(tau_j, x).
TwoScaleField apply_matrix(const TauMatrix& m, const TwoScaleField& u);
/// M(tau_j) s(x) for a tau-independent spinor s.
TwoScaleField apply_matrix(const TauMatrix& m, const SpinorField& s);
/// Constant matrix times field.
SpinorField apply_matrix(const Mat2& m, const SpinorField& s);
TwoScaleField apply_matrix(const Mat2& m, const TwoScaleField& u);

} // namespace uadirac
