#pragma once

// Periodic grids and Fourier machinery in x and tau.
//
// Mode convention (both directions): the mode set is l = -N/2 ... N/2-1, so
// there is exactly one Nyquist mode, l = -N/2, and no +N/2. Internally
// coefficients are kept in FFT order: storage index k holds l = k for
// k < N/2 and l = k - N otherwise.
//
// Normalization: the forward transform carries the 1/N factor,
//   U_hat_l = (1/N) sum_j U(x_j) exp(-i mu_l (x_j - a)),
//   U(x)    = sum_l U_hat_l exp(i mu_l (x - a)).

#include "uadirac/fields.hpp"

#include <vector>

namespace uadirac {

class SpaceGrid {
public:
  SpaceGrid(double a, double b, int n);

  double a() const { return a_; }
  double b() const { return b_; }
  int size() const { return n_; }
  double length() const { return b_ - a_; }
  double dx() const { return (b_ - a_) / n_; }
  double point(int j) const { return a_ + j * dx(); }
  RVector points() const;

  /// mu_l = 2 pi l / (b - a) for a signed mode number l.
  double mu(int l) const;
  /// Signed mode number stored at FFT-order index k.
  int mode_at(int k) const { return k < n_ / 2 ? k : k - n_; }
  /// mu at every FFT-order index.
  const RVector& wavenumbers() const { return mu_fft_; }
  /// mu for l = -N/2 ... N/2-1, ascending.
  RVector wavenumbers_ascending() const;

  bool operator==(const SpaceGrid& o) const { return a_ == o.a_ && b_ == o.b_ && n_ == o.n_; }

private:
  double a_, b_;
  int n_;
  RVector mu_fft_;
};

class TauGrid {
public:
  explicit TauGrid(int ntau);

  int size() const { return n_; }
  double dtau() const;
  double point(int j) const { return j * dtau(); }
  RVector points() const;
  int mode_at(int k) const { return k < n_ / 2 ? k : k - n_; }
  /// Samples of exp(2 i tau_j) (the diagonal matrix e^{2 i tau}).
  const CVector& e2() const { return e2_; }

  bool operator==(const TauGrid& o) const { return n_ == o.n_; }

private:
  int n_;
  CVector e2_;
};

SpaceGrid make_space_grid(double a, double b, int n);
TauGrid make_tau_grid(int ntau);

// --- transforms ------------------------------------------------------------

/// In-place transforms of a single periodic sequence.
void fft_forward(CVector& v);
void fft_backward(CVector& v);

/// In-place transforms along x (along each row) of an N_tau x N matrix.
void fft_x_forward(CMatrix& m);
void fft_x_backward(CMatrix& m);
void fft_x_forward(TwoScaleField& f);
void fft_x_backward(TwoScaleField& f);

/// In-place transforms along tau (along each column) of an N_tau x M matrix.
void fft_tau_forward(CMatrix& m);
void fft_tau_backward(CMatrix& m);

// --- spectral calculus -------------------------------------------------------

/// Samples of the order-th x-derivative of the trigonometric interpolant.
SpinorField spectral_dx(const SpinorField& f, const SpaceGrid& grid, int order = 1);
TwoScaleField spectral_dx(const TwoScaleField& f, const SpaceGrid& grid, int order = 1);

/// d_{n,m} = (i/N_tau) sum_{l=-N_tau/2}^{N_tau/2-1} l exp(i l (tau_n - tau_m)),
/// evaluated term by term.
CMatrix dtau_matrix(const TauGrid& g);

/// Weights s_j with  U(tau*) = sum_j s_j U(tau_j)  for the tau-interpolant.
CVector tau_interp_weights(const TauGrid& g, double tau_star);

/// Evaluate the tau-trigonometric interpolant of every x-sample at tau*
/// (any real, reduced mod 2 pi).
SpinorField trig_interp_tau(const TwoScaleField& u, double tau_star);

} // namespace uadirac
