#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace uadirac {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2cd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};

/// Two-component complex field sampled on the periodic x-grid.
struct SpinorField {
  std::array<CVector, 2> c;

  SpinorField() = default;
  explicit SpinorField(Index n) : c{CVector::Zero(n), CVector::Zero(n)} {}
  SpinorField(CVector first, CVector second) : c{std::move(first), std::move(second)} {}

  Index size() const { return c[0].size(); }
  CVector& operator[](int k) { return c[k]; }
  const CVector& operator[](int k) const { return c[k]; }

  SpinorField& operator+=(const SpinorField& o) {
    c[0] += o.c[0];
    c[1] += o.c[1];
    return *this;
  }
  SpinorField& operator-=(const SpinorField& o) {
    c[0] -= o.c[0];
    c[1] -= o.c[1];
    return *this;
  }
  SpinorField& operator*=(cplx s) {
    c[0] *= s;
    c[1] *= s;
    return *this;
  }
  bool all_finite() const { return c[0].allFinite() && c[1].allFinite(); }
};

inline SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
inline SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
inline SpinorField operator*(cplx s, SpinorField a) { return a *= s; }

/// Two-component field on the N_tau x N tensor grid in (tau, x).
///
/// Each component is stored column-major with N_tau rows and N columns, so
/// the tau-vector belonging to one x sample (or one x Fourier mode) is
/// contiguous. This is the layout the per-mode dense solves want.
struct TwoScaleField {
  std::array<CMatrix, 2> c;

  TwoScaleField() = default;
  TwoScaleField(Index ntau, Index nx) : c{CMatrix::Zero(ntau, nx), CMatrix::Zero(ntau, nx)} {}

  Index ntau() const { return c[0].rows(); }
  Index nx() const { return c[0].cols(); }
  CMatrix& operator[](int k) { return c[k]; }
  const CMatrix& operator[](int k) const { return c[k]; }

  /// The x-section at tau-node j.
  SpinorField section(Index j) const {
    return SpinorField(c[0].row(j).transpose(), c[1].row(j).transpose());
  }

  /// A field constant in tau.
  static TwoScaleField broadcast(const SpinorField& s, Index ntau) {
    TwoScaleField f;
    for (int k = 0; k < 2; ++k) f.c[k] = s.c[k].transpose().replicate(ntau, 1);
    return f;
  }

  TwoScaleField& operator+=(const TwoScaleField& o) {
    c[0] += o.c[0];
    c[1] += o.c[1];
    return *this;
  }
  TwoScaleField& operator-=(const TwoScaleField& o) {
    c[0] -= o.c[0];
    c[1] -= o.c[1];
    return *this;
  }
  TwoScaleField& operator*=(cplx s) {
    c[0] *= s;
    c[1] *= s;
    return *this;
  }
  bool all_finite() const { return c[0].allFinite() && c[1].allFinite(); }
};

inline TwoScaleField operator+(TwoScaleField a, const TwoScaleField& b) { return a += b; }
inline TwoScaleField operator-(TwoScaleField a, const TwoScaleField& b) { return a -= b; }
inline TwoScaleField operator*(cplx s, TwoScaleField a) { return a *= s; }

} // namespace uadirac
