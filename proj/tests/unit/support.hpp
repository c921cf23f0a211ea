#pragma once

#include "uadirac/experiment.hpp"
#include "uadirac/fields.hpp"

#include <cmath>
#include <random>

namespace uadirac::test {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}
inline double max_abs(const SpinorField& s) { return std::max(max_abs(s.c[0]), max_abs(s.c[1])); }
inline double max_abs(const TwoScaleField& f) { return std::max(max_abs(f.c[0]), max_abs(f.c[1])); }

inline CVector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = cplx(g(rng), g(rng));
  return v;
}

inline SpinorField random_spinor(Index n, std::mt19937_64& rng) {
  return SpinorField(random_vector(n, rng), random_vector(n, rng));
}

inline TwoScaleField random_field(Index ntau, Index nx, std::mt19937_64& rng) {
  TwoScaleField f(ntau, nx);
  for (int c = 0; c < 2; ++c)
    for (Index x = 0; x < nx; ++x) f.c[c].col(x) = random_vector(ntau, rng);
  return f;
}

/// Random trigonometric polynomial in tau with modes |k| <= kmax, one column per x.
inline CMatrix band_limited(int ntau, Index cols, int kmax, std::mt19937_64& rng) {
  CMatrix h = CMatrix::Zero(ntau, cols);
  const double dtau = 2.0 * M_PI / ntau;
  for (Index c = 0; c < cols; ++c) {
    const CVector coef = random_vector(2 * kmax + 1, rng);
    for (int j = 0; j < ntau; ++j)
      for (int k = -kmax; k <= kmax; ++k) h(j, c) += coef[k + kmax] * std::exp(kI * (k * j * dtau));
  }
  return h;
}

inline ExperimentConfig preset(Example e) {
  ExperimentConfig cfg;
  cfg.example = e;
  return cfg;
}

inline DiracModel preset_model(Example e, double eps, int N) { return make_model(preset(e), eps, N); }

inline SpinorField preset_phi0(const SpaceGrid& g) { return sample_profile(preset_profile(), g); }

} // namespace uadirac::test
