#include "uadirac/spectral.hpp"
#include "uadirac/error.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace uadirac {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW plans are created once per layout and reused. Planning is not
// thread-safe in FFTW, execution through fftw_execute_dft is.
class PlanCache {
public:
  using Key = std::tuple<int, int, int, int, int>; // n, howmany, stride, dist, sign

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int howmany, int stride, int dist, int sign) {
    const Key key{n, howmany, stride, dist, sign};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const std::size_t extent = static_cast<std::size_t>((n - 1) * stride + (howmany - 1) * dist + 1);
    auto* buffer = fftw_alloc_complex(extent);
    fftw_plan plan = fftw_plan_many_dft(1, &n, howmany, buffer, nullptr, stride, dist, buffer, nullptr,
                                        stride, dist, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buffer);
    if (plan == nullptr) throw NumericalError("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void execute(cplx* data, int n, int howmany, int stride, int dist, int sign) {
  if (n == 0 || howmany == 0) return;
  auto plan = plan_cache().get(n, howmany, stride, dist, sign);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

} // namespace

// --- grids -------------------------------------------------------------------

SpaceGrid::SpaceGrid(double a, double b, int n) : a_(a), b_(b), n_(n) {
  if (!(b > a)) throw ConfigError("space grid: need b > a");
  if (n < 4 || n % 2 != 0) throw ConfigError("space grid: N must be even and >= 4, got " + std::to_string(n));
  mu_fft_.resize(n);
  for (int k = 0; k < n; ++k) mu_fft_[k] = mu(mode_at(k));
}

RVector SpaceGrid::points() const {
  RVector x(n_);
  for (int j = 0; j < n_; ++j) x[j] = point(j);
  return x;
}

double SpaceGrid::mu(int l) const { return kTwoPi * l / (b_ - a_); }

RVector SpaceGrid::wavenumbers_ascending() const {
  RVector m(n_);
  for (int i = 0; i < n_; ++i) m[i] = mu(i - n_ / 2);
  return m;
}

TauGrid::TauGrid(int ntau) : n_(ntau) {
  if (ntau < 4 || ntau % 2 != 0)
    throw ConfigError("tau grid: N_tau must be even and >= 4, got " + std::to_string(ntau));
  e2_.resize(ntau);
  for (int j = 0; j < ntau; ++j) e2_[j] = std::exp(2.0 * kI * point(j));
}

double TauGrid::dtau() const { return kTwoPi / n_; }

RVector TauGrid::points() const {
  RVector t(n_);
  for (int j = 0; j < n_; ++j) t[j] = point(j);
  return t;
}

SpaceGrid make_space_grid(double a, double b, int n) { return SpaceGrid(a, b, n); }
TauGrid make_tau_grid(int ntau) { return TauGrid(ntau); }

// --- transforms --------------------------------------------------------------

void fft_forward(CVector& v) {
  const int n = static_cast<int>(v.size());
  execute(v.data(), n, 1, 1, n, FFTW_FORWARD);
  v /= static_cast<double>(n);
}

void fft_backward(CVector& v) {
  const int n = static_cast<int>(v.size());
  execute(v.data(), n, 1, 1, n, FFTW_BACKWARD);
}

void fft_x_forward(CMatrix& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  execute(m.data(), cols, rows, rows, 1, FFTW_FORWARD);
  m /= static_cast<double>(cols);
}

void fft_x_backward(CMatrix& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  execute(m.data(), cols, rows, rows, 1, FFTW_BACKWARD);
}

void fft_x_forward(TwoScaleField& f) {
  fft_x_forward(f.c[0]);
  fft_x_forward(f.c[1]);
}

void fft_x_backward(TwoScaleField& f) {
  fft_x_backward(f.c[0]);
  fft_x_backward(f.c[1]);
}

void fft_tau_forward(CMatrix& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  execute(m.data(), rows, cols, 1, rows, FFTW_FORWARD);
  m /= static_cast<double>(rows);
}

void fft_tau_backward(CMatrix& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  execute(m.data(), rows, cols, 1, rows, FFTW_BACKWARD);
}

// --- spectral calculus -------------------------------------------------------

namespace {

CVector derivative_symbol(const SpaceGrid& grid, int order) {
  CVector sym(grid.size());
  for (int k = 0; k < grid.size(); ++k) sym[k] = std::pow(kI * grid.wavenumbers()[k], order);
  return sym;
}

void check_order(int order) {
  if (order < 0) throw ConfigError("spectral_dx: derivative order must be >= 0");
}

} // namespace

SpinorField spectral_dx(const SpinorField& f, const SpaceGrid& grid, int order) {
  check_order(order);
  if (f.size() != grid.size()) throw ConfigError("spectral_dx: field does not match the grid");
  if (order == 0) return f;
  const CVector sym = derivative_symbol(grid, order);
  SpinorField out = f;
  for (int c = 0; c < 2; ++c) {
    fft_forward(out.c[c]);
    out.c[c].array() *= sym.array();
    fft_backward(out.c[c]);
  }
  return out;
}

TwoScaleField spectral_dx(const TwoScaleField& f, const SpaceGrid& grid, int order) {
  check_order(order);
  if (f.nx() != grid.size()) throw ConfigError("spectral_dx: field does not match the grid");
  if (order == 0) return f;
  const CVector sym = derivative_symbol(grid, order);
  TwoScaleField out = f;
  for (int c = 0; c < 2; ++c) {
    fft_x_forward(out.c[c]);
    out.c[c] = out.c[c] * sym.asDiagonal();
    fft_x_backward(out.c[c]);
  }
  return out;
}

CMatrix dtau_matrix(const TauGrid& g) {
  const int n = g.size();
  CMatrix d(n, n);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const double diff = g.point(row) - g.point(col);
      cplx sum = 0.0;
      for (int l = -n / 2; l < n / 2; ++l) sum += static_cast<double>(l) * std::exp(kI * (l * diff));
      d(row, col) = kI * sum / static_cast<double>(n);
    }
  }
  return d;
}

CVector tau_interp_weights(const TauGrid& g, double tau_star) {
  const int n = g.size();
  const double t = std::fmod(tau_star, kTwoPi);
  CVector w(n);
  for (int j = 0; j < n; ++j) {
    cplx sum = 0.0;
    for (int l = -n / 2; l < n / 2; ++l) sum += std::exp(kI * (l * (t - g.point(j))));
    w[j] = sum / static_cast<double>(n);
  }
  return w;
}

SpinorField trig_interp_tau(const TwoScaleField& u, double tau_star) {
  const TauGrid g(static_cast<int>(u.ntau()));
  const CVector w = tau_interp_weights(g, tau_star);
  return SpinorField(u.c[0].transpose() * w, u.c[1].transpose() * w);
}

} // namespace uadirac
