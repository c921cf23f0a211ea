// Serial reference vs OpenMP driver for the three per-step kernels, plus a
// whole UA2 step. Arguments are (N, N_tau).
//
//   ./bench_kernels --benchmark_filter=cn
//   OMP_NUM_THREADS=4 ./bench_kernels

#include "uadirac/kernels.hpp"
#include "uadirac/spectral.hpp"
#include "uadirac/steppers.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace uadirac;

namespace {

TwoScaleField random_field(Index ntau, Index nx, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  TwoScaleField f(ntau, nx);
  for (int c = 0; c < 2; ++c)
    for (Index x = 0; x < nx; ++x)
      for (Index j = 0; j < ntau; ++j) f.c[c](j, x) = cplx(g(rng), g(rng));
  return f;
}

struct Setup {
  SpaceGrid grid;
  TauGrid tg;
  CMatrix D;
  TwoScaleField u, f, out;
  Setup(int n, int nt)
      : grid(-8, 8, n), tg(nt), D(dtau_matrix(tg)), u(random_field(nt, n, 1)), f(random_field(nt, n, 2)),
        out(nt, n) {}
};

constexpr double kEps = 1.0 / 64, kDt = 1e-3;

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {128, 512})
    for (int nt : {32, 64}) b->Args({n, nt});
}

template <Exec E>
void nonlinearity(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const RVector ve = RVector::Random(s.grid.size()), vm = RVector::Random(s.grid.size());
  for (auto _ : st) {
    evaluate_nonlinearity(ve, vm, 0.5, s.tg.e2(), s.u, s.out, E);
    benchmark::DoNotOptimize(s.out.c[0].data());
  }
}

template <Exec E>
void euler(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const ModeFactorizations fam = build_mode_family(kDt, 1.0, kEps, s.D, s.tg.e2(), s.grid.wavenumbers(), E);
  for (auto _ : st) {
    solve_euler_modes(fam, s.u, s.f, s.out, E);
    benchmark::DoNotOptimize(s.out.c[0].data());
  }
}

template <Exec E>
void cn(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const ModeFactorizations fam = build_mode_family(kDt, 0.5, kEps, s.D, s.tg.e2(), s.grid.wavenumbers(), E);
  const CMatrix Pm = CMatrix::Identity(s.D.rows(), s.D.cols()) / kDt - s.D / (2 * kEps * kEps);
  for (auto _ : st) {
    solve_cn_modes(fam, Pm, s.u, s.f, s.out, E);
    benchmark::DoNotOptimize(s.out.c[0].data());
  }
}

template <Exec E>
void factorize(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) {
    ModeFactorizations fam = build_mode_family(kDt, 0.5, kEps, s.D, s.tg.e2(), s.grid.wavenumbers(), E);
    benchmark::DoNotOptimize(fam.B_lu.data());
  }
}

template <Exec E>
void ua2_step_full(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0)), nt = static_cast<int>(st.range(1));
  const DiracModel m(kEps, 0.5, potentials::preset_electric(), potentials::preset_magnetic(), SpaceGrid(-8, 8, n));
  StepperOptions opts;
  opts.exec = E;
  const SchemeMatrices M = build_matrices(m, kDt, TauGrid(nt), Scheme::ua2, opts);
  TwoScaleState s{0, 0.0, random_field(nt, n, 3), Scheme::ua2};
  s.U *= 0.1;
  for (auto _ : st) {
    TwoScaleState next = ua2_step(s, M, m);
    benchmark::DoNotOptimize(next.U.c[0].data());
  }
}

} // namespace

BENCHMARK(nonlinearity<Exec::serial>)->Name("nonlinearity/serial")->Apply(sizes);
BENCHMARK(nonlinearity<Exec::parallel>)->Name("nonlinearity/omp")->Apply(sizes)->UseRealTime();
BENCHMARK(euler<Exec::serial>)->Name("euler_modes/serial")->Apply(sizes);
BENCHMARK(euler<Exec::parallel>)->Name("euler_modes/omp")->Apply(sizes)->UseRealTime();
BENCHMARK(cn<Exec::serial>)->Name("cn_modes/serial")->Apply(sizes);
BENCHMARK(cn<Exec::parallel>)->Name("cn_modes/omp")->Apply(sizes)->UseRealTime();
BENCHMARK(factorize<Exec::serial>)->Name("factorize/serial")->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(factorize<Exec::parallel>)->Name("factorize/omp")->Apply(sizes)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(ua2_step_full<Exec::serial>)->Name("ua2_step/serial")->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(ua2_step_full<Exec::parallel>)->Name("ua2_step/omp")->Apply(sizes)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
