#include <doctest.h>

#include "uadirac/error.hpp"
#include "uadirac/toy.hpp"

#include <cmath>
#include <random>

using namespace uadirac;

TEST_CASE("exact solution special cases") {
  const ToyProblem z = make_toy_problem("zero", 1.0, 0.25);
  const TauFunction u_in = [](double tau) { return std::exp(kI * tau) + 0.5; };
  for (double t : {0.0, 0.01, 0.3})
    for (double tau : {0.0, 1.0, 4.0})
      CHECK(std::abs(toy_exact(z, u_in, t, tau) - u_in(tau - t / (0.25 * 0.25))) < 1e-13);

  const ToyProblem c = make_toy_problem("cos", cplx(2.0, 1.0), 0.5);
  CHECK(std::abs(toy_exact(c, u_in, 0.0, 1.3) - u_in(1.3)) < 1e-15);
  const TauFunction flat = [](double) { return cplx(2.0, 1.0); };
  CHECK(std::abs(toy_exact(c, flat, 0.25 * M_PI, M_PI) - cplx(2.0, 1.0)) < 1e-14);
}

TEST_CASE("exact solution solves the toy equation") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.0, 2 * M_PI);
  for (const char* a : {"cos", "sin", "cos2"})
    for (double eps : {1.0, 0.25}) {
      const ToyProblem prob = make_toy_problem(a, 1.0, eps);
      const TauFunction u_in = toy_prepared_initial(prob);
      for (int trial = 0; trial < 5; ++trial) {
        const double t = 0.1 * U(rng), tau = U(rng);
        const double h = 1e-5 * eps * eps;
        const cplx dt = (toy_exact(prob, u_in, t + h, tau) - toy_exact(prob, u_in, t - h, tau)) / (2 * h);
        const cplx dtau = (toy_exact(prob, u_in, t, tau + h) - toy_exact(prob, u_in, t, tau - h)) / (2 * h);
        const cplx u = toy_exact(prob, u_in, t, tau);
        const cplx res = dt + dtau / (eps * eps) + kI * prob.a(tau) * u / eps;
        CHECK(std::abs(res) < 1e-4 / (eps * eps));
        // a phase times a shift
        CHECK(std::abs(std::abs(u) - std::abs(u_in(tau - t / (eps * eps)))) < 1e-13);
      }
    }
}

TEST_CASE("prepared initial data") {
  const ToyProblem p1 = make_toy_problem("sin", cplx(0.5, 2.0), 0.2, 1);
  const TauFunction u1 = toy_prepared_initial(p1);
  for (double tau : {0.3, 2.0}) CHECK(std::abs(u1(tau) - p1.u0 * (1.0 - kI * 0.2 * p1.b(tau))) < 1e-15);
  for (int p : {1, 2, 3}) CHECK(std::abs(toy_prepared_initial(make_toy_problem("cos", 3.0, 0.5, p))(0.0) - 3.0) < 1e-15);
  CHECK(std::abs(toy_unprepared_initial(p1)(1.0) - p1.u0) == 0.0);

  // uniform convergence to u0 as eps -> 0
  double prev = 1e300;
  for (double eps : {0.5, 0.25, 0.125, 0.0625}) {
    const TauFunction u = toy_prepared_initial(make_toy_problem("cos", 1.0, eps, 2));
    double dev = 0.0;
    for (int j = 0; j < 64; ++j) dev = std::max(dev, std::abs(u(2 * M_PI * j / 64) - 1.0));
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 0.07);
}

TEST_CASE("custom coefficient") {
  const ToyProblem custom = make_toy_problem([](double t) { return std::cos(t); }, 1.0, 0.5);
  const ToyProblem builtin = make_toy_problem("cos", 1.0, 0.5);
  for (double tau : {0.0, 1.0, 3.0, 5.5}) CHECK(std::abs(custom.b(tau) - builtin.b(tau)) < 1e-12);
  CHECK_THROWS_AS(make_toy_problem([](double t) { return 1.0 + std::cos(t); }, 1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(make_toy_problem("tan", 1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(make_toy_problem("cos", 1.0, 0.0), ConfigError);
}

TEST_CASE("derivative bounds") {
  for (int p : {1, 2, 3}) {
    const auto rows = toy_derivative_bound(make_toy_problem("cos", 1.0, 1.0, p), true);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      INFO("p = " << p << ", eps = " << rows[i].eps);
      CHECK(rows[i].estimate / rows[i - 1].estimate < 1.5);
    }
  }
  // Unprepared data: d_t u(0) = -i eps^{-1} a(tau) u0, one power of 1/eps per halving.
  const auto un = toy_derivative_bound(make_toy_problem("cos", 1.0, 1.0, 1), false);
  for (std::size_t i = 1; i < un.size(); ++i) CHECK(un[i].estimate / un[i - 1].estimate == doctest::Approx(2.0).epsilon(0.01));
  CHECK(un[0].estimate == doctest::Approx(2.0).epsilon(1e-3));

  for (bool prepared : {true, false})
    for (const auto& r : toy_derivative_bound(make_toy_problem("zero", 1.0, 1.0, 2), prepared)) CHECK(r.estimate == 0.0);

  CHECK_THROWS_AS(toy_derivative_bound(make_toy_problem("cos", 1.0, 1.0, 4), true), ConfigError);
}
