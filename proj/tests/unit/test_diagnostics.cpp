#include <doctest.h>

#include "support.hpp"
#include "uadirac/diagnostics.hpp"
#include "uadirac/error.hpp"

#include <filesystem>
#include <fstream>

using namespace uadirac;
using namespace uadirac::test;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("uadirac-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ErrorRow row(double eps, double dt, double err, const std::string& scheme = "ua2") {
  ErrorRow r;
  r.scheme = scheme;
  r.init_order = 5;
  r.eps = eps;
  r.dt = dt;
  r.N = 128;
  r.Ntau = 32;
  r.err_linf = err;
  r.err_l2 = err;
  return r;
}

} // namespace

TEST_CASE("l-infinity error") {
  std::mt19937_64 rng(1);
  const SpinorField a = random_spinor(16, rng);
  CHECK(linf_error(a, a) == 0.0);
  const cplx d(0.3, -0.4);
  SpinorField b = a;
  b.c[0].array() += d;
  CHECK(linf_error(a, b) == doctest::Approx(0.5));
  b.c[1].array() += d;
  CHECK(linf_error(a, b) == doctest::Approx(1.0));

  // a metric on a common grid
  const SpinorField c = random_spinor(16, rng);
  CHECK(linf_error(a, c) == linf_error(c, a));
  CHECK(linf_error(a, c) <= linf_error(a, b) + linf_error(b, c) + 1e-15);
  CHECK_THROWS_AS(linf_error(a, SpinorField(8)), ConfigError);

  const SpaceGrid g(-8, 8, 16);
  CHECK(l2_error(a, a, g) == 0.0);
  SpinorField e = a;
  e.c[0].array() += 1.0;
  CHECK(l2_error(a, e, g) == doctest::Approx(4.0));
}

TEST_CASE("observed order") {
  CHECK(observed_order({1e-2, 2.5e-3}, {0.1, 0.05}) == doctest::Approx(2.0));
  CHECK(observed_order({1e-2, 5e-3}, {0.1, 0.05}) == doctest::Approx(1.0));
  std::vector<double> e, d;
  for (int j = 0; j < 6; ++j) {
    d.push_back(0.1 * std::pow(0.5, j));
    e.push_back(3.0 * std::pow(d.back(), 1.5));
  }
  CHECK(std::abs(observed_order(e, d) - 1.5) < 1e-12);
  // nonpositive entries are skipped
  CHECK(observed_order({0.0, 1e-2, 2.5e-3}, {0.2, 0.1, 0.05}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(observed_order({0.0, 0.0, 1e-3}, {0.2, 0.1, 0.05}), NumericalError);
  CHECK_THROWS_AS(observed_order({1e-2, 1e-3}, {0.05, 0.1}), ConfigError);
  CHECK_THROWS_AS(loglog_slope({1.0}, {1.0, 2.0}), ConfigError);
}

TEST_CASE("conservation probe") {
  const DiracModel m = preset_model(Example::I, 0.5, 64);
  const SpinorField phi0 = preset_phi0(m.grid);
  ConservationProbe p(m);
  for (int k = 0; k < 3; ++k) p.record(phi0);
  CHECK(p.size() == 3);
  CHECK(conservation_drift(p).mass == 0.0);
  CHECK(conservation_drift(p).energy == 0.0);
  p.record(cplx(std::sqrt(1.01)) * phi0);
  CHECK(p.mass_drift() == doctest::Approx(0.01));

  const DiracModel td(0.5, 0.5, potentials::linear_in_time(), potentials::zero(), m.grid);
  ConservationProbe q(td);
  q.record(phi0);
  q.record(phi0);
  CHECK(std::isnan(q.energy_drift()));
  CHECK(q.mass_drift() == 0.0);
}

TEST_CASE("field cache round trip") {
  const fs::path dir = scratch_dir("cache");
  std::mt19937_64 rng(3);
  const SpinorField a = random_spinor(64, rng);
  write_field_cache(dir.string(), "key-a", a);
  SpinorField b;
  REQUIRE(read_field_cache(dir.string(), "key-a", b));
  CHECK(max_abs(a - b) == 0.0);
  CHECK_FALSE(read_field_cache(dir.string(), "key-b", b));

  // truncate the binary: the entry is rejected
  const fs::path bin = dir / (hash_hex("key-a") + ".bin");
  REQUIRE(fs::exists(bin));
  fs::resize_file(bin, fs::file_size(bin) / 2);
  CHECK_FALSE(read_field_cache(dir.string(), "key-a", b));

  // flip bytes without changing the size
  write_field_cache(dir.string(), "key-a", a);
  {
    std::fstream f(bin, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40);
    f.write("garbage!", 8);
  }
  CHECK_FALSE(read_field_cache(dir.string(), "key-a", b));
  fs::remove_all(dir);
}

TEST_CASE("reference solutions") {
  const DiracModel m = preset_model(Example::III, 0.5, 32);
  ReferenceSettings rs;
  rs.Ntau = 16;
  rs.dt = 1e-3;
  const SpinorField phi0 = preset_phi0(m.grid);
  CHECK(max_abs(reference_solution(m, preset_profile(), 0.0, rs) - phi0) < 1e-14);

  CHECK(reference_order(rs, 1.0) == 3);
  CHECK(reference_order(rs, 0.5) == 5);
  rs.order = 1;
  CHECK(reference_order(rs, 0.5) == 1);
  rs.order = -1;

  // Richardson consistency at the default reference step
  {
    ReferenceSettings fine_dt = rs;
    fine_dt.dt = 1e-5;
    ReferenceSettings half_dt = fine_dt;
    half_dt.dt = fine_dt.dt / 2;
    const SpinorField a = reference_solution(m, preset_profile(), 0.02, fine_dt);
    const SpinorField b = reference_solution(m, preset_profile(), 0.02, half_dt);
    CHECK(linf_error(a, b) < 4 * fine_dt.dt * fine_dt.dt);
  }
  const SpinorField r1 = reference_solution(m, preset_profile(), 0.1, rs);
  ReferenceSettings half = rs;
  half.dt = rs.dt / 2;

  // finer reference grid subsampled onto the run grid
  ReferenceSettings fine = rs;
  fine.N = 64;
  CHECK(reference_solution(m, preset_profile(), 0.1, fine).size() == 32);
  fine.N = 48;
  CHECK_THROWS_AS(reference_solution(m, preset_profile(), 0.1, fine), ConfigError);

  // the cache is used and keyed on the settings
  const fs::path dir = scratch_dir("ref");
  rs.cache_dir = dir.string();
  const SpinorField c1 = reference_solution(m, preset_profile(), 0.1, rs);
  const SpinorField c2 = reference_solution(m, preset_profile(), 0.1, rs);
  CHECK(max_abs(c1 - r1) == 0.0);
  CHECK(max_abs(c2 - r1) == 0.0);
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 2);
  CHECK(reference_key(m, phi0, 0.1, rs) != reference_key(m, phi0, 0.1, half));
  CHECK(reference_key(m, phi0, 0.1, rs) != reference_key(preset_model(Example::III, 0.25, 32), phi0, 0.1, rs));
  fs::remove_all(dir);
}

TEST_CASE("error report") {
  ErrorReport r;
  r.add(row(0.5, 0.1, 1e-2));
  r.add(row(1.0, 0.05, 4e-3));
  r.add(row(0.5, 0.05, 2.5e-3));
  r.add(row(1.0, 0.1, 1.6e-2));
  CHECK_THROWS_AS(r.add(row(0.5, 0.1, 3.0)), ConfigError);
  CHECK_THROWS_AS(r.add(row(0.25, 0.1, -1.0)), ConfigError);

  // sorted by key
  REQUIRE(r.rows().size() == 4);
  CHECK(r.rows()[0].eps == 0.5);
  CHECK(r.rows()[0].dt == 0.05);
  CHECK(r.rows()[3].eps == 1.0);
  CHECK(r.rows()[3].dt == 0.1);

  const auto orders = r.orders_per_eps();
  CHECK(orders.at(0.5) == doctest::Approx(2.0));
  CHECK(orders.at(1.0) == doctest::Approx(2.0));
  CHECK(r.uniform_error().at(0.1) == 1.6e-2);
  CHECK(r.uniform_order() == doctest::Approx(2.0));
  CHECK(r.errors_at_dt(0.05).at(1.0) == 4e-3);

  // the uniform error can only grow when eps values are added
  ErrorReport s = r;
  s.add(row(0.25, 0.1, 5e-2));
  s.add(row(0.25, 0.05, 1e-3));
  for (const auto& [dt, e] : r.uniform_error()) CHECK(s.uniform_error().at(dt) >= e);

  CHECK(std::string(ErrorReport::csv_header()) ==
        "scheme,init_order,epsilon,dt,N,Ntau,err_linf,err_l2,mass_drift,energy_drift,runtime_s");
  const std::string csv = r.csv();
  CHECK(csv.rfind(ErrorReport::csv_header(), 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  const fs::path dir = scratch_dir("csv");
  r.write_csv((dir / "sub" / "r.csv").string());
  std::ifstream in(dir / "sub" / "r.csv");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == csv);
  fs::remove_all(dir);
}
