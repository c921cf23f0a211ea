#include "uadirac/experiment.hpp"
#include "uadirac/error.hpp"
#include "uadirac/svg_plot.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace uadirac {

namespace fs = std::filesystem;

// --- names ---------------------------------------------------------------------

Example parse_example(const std::string& s) {
  if (s == "I" || s == "1") return Example::I;
  if (s == "II" || s == "2") return Example::II;
  if (s == "III" || s == "3") return Example::III;
  if (s == "custom") return Example::custom;
  throw ConfigError("example: expected I, II, III or custom, got '" + s + "'");
}

std::string example_name(Example e) {
  switch (e) {
  case Example::I: return "I";
  case Example::II: return "II";
  case Example::III: return "III";
  default: return "custom";
  }
}

Scheme parse_scheme(const std::string& s) {
  if (s == "ua1") return Scheme::ua1;
  if (s == "ua2") return Scheme::ua2;
  throw ConfigError("scheme: expected ua1 or ua2, got '" + s + "'");
}

std::string scheme_name(Scheme s) { return s == Scheme::ua1 ? "ua1" : "ua2"; }

PredictionVariant parse_prediction(const std::string& s) {
  if (s == "halfstep" || s == "half_step") return PredictionVariant::half_step;
  if (s == "printed") return PredictionVariant::printed;
  throw ConfigError("ua2-prediction: expected halfstep or printed, got '" + s + "'");
}

G1Variant parse_g1(const std::string& s) {
  if (s == "printed") return G1Variant::printed;
  if (s == "dx") return G1Variant::dx;
  throw ConfigError("g1: expected printed or dx, got '" + s + "'");
}

// --- configuration -----------------------------------------------------------

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field + ": " + what);
}

bool even_at_least_4(int n) { return n >= 4 && n % 2 == 0; }

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

} // namespace

void validate(const ExperimentConfig& cfg) {
  require(cfg.init_order >= 0 && cfg.init_order <= 5, "order", "must lie in 0...5");
  require(!cfg.eps_list.empty(), "epsilon", "list is empty");
  for (double e : cfg.eps_list) require(e > 0.0 && e <= 1.0, "epsilon", "values must lie in (0, 1]");
  require(!cfg.dt_list.empty(), "dt", "list is empty");
  for (double d : cfg.dt_list) require(d > 0.0 && std::isfinite(d), "dt", "values must be positive");
  require(even_at_least_4(cfg.N), "N", "must be even and >= 4");
  require(even_at_least_4(cfg.Ntau), "Ntau", "must be even and >= 4");
  require(cfg.T >= 0.0 && std::isfinite(cfg.T), "T", "must be nonnegative");
  require(cfg.b > cfg.a, "domain", "need a < b");
  require(std::isfinite(cfg.lambda), "lambda", "must be finite");
  if (cfg.example == Example::custom) {
    potentials::by_name(cfg.ve);
    potentials::by_name(cfg.vm);
  }
  require(cfg.ref_N == 0 || (even_at_least_4(cfg.ref_N) && cfg.ref_N % cfg.N == 0), "ref_N",
          "must be 0 or a multiple of N");
  require(cfg.ref_Ntau == 0 || even_at_least_4(cfg.ref_Ntau), "ref_Ntau", "must be 0 or even and >= 4");
  require(cfg.ref_dt > 0.0, "ref_dt", "must be positive");
  require(cfg.ref_order >= -1 && cfg.ref_order <= 5, "ref_order", "must be -1 (automatic) or lie in 0...5");
  require(!cfg.space_N.empty() && !cfg.space_Ntau.empty(), "space", "N and Ntau lists must be nonempty");
  require(even_at_least_4(cfg.space_ref_N), "space_ref_N", "must be even and >= 4");
  require(even_at_least_4(cfg.space_ref_Ntau), "space_ref_Ntau", "must be even and >= 4");
  for (int n : cfg.space_N)
    require(even_at_least_4(n) && cfg.space_ref_N % n == 0, "space_N", "values must divide space_ref_N");
  for (int n : cfg.space_Ntau) require(even_at_least_4(n), "space_Ntau", "values must be even and >= 4");
  require(cfg.space_dt > 0.0, "space_dt", "must be positive");
  require(!cfg.limit_eps.empty(), "limit_eps", "list is empty");
  for (double e : cfg.limit_eps) require(e > 0.0 && e <= 1.0, "limit_eps", "values must lie in (0, 1]");
  require(cfg.limit_dt > 0.0, "limit_dt", "must be positive");
  require(cfg.toy_p >= 1 && cfg.toy_p <= 3, "toy_p", "must lie in 1...3");
  make_toy_problem(cfg.toy_a, 1.0, 1.0, cfg.toy_p);
  require(cfg.probe_every >= 1, "probe_every", "must be >= 1");
}

SpinorProfile preset_profile() {
  return [](double x) {
    return std::array<cplx, 2>{std::exp(-x * x) / std::sqrt(2.0), std::exp(-std::sqrt(2.0) * x * x)};
  };
}

DiracModel make_model(const ExperimentConfig& cfg, double eps, int N) {
  const SpaceGrid grid(cfg.a, cfg.b, N);
  switch (cfg.example) {
  case Example::I: return DiracModel(eps, 0.5, potentials::preset_electric(), potentials::zero(), grid);
  case Example::II:
    return DiracModel(eps, 0.0, potentials::preset_electric(), potentials::preset_magnetic(), grid);
  case Example::III:
    return DiracModel(eps, 0.5, potentials::preset_electric(), potentials::preset_magnetic(), grid);
  default:
    return DiracModel(eps, cfg.lambda, potentials::by_name(cfg.ve), potentials::by_name(cfg.vm), grid);
  }
}

ReferenceSettings reference_settings(const ExperimentConfig& cfg, int run_Ntau) {
  ReferenceSettings rs;
  rs.N = cfg.ref_N;
  rs.Ntau = cfg.ref_Ntau == 0 ? run_Ntau : cfg.ref_Ntau;
  rs.dt = cfg.ref_dt;
  rs.order = cfg.ref_order;
  rs.g1 = cfg.g1;
  rs.stepper.prediction = cfg.prediction;
  rs.stepper.correction = cfg.correction;
  rs.cache_dir = cfg.cache_dir;
  return rs;
}

// --- runs ----------------------------------------------------------------------

namespace {

struct Trajectory {
  SpinorField phi;
  double mass_drift = 0.0;
  double energy_drift = 0.0;
  double runtime_s = 0.0;
};

Trajectory integrate(const ExperimentConfig& cfg, const DiracModel& m, const SpinorField& phi0, int Ntau,
                     Scheme scheme, int order, double dt, Exec exec) {
  ConservationProbe probe(m);
  PropagateOptions po;
  po.g1 = cfg.g1;
  po.stepper.prediction = cfg.prediction;
  po.stepper.correction = cfg.correction;
  po.stepper.exec = exec;
  po.hook_every = cfg.probe_every;
  po.hook = [&](const TwoScaleState& s) { probe.record(reconstruct_phi(s, m.eps)); };
  const auto start = std::chrono::steady_clock::now();
  const TwoScaleState s = propagate(m, phi0, TauGrid(Ntau), order, scheme, dt, cfg.T, po);
  Trajectory tr;
  tr.phi = reconstruct_phi(s, m.eps);
  tr.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  tr.mass_drift = probe.mass_drift();
  tr.energy_drift = probe.energy_drift();
  return tr;
}

ErrorRow make_row(const std::string& scheme, int order, double eps, double dt, int N, int Ntau,
                  const Trajectory& tr, const SpinorField& ref, const SpaceGrid& grid) {
  ErrorRow row;
  row.scheme = scheme;
  row.init_order = order;
  row.eps = eps;
  row.dt = dt;
  row.N = N;
  row.Ntau = Ntau;
  row.err_linf = linf_error(ref, tr.phi);
  row.err_l2 = l2_error(ref, tr.phi, grid);
  row.mass_drift = tr.mass_drift;
  row.energy_drift = tr.energy_drift;
  row.runtime_s = tr.runtime_s;
  return row;
}

// Evaluate fn(i) for i < n, concurrently when requested; exceptions are
// returned per index.
template <class Fn>
std::vector<std::optional<std::string>> for_each_point(int n, bool parallel, Fn&& fn) {
  std::vector<std::optional<std::string>> errors(static_cast<std::size_t>(n));
  auto body = [&](int i) {
    try {
      fn(i);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  };
  if (parallel) {
    std::optional<std::string> config_error;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (const ConfigError& e) {
#pragma omp critical
        config_error = e.what();
      }
    }
    if (config_error) throw ConfigError(*config_error);
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
  return errors;
}

} // namespace

RunResult run_single(const ExperimentConfig& cfg, double eps, double dt, int N, int Ntau, Exec exec) {
  validate(cfg);
  const DiracModel m = make_model(cfg, eps, N);
  const SpinorField phi0 = sample_profile(preset_profile(), m.grid);
  const Trajectory tr = integrate(cfg, m, phi0, Ntau, cfg.scheme, cfg.init_order, dt, exec);
  RunResult res;
  res.phi_ref = reference_solution(m, preset_profile(), cfg.T, reference_settings(cfg, Ntau));
  res.row = make_row(scheme_name(cfg.scheme), cfg.init_order, eps, dt, N, Ntau, tr, res.phi_ref, m.grid);
  res.phi = tr.phi;
  return res;
}

SweepOutcome sweep_time(const ExperimentConfig& cfg) {
  validate(cfg);
  const Exec inner = cfg.parallel_sweep ? Exec::serial : Exec::parallel;
  const int ne = static_cast<int>(cfg.eps_list.size());
  const int nd = static_cast<int>(cfg.dt_list.size());

  // References first, one per eps, so the runs below only read the cache.
  std::vector<SpinorField> refs(static_cast<std::size_t>(ne));
  const auto ref_errors = for_each_point(ne, cfg.parallel_sweep, [&](int i) {
    const double eps = cfg.eps_list[static_cast<std::size_t>(i)];
    auto rs = reference_settings(cfg, cfg.Ntau);
    rs.stepper.exec = inner;
    refs[static_cast<std::size_t>(i)] = reference_solution(make_model(cfg, eps, cfg.N), preset_profile(), cfg.T, rs);
  });

  std::vector<std::optional<ErrorRow>> rows(static_cast<std::size_t>(ne * nd));
  const auto run_errors = for_each_point(ne * nd, cfg.parallel_sweep, [&](int k) {
    const int i = k / nd, j = k % nd;
    if (ref_errors[static_cast<std::size_t>(i)]) return;
    const double eps = cfg.eps_list[static_cast<std::size_t>(i)];
    const double dt = cfg.dt_list[static_cast<std::size_t>(j)];
    const DiracModel m = make_model(cfg, eps, cfg.N);
    const SpinorField phi0 = sample_profile(preset_profile(), m.grid);
    const Trajectory tr = integrate(cfg, m, phi0, cfg.Ntau, cfg.scheme, cfg.init_order, dt, inner);
    rows[static_cast<std::size_t>(k)] = make_row(scheme_name(cfg.scheme), cfg.init_order, eps, dt, cfg.N, cfg.Ntau,
                                                 tr, refs[static_cast<std::size_t>(i)], m.grid);
  });

  SweepOutcome out;
  for (int k = 0; k < ne * nd; ++k) {
    const int i = k / nd, j = k % nd;
    const double eps = cfg.eps_list[static_cast<std::size_t>(i)];
    const double dt = cfg.dt_list[static_cast<std::size_t>(j)];
    if (const auto& e = ref_errors[static_cast<std::size_t>(i)]) {
      out.failures.push_back("eps=" + fmt(eps) + " dt=" + fmt(dt) + ": reference failed: " + *e);
    } else if (const auto& e2 = run_errors[static_cast<std::size_t>(k)]) {
      out.failures.push_back("eps=" + fmt(eps) + " dt=" + fmt(dt) + ": " + *e2);
    } else {
      out.report.add(*rows[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

SpaceSweepOutcome sweep_space(const ExperimentConfig& cfg) {
  validate(cfg);
  const Exec inner = cfg.parallel_sweep ? Exec::serial : Exec::parallel;
  const int ne = static_cast<int>(cfg.eps_list.size());

  ReferenceSettings rs;
  rs.N = cfg.space_ref_N;
  rs.Ntau = cfg.space_ref_Ntau;
  rs.dt = cfg.space_dt;
  rs.order = 5; // same data as the runs, so the temporal error cancels
  rs.g1 = cfg.g1;
  rs.stepper.prediction = cfg.prediction;
  rs.stepper.correction = cfg.correction;
  rs.stepper.exec = inner;
  rs.cache_dir = cfg.cache_dir;

  std::vector<SpinorField> refs(static_cast<std::size_t>(ne));
  const auto ref_errors = for_each_point(ne, cfg.parallel_sweep, [&](int i) {
    const double eps = cfg.eps_list[static_cast<std::size_t>(i)];
    refs[static_cast<std::size_t>(i)] =
        reference_solution(make_model(cfg, eps, cfg.space_ref_N), preset_profile(), cfg.T, rs);
  });

  struct Point {
    int eps_index;
    int N;
    int Ntau;
    bool n_sweep;
  };
  std::vector<Point> points;
  for (int i = 0; i < ne; ++i) {
    for (int n : cfg.space_N) points.push_back({i, n, cfg.space_ref_Ntau, true});
    for (int nt : cfg.space_Ntau) points.push_back({i, cfg.space_ref_N, nt, false});
  }
  const int np = static_cast<int>(points.size());
  std::vector<std::optional<ErrorRow>> rows(static_cast<std::size_t>(np));
  const auto run_errors = for_each_point(np, cfg.parallel_sweep, [&](int k) {
    const Point& p = points[static_cast<std::size_t>(k)];
    if (ref_errors[static_cast<std::size_t>(p.eps_index)]) return;
    const double eps = cfg.eps_list[static_cast<std::size_t>(p.eps_index)];
    const DiracModel m = make_model(cfg, eps, p.N);
    const SpinorField phi0 = sample_profile(preset_profile(), m.grid);
    const Trajectory tr = integrate(cfg, m, phi0, p.Ntau, Scheme::ua2, 5, cfg.space_dt, inner);
    const SpinorField& full = refs[static_cast<std::size_t>(p.eps_index)];
    const int stride = cfg.space_ref_N / p.N;
    SpinorField ref(p.N);
    for (int j = 0; j < p.N; ++j)
      for (int c = 0; c < 2; ++c) ref.c[c][j] = full.c[c][j * stride];
    rows[static_cast<std::size_t>(k)] = make_row("ua2", 5, eps, cfg.space_dt, p.N, p.Ntau, tr, ref, m.grid);
  });

  SpaceSweepOutcome out;
  for (int k = 0; k < np; ++k) {
    const Point& p = points[static_cast<std::size_t>(k)];
    const double eps = cfg.eps_list[static_cast<std::size_t>(p.eps_index)];
    if (const auto& e = ref_errors[static_cast<std::size_t>(p.eps_index)]) {
      out.failures.push_back("eps=" + fmt(eps) + ": reference failed: " + *e);
    } else if (const auto& e2 = run_errors[static_cast<std::size_t>(k)]) {
      out.failures.push_back("eps=" + fmt(eps) + " N=" + std::to_string(p.N) + " Ntau=" + std::to_string(p.Ntau) +
                             ": " + *e2);
    } else {
      (p.n_sweep ? out.n_sweep : out.ntau_sweep).add(*rows[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

LimitCompareResult limit_rate(const ExperimentConfig& cfg) {
  validate(cfg);
  const Exec inner = cfg.parallel_sweep ? Exec::serial : Exec::parallel;
  const int ne = static_cast<int>(cfg.limit_eps.size());
  std::vector<SpinorField> refs(static_cast<std::size_t>(ne));
  const auto errors = for_each_point(ne, cfg.parallel_sweep, [&](int i) {
    const double eps = cfg.limit_eps[static_cast<std::size_t>(i)];
    auto rs = reference_settings(cfg, cfg.Ntau);
    rs.stepper.exec = inner;
    refs[static_cast<std::size_t>(i)] = reference_solution(make_model(cfg, eps, cfg.N), preset_profile(), cfg.T, rs);
  });
  for (int i = 0; i < ne; ++i)
    if (const auto& e = errors[static_cast<std::size_t>(i)])
      throw NumericalError("limit-rate: reference for eps=" + fmt(cfg.limit_eps[static_cast<std::size_t>(i)]) +
                           " failed: " + *e);
  const DiracModel base = make_model(cfg, 1.0, cfg.N);
  const SpinorField phi0 = sample_profile(preset_profile(), base.grid);
  return limit_compare(base, phi0, cfg.limit_eps, cfg.T, cfg.limit_dt, [&](double eps) {
    for (int i = 0; i < ne; ++i)
      if (cfg.limit_eps[static_cast<std::size_t>(i)] == eps) return refs[static_cast<std::size_t>(i)];
    throw ConfigError("limit-rate: no reference for eps=" + fmt(eps));
  });
}

ToyCheck toy_check(const ExperimentConfig& cfg) {
  validate(cfg);
  const ToyProblem prob = make_toy_problem(cfg.toy_a, 1.0, 1.0, cfg.toy_p);
  return {toy_derivative_bound(prob, true), toy_derivative_bound(prob, false)};
}

// --- output --------------------------------------------------------------------

namespace {

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << text;
  if (!out) throw NumericalError("cannot write " + path.string());
}

} // namespace

void write_time_sweep_outputs(const ExperimentConfig& cfg, const ErrorReport& report, const std::string& stem) {
  const fs::path dir(cfg.out_dir);
  report.write_csv((dir / (stem + ".csv")).string());
  std::map<double, Curve> by_eps;
  for (const auto& r : report.rows()) {
    auto& c = by_eps[r.eps];
    c.label = "eps=" + fmt(r.eps);
    c.x.push_back(r.dt);
    c.y.push_back(r.err_linf);
  }
  std::vector<Curve> curves;
  for (auto it = by_eps.rbegin(); it != by_eps.rend(); ++it) {
    std::ostringstream os;
    os << "# dt err_linf\n" << std::setprecision(17);
    for (std::size_t i = 0; i < it->second.x.size(); ++i) os << it->second.x[i] << ' ' << it->second.y[i] << '\n';
    write_text(dir / (stem + "_eps" + fmt(it->first) + ".dat"), os.str());
    curves.push_back(it->second);
  }
  Curve uniform{"max over eps", {}, {}};
  std::ostringstream os;
  os << "# dt max_eps_err_linf\n" << std::setprecision(17);
  for (const auto& [dt, err] : report.uniform_error()) {
    os << dt << ' ' << err << '\n';
    uniform.x.push_back(dt);
    uniform.y.push_back(err);
  }
  write_text(dir / (stem + "_uniform.dat"), os.str());
  curves.push_back(uniform);
  if (cfg.svg)
    write_loglog_svg((dir / (stem + ".svg")).string(),
                     "Temporal error, " + scheme_name(cfg.scheme) + ", order " + std::to_string(cfg.init_order) +
                         ", example " + example_name(cfg.example),
                     "dt", "error", curves);
}

void write_space_sweep_outputs(const ExperimentConfig& cfg, const SpaceSweepOutcome& out) {
  const fs::path dir(cfg.out_dir);
  out.n_sweep.write_csv((dir / "space_N.csv").string());
  out.ntau_sweep.write_csv((dir / "space_Ntau.csv").string());
  for (int which = 0; which < 2; ++which) {
    const ErrorReport& rep = which == 0 ? out.n_sweep : out.ntau_sweep;
    const std::string name = which == 0 ? "space_N" : "space_Ntau";
    std::map<double, Curve> by_eps;
    for (const auto& r : rep.rows()) {
      auto& c = by_eps[r.eps];
      c.label = "eps=" + fmt(r.eps);
      c.x.push_back(which == 0 ? r.N : r.Ntau);
      c.y.push_back(r.err_linf);
    }
    std::vector<Curve> curves;
    for (auto it = by_eps.rbegin(); it != by_eps.rend(); ++it) {
      std::ostringstream os;
      os << (which == 0 ? "# N err_linf\n" : "# Ntau err_linf\n") << std::setprecision(17);
      for (std::size_t i = 0; i < it->second.x.size(); ++i) os << it->second.x[i] << ' ' << it->second.y[i] << '\n';
      write_text(dir / (name + "_eps" + fmt(it->first) + ".dat"), os.str());
      curves.push_back(it->second);
    }
    if (cfg.svg)
      write_loglog_svg((dir / (name + ".svg")).string(), "Spatial error, UA2, example " + example_name(cfg.example),
                       which == 0 ? "N" : "Ntau", "error", curves);
  }
}

void write_limit_outputs(const ExperimentConfig& cfg, const LimitCompareResult& res) {
  const fs::path dir(cfg.out_dir);
  std::ostringstream csv, dat;
  csv << "epsilon,err_linf\n" << std::setprecision(17);
  dat << "# eps err_linf\n" << std::setprecision(17);
  Curve c{"limit model", {}, {}};
  for (const auto& r : res.rows) {
    csv << r.eps << ',' << r.err_linf << '\n';
    dat << r.eps << ' ' << r.err_linf << '\n';
    c.x.push_back(r.eps);
    c.y.push_back(r.err_linf);
  }
  write_text(dir / "limit_rate.csv", csv.str());
  write_text(dir / "limit_rate.dat", dat.str());
  if (cfg.svg)
    write_loglog_svg((dir / "limit_rate.svg").string(), "Dirac vs limit model, example " + example_name(cfg.example),
                     "eps", "error", {c});
}

void write_toy_outputs(const ExperimentConfig& cfg, const ToyCheck& res) {
  const fs::path dir(cfg.out_dir);
  std::ostringstream csv;
  csv << "epsilon,prepared,unprepared\n" << std::setprecision(17);
  Curve prep{"prepared", {}, {}}, unprep{"unprepared", {}, {}};
  for (std::size_t i = 0; i < res.prepared.size(); ++i) {
    csv << res.prepared[i].eps << ',' << res.prepared[i].estimate << ',' << res.unprepared[i].estimate << '\n';
    prep.x.push_back(res.prepared[i].eps);
    prep.y.push_back(res.prepared[i].estimate);
    unprep.x.push_back(res.unprepared[i].eps);
    unprep.y.push_back(res.unprepared[i].estimate);
  }
  write_text(dir / "toy_check.csv", csv.str());
  if (cfg.svg)
    write_loglog_svg((dir / "toy_check.svg").string(),
                     "Toy model, max |d_t^" + std::to_string(cfg.toy_p) + " u(0)|", "eps", "estimate",
                     {prep, unprep});
}

} // namespace uadirac
