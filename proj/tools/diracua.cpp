// diracua: command-line driver for single runs and the convergence sweeps.
//
//   diracua [global options] <run|sweep-time|sweep-space|limit-rate|toy-check> [options]
//
// Exit status: 0 on success, 2 if some sweep points failed, 1 on a
// configuration error.

#include "uadirac/error.hpp"
#include "uadirac/experiment.hpp"
#include "uadirac/log.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

using namespace uadirac;
namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string example = "I";
  std::string scheme = "ua2";
  std::string prediction = "halfstep";
  std::string correction = "fully-discrete";
  std::string g1 = "printed";
  bool quiet = false;
  double eps = 1.0;
  double dt = 1e-3;
};

CorrectionVariant parse_correction(const std::string& s) {
  if (s == "fully-discrete") return CorrectionVariant::fully_discrete;
  if (s == "semi-discrete") return CorrectionVariant::semi_discrete_printed;
  throw ConfigError("correction: expected 'fully-discrete' or 'semi-discrete', got '" + s + "'");
}

void finish(ExperimentConfig& cfg, const Flags& f) {
  cfg.example = parse_example(f.example);
  cfg.scheme = parse_scheme(f.scheme);
  cfg.prediction = parse_prediction(f.prediction);
  cfg.correction = parse_correction(f.correction);
  cfg.g1 = parse_g1(f.g1);
  validate(cfg);
}

void print_orders(const ErrorReport& r) {
  for (const auto& [eps, order] : r.orders_per_eps())
    std::printf("  eps=%-12g observed order %.3f\n", eps, order);
  if (!r.empty()) std::printf("  uniform (max over eps) order %.3f\n", r.uniform_order());
}

int report_failures(const std::vector<std::string>& failures) {
  for (const auto& f : failures) std::fprintf(stderr, "failed: %s\n", f.c_str());
  return failures.empty() ? 0 : 2;
}

std::string stem(const ExperimentConfig& cfg) {
  return "time_" + example_name(cfg.example) + "_" + scheme_name(cfg.scheme) + "_U" +
         std::to_string(cfg.init_order);
}

void write_fields(const fs::path& path, const SpaceGrid& grid, const SpinorField& phi, const SpinorField& ref) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << "# x re_phi1 im_phi1 re_phi2 im_phi2 re_ref1 im_ref1 re_ref2 im_ref2\n" << std::setprecision(17);
  for (int j = 0; j < grid.size(); ++j)
    out << grid.point(j) << ' ' << phi.c[0][j].real() << ' ' << phi.c[0][j].imag() << ' ' << phi.c[1][j].real()
        << ' ' << phi.c[1][j].imag() << ' ' << ref.c[0][j].real() << ' ' << ref.c[0][j].imag() << ' '
        << ref.c[1][j].real() << ' ' << ref.c[1][j].imag() << '\n';
  if (!out) throw NumericalError("cannot write " + path.string());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniformly accurate two-scale solver for the nonlinear Dirac equation"};
  app.set_config("--config", "", "INI file with option values; [section] names match subcommands");
  app.require_subcommand(1);

  ExperimentConfig cfg;
  Flags f;

  app.add_option("--example", f.example, "Preset: I, II, III or custom")->capture_default_str();
  app.add_option("--scheme", f.scheme, "ua1 or ua2")->capture_default_str();
  app.add_option("--order", cfg.init_order, "Initial-data order 0..5")->capture_default_str();
  app.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
  app.add_flag("--svg", cfg.svg, "Also write SVG plots");
  app.add_option("--ua2-prediction", f.prediction, "halfstep or printed")->capture_default_str();
  app.add_option("--ua2-correction", f.correction, "fully-discrete or semi-discrete")->capture_default_str();
  app.add_option("--g1", f.g1, "printed or dx")->capture_default_str();
  app.add_option("--N", cfg.N, "Spatial grid size")->capture_default_str();
  app.add_option("--Ntau", cfg.Ntau, "Tau grid size")->capture_default_str();
  app.add_option("--T", cfg.T, "Final time")->capture_default_str();
  app.add_option("--a", cfg.a, "Left domain end")->capture_default_str();
  app.add_option("--b", cfg.b, "Right domain end")->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "Coupling constant (custom example)")->capture_default_str();
  app.add_option("--ve", cfg.ve, "Electric potential name (custom example)")->capture_default_str();
  app.add_option("--vm", cfg.vm, "Magnetic potential name (custom example)")->capture_default_str();
  app.add_option("--ref-N", cfg.ref_N, "Reference grid size, 0 = run grid")->capture_default_str();
  app.add_option("--ref-Ntau", cfg.ref_Ntau, "Reference tau grid, 0 = run grid")->capture_default_str();
  app.add_option("--ref-dt", cfg.ref_dt, "Reference time step")->capture_default_str();
  app.add_option("--ref-order", cfg.ref_order, "Reference data order, -1 = automatic")->capture_default_str();
  app.add_option("--cache", cfg.cache_dir, "Reference cache directory ('' disables)")->capture_default_str();
  app.add_flag("--serial-sweep", [&](std::int64_t) { cfg.parallel_sweep = false; },
               "Run sweep points one after another (kernels then use OpenMP)");
  app.add_flag("-q,--quiet", f.quiet, "Suppress warnings");

  auto* run = app.add_subcommand("run", "One propagation compared with the reference");
  run->add_option("--eps", f.eps, "epsilon")->capture_default_str();
  run->add_option("--dt", f.dt, "Time step")->capture_default_str();

  auto* st = app.add_subcommand("sweep-time", "Temporal error over eps x dt");
  st->add_option("--eps-list", cfg.eps_list, "epsilon values")->capture_default_str();
  st->add_option("--dt-list", cfg.dt_list, "dt values")->capture_default_str();

  auto* ss = app.add_subcommand("sweep-space", "Spatial and tau error at a fixed tiny dt");
  ss->add_option("--eps-list", cfg.eps_list, "epsilon values")->capture_default_str();
  ss->add_option("--N-list", cfg.space_N, "N values")->capture_default_str();
  ss->add_option("--Ntau-list", cfg.space_Ntau, "Ntau values")->capture_default_str();
  ss->add_option("--space-ref-N", cfg.space_ref_N, "Finest N")->capture_default_str();
  ss->add_option("--space-ref-Ntau", cfg.space_ref_Ntau, "Finest Ntau")->capture_default_str();
  ss->add_option("--space-dt", cfg.space_dt, "Time step")->capture_default_str();

  auto* lr = app.add_subcommand("limit-rate", "Distance to the limit Schroedinger model over eps");
  lr->add_option("--eps-list", cfg.limit_eps, "epsilon values")->capture_default_str();
  lr->add_option("--limit-dt", cfg.limit_dt, "Splitting step of the limit model")->capture_default_str();

  auto* tc = app.add_subcommand("toy-check", "Derivative bounds of the scalar toy model");
  tc->add_option("--toy-a", cfg.toy_a, "Coefficient: cos, sin, cos2 or zero")->capture_default_str();
  tc->add_option("--toy-p", cfg.toy_p, "Derivative order 1..3")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  set_quiet(f.quiet);

  try {
    finish(cfg, f);

    if (*run) {
      const RunResult r = run_single(cfg, f.eps, f.dt, cfg.N, cfg.Ntau);
      ErrorReport rep;
      rep.add(r.row);
      const fs::path dir(cfg.out_dir);
      rep.write_csv((dir / "run.csv").string());
      write_fields(dir / "run_fields.dat", make_model(cfg, f.eps, cfg.N).grid, r.phi, r.phi_ref);
      std::cout << rep.csv();
      return 0;
    }
    if (*st) {
      const SweepOutcome out = sweep_time(cfg);
      write_time_sweep_outputs(cfg, out.report, stem(cfg));
      std::printf("%s, %s, order %d: %zu rows -> %s\n", example_name(cfg.example).c_str(),
                  scheme_name(cfg.scheme).c_str(), cfg.init_order, out.report.rows().size(), cfg.out_dir.c_str());
      print_orders(out.report);
      return report_failures(out.failures);
    }
    if (*ss) {
      const SpaceSweepOutcome out = sweep_space(cfg);
      write_space_sweep_outputs(cfg, out);
      for (const auto* rep : {&out.n_sweep, &out.ntau_sweep})
        for (const auto& r : rep->rows())
          std::printf("  eps=%-10g N=%-5d Ntau=%-4d err=%.3e\n", r.eps, r.N, r.Ntau, r.err_linf);
      return report_failures(out.failures);
    }
    if (*lr) {
      const LimitCompareResult res = limit_rate(cfg);
      write_limit_outputs(cfg, res);
      for (const auto& r : res.rows) std::printf("  eps=%-10g err=%.3e\n", r.eps, r.err_linf);
      std::printf("  slope %.3f\n", res.slope);
      return 0;
    }
    if (*tc) {
      const ToyCheck res = toy_check(cfg);
      write_toy_outputs(cfg, res);
      std::printf("  %-10s %-14s %-14s\n", "eps", "prepared", "unprepared");
      for (std::size_t i = 0; i < res.prepared.size(); ++i)
        std::printf("  %-10g %-14.6e %-14.6e\n", res.prepared[i].eps, res.prepared[i].estimate,
                    res.unprepared[i].estimate);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
