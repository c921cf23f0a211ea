#pragma once

// Experiment orchestration: the three example presets, single runs against a
// reference solution, and the time/space/limit/toy sweeps behind the CLI.

#include "uadirac/diagnostics.hpp"
#include "uadirac/limit.hpp"
#include "uadirac/steppers.hpp"
#include "uadirac/toy.hpp"

#include <string>
#include <vector>

namespace uadirac {

enum class Example { I, II, III, custom };

Example parse_example(const std::string& s);
std::string example_name(Example e);
Scheme parse_scheme(const std::string& s);
std::string scheme_name(Scheme s);
PredictionVariant parse_prediction(const std::string& s);
G1Variant parse_g1(const std::string& s);

struct ExperimentConfig {
  Example example = Example::I;
  Scheme scheme = Scheme::ua2;
  int init_order = 5;
  std::vector<double> eps_list{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};
  std::vector<double> dt_list{0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125, 0.0015625, 0.00078125};
  int N = 128;
  int Ntau = 32;
  double T = 0.5;
  double a = -8.0;
  double b = 8.0;

  // Custom example only (presets fix these).
  double lambda = 0.5;
  std::string ve = "preset-electric";
  std::string vm = "zero";

  PredictionVariant prediction = PredictionVariant::half_step;
  CorrectionVariant correction = CorrectionVariant::fully_discrete;
  G1Variant g1 = G1Variant::printed;

  /// Reference resolution (dx = 1/64 on the default domain); N = 0 and
  /// Ntau = 0 mean "same as the run".
  int ref_N = 1024;
  int ref_Ntau = 64;
  double ref_dt = 1e-5;
  int ref_order = -1; // -1: automatic, see ReferenceSettings
  std::string cache_dir = "cache";

  /// Space sweep: N values at Ntau = space_ref_Ntau, Ntau values at
  /// N = space_ref_N, all against UA2 at (space_ref_N, space_ref_Ntau).
  std::vector<int> space_N{8, 16, 32, 64};
  std::vector<int> space_Ntau{4, 8, 16, 32};
  int space_ref_N = 128;
  int space_ref_Ntau = 64;
  double space_dt = 1e-4;

  /// Limit-model comparison.
  std::vector<double> limit_eps{0.25, 0.125, 0.0625, 0.03125, 0.015625};
  double limit_dt = 1e-3;

  /// Toy model.
  std::string toy_a = "cos";
  int toy_p = 1;

  std::string out_dir = "out";
  bool svg = false;
  /// Conservation probe every this many steps.
  long probe_every = 1;
  /// Run sweep points concurrently (kernels then run serially inside).
  bool parallel_sweep = true;
};

/// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& cfg);

/// Phi_0 of all presets: (e^{-x^2}/sqrt 2, e^{-sqrt 2 x^2}).
SpinorProfile preset_profile();
DiracModel make_model(const ExperimentConfig& cfg, double eps, int N);
ReferenceSettings reference_settings(const ExperimentConfig& cfg, int run_Ntau);

struct RunResult {
  ErrorRow row;
  SpinorField phi;
  SpinorField phi_ref;
};

/// One propagation at (eps, dt, N, Ntau) with the configured scheme and
/// initial-data order, compared with the reference at T.
RunResult run_single(const ExperimentConfig& cfg, double eps, double dt, int N, int Ntau, Exec exec = Exec::parallel);

struct SweepOutcome {
  ErrorReport report;
  std::vector<std::string> failures;
};

/// eps_list x dt_list at (N, Ntau).
SweepOutcome sweep_time(const ExperimentConfig& cfg);

struct SpaceSweepOutcome {
  ErrorReport n_sweep;
  ErrorReport ntau_sweep;
  std::vector<std::string> failures;
};

/// For every eps: vary N (Ntau = space_ref_Ntau) and Ntau (N = space_ref_N)
/// at dt = space_dt with UA2 + order 5; errors against the finest grid.
SpaceSweepOutcome sweep_space(const ExperimentConfig& cfg);

/// Example-preset limit comparison over limit_eps.
LimitCompareResult limit_rate(const ExperimentConfig& cfg);

struct ToyCheck {
  std::vector<ToyDerivativeRow> prepared;
  std::vector<ToyDerivativeRow> unprepared;
};
ToyCheck toy_check(const ExperimentConfig& cfg);

// --- output --------------------------------------------------------------------

/// One "x y" data file per curve plus an optional SVG in out_dir.
void write_time_sweep_outputs(const ExperimentConfig& cfg, const ErrorReport& report, const std::string& stem);
void write_space_sweep_outputs(const ExperimentConfig& cfg, const SpaceSweepOutcome& out);
void write_limit_outputs(const ExperimentConfig& cfg, const LimitCompareResult& res);
void write_toy_outputs(const ExperimentConfig& cfg, const ToyCheck& res);

} // namespace uadirac
