#pragma once

// Error norms, observed orders, conservation probes, the reference-solution
// protocol and the sweep report.

#include "uadirac/fields.hpp"
#include "uadirac/initdata.hpp"
#include "uadirac/model.hpp"
#include "uadirac/steppers.hpp"

#include <map>
#include <string>
#include <vector>

namespace uadirac {

/// max_j |phi1_ref - phi1_num| + max_j |phi2_ref - phi2_num|.
double linf_error(const SpinorField& ref, const SpinorField& num);
/// Discrete L2 norm of the difference, sqrt(dx sum |.|^2) over both components.
double l2_error(const SpinorField& ref, const SpinorField& num, const SpaceGrid& grid);

/// Least-squares slope of log(y) against log(x). Nonpositive entries are
/// skipped with a warning; throws NumericalError if fewer than two remain.
double loglog_slope(const std::vector<double>& y, const std::vector<double>& x);

/// loglog_slope of errors against strictly decreasing step sizes.
double observed_order(const std::vector<double>& errs, const std::vector<double>& dts);

// --- conservation --------------------------------------------------------------

/// Records mass and energy of reconstructed fields along a run.
class ConservationProbe {
public:
  explicit ConservationProbe(const DiracModel& m) : model_(&m) {}
  void record(const SpinorField& phi);
  /// Max relative deviation from the first record. Energy drift is NaN for
  /// time-dependent potentials.
  double mass_drift() const;
  double energy_drift() const;
  std::size_t size() const { return mass_.size(); }

private:
  const DiracModel* model_;
  std::vector<double> mass_, energy_;
};

struct Drift {
  double mass = 0.0;
  double energy = 0.0;
};
Drift conservation_drift(const ConservationProbe& probe);

// --- reference solutions -------------------------------------------------------

struct ReferenceSettings {
  int N = 0;        // 0: grid of the model
  int Ntau = 32;
  double dt = 1e-5;
  /// Initial-data order; -1 picks 5 for eps <= 1/2 and 3 above. Order-5 data
  /// at eps = 1 reaches |U| ~ 30 on the presets and the cubic term then
  /// under-resolves the two-scale solution on any desk-scale grid.
  int order = -1;
  G1Variant g1 = G1Variant::printed;
  StepperOptions stepper;
  /// Directory for the disk cache; empty disables it.
  std::string cache_dir;
};

/// Canonical JSON key of a reference computation and its 64-bit FNV-1a hash.
std::string reference_key(const DiracModel& m, const SpinorField& phi0_ref_grid, double T,
                          const ReferenceSettings& rs);
std::string hash_hex(const std::string& text);

int reference_order(const ReferenceSettings& rs, double eps);

/// Phi^eps(T) from UA2 + order-`rs.order` data at step rs.dt, on a grid of
/// rs.N points (which must be a multiple of the model's N), then subsampled to
/// the model grid. Cached on disk as <hash>.bin with a <hash>.json sidecar;
/// a corrupt or mismatching cache entry is recomputed with a warning.
SpinorField reference_solution(const DiracModel& m, const SpinorProfile& phi0, double T, const ReferenceSettings& rs);

/// Raw cache I/O (exposed for tests).
void write_field_cache(const std::string& dir, const std::string& key, const SpinorField& phi);
bool read_field_cache(const std::string& dir, const std::string& key, SpinorField& phi);

// --- reports -------------------------------------------------------------------

struct ErrorRow {
  std::string scheme;
  int init_order = 0;
  double eps = 0.0;
  double dt = 0.0;
  int N = 0;
  int Ntau = 0;
  double err_linf = 0.0;
  double err_l2 = 0.0;
  double mass_drift = 0.0;
  double energy_drift = 0.0;
  double runtime_s = 0.0;
};

class ErrorReport {
public:
  /// Throws ConfigError on a duplicate key tuple or negative errors.
  void add(const ErrorRow& row);
  /// Rows sorted by (scheme, init_order, eps, dt, N, Ntau).
  const std::vector<ErrorRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  /// Observed order in dt of err_linf for each eps.
  std::map<double, double> orders_per_eps() const;
  /// max over eps of err_linf, for each dt.
  std::map<double, double> uniform_error() const;
  double uniform_order() const;
  /// Rows whose time step is dt, keyed by eps.
  std::map<double, double> errors_at_dt(double dt) const;

  static const char* csv_header();
  std::string csv() const;
  void write_csv(const std::string& path) const;

private:
  std::vector<ErrorRow> rows_;
};

} // namespace uadirac
