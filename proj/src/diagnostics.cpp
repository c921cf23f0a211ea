#include "uadirac/diagnostics.hpp"
#include "uadirac/error.hpp"
#include "uadirac/log.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace uadirac {

namespace fs = std::filesystem;
using nlohmann::json;

double linf_error(const SpinorField& ref, const SpinorField& num) {
  if (ref.size() != num.size()) throw ConfigError("linf_error: fields live on different grids");
  if (ref.size() == 0) return 0.0;
  return (ref.c[0] - num.c[0]).cwiseAbs().maxCoeff() + (ref.c[1] - num.c[1]).cwiseAbs().maxCoeff();
}

double l2_error(const SpinorField& ref, const SpinorField& num, const SpaceGrid& grid) {
  if (ref.size() != num.size() || ref.size() != grid.size())
    throw ConfigError("l2_error: fields live on different grids");
  return std::sqrt(grid.dx() * ((ref.c[0] - num.c[0]).squaredNorm() + (ref.c[1] - num.c[1]).squaredNorm()));
}

double loglog_slope(const std::vector<double>& y, const std::vector<double>& x) {
  if (y.size() != x.size()) throw ConfigError("loglog_slope: length mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > 0.0 && x[i] > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    } else {
      log_warning("loglog_slope: skipping nonpositive entry");
    }
  }
  if (lx.size() < 2) throw NumericalError("loglog_slope: need at least two positive entries");
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw NumericalError("loglog_slope: abscissae coincide");
  return sxy / sxx;
}

double observed_order(const std::vector<double>& errs, const std::vector<double>& dts) {
  for (std::size_t i = 1; i < dts.size(); ++i)
    if (!(dts[i] < dts[i - 1])) throw ConfigError("observed_order: step sizes must be strictly decreasing");
  return loglog_slope(errs, dts);
}

// --- conservation --------------------------------------------------------------

void ConservationProbe::record(const SpinorField& phi) {
  mass_.push_back(mass(phi, model_->grid));
  energy_.push_back(model_->static_potentials() ? energy(phi, *model_) : std::numeric_limits<double>::quiet_NaN());
}

namespace {
double max_relative_deviation(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const double ref = v.front();
  if (std::isnan(ref)) return ref;
  const double scale = std::abs(ref) > 0.0 ? std::abs(ref) : 1.0;
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x - ref) / scale);
  return worst;
}
} // namespace

double ConservationProbe::mass_drift() const { return max_relative_deviation(mass_); }
double ConservationProbe::energy_drift() const { return max_relative_deviation(energy_); }

Drift conservation_drift(const ConservationProbe& probe) { return {probe.mass_drift(), probe.energy_drift()}; }

// --- reference solutions -------------------------------------------------------

namespace {

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 1469598103934665603ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::uint64_t field_checksum(const SpinorField& phi) {
  std::uint64_t h = fnv1a(phi.c[0].data(), sizeof(cplx) * static_cast<std::size_t>(phi.size()));
  return fnv1a(phi.c[1].data(), sizeof(cplx) * static_cast<std::size_t>(phi.size()), h);
}

const char* g1_name(G1Variant v) { return v == G1Variant::printed ? "printed" : "dx"; }

// One mutex per cache key, so concurrent sweeps compute each reference once.
std::mutex& key_mutex(const std::string& key) {
  static std::mutex guard;
  static std::map<std::string, std::unique_ptr<std::mutex>> table;
  std::lock_guard lock(guard);
  auto& slot = table[key];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

} // namespace

int reference_order(const ReferenceSettings& rs, double eps) {
  if (rs.order >= 0) return rs.order;
  return eps <= 0.5 ? 5 : 3;
}

std::string hash_hex(const std::string& text) { return hex64(fnv1a(text.data(), text.size())); }

std::string reference_key(const DiracModel& m, const SpinorField& phi0_ref_grid, double T,
                          const ReferenceSettings& rs) {
  const json key = {
      {"eps", m.eps},
      {"lambda", m.lambda},
      {"ve", m.ve.name},
      {"vm", m.vm.name},
      {"a", m.grid.a()},
      {"b", m.grid.b()},
      {"N", m.grid.size()},
      {"Ntau", rs.Ntau},
      {"dt", rs.dt},
      {"T", T},
      {"order", reference_order(rs, m.eps)},
      {"g1", g1_name(rs.g1)},
      {"prediction", rs.stepper.prediction == PredictionVariant::half_step ? "half_step" : "printed"},
      {"correction", rs.stepper.correction == CorrectionVariant::fully_discrete ? "fully_discrete" : "semi_discrete"},
      {"phi0", hex64(field_checksum(phi0_ref_grid))},
  };
  return key.dump();
}

void write_field_cache(const std::string& dir, const std::string& key, const SpinorField& phi) {
  fs::create_directories(dir);
  const std::string stem = (fs::path(dir) / hash_hex(key)).string();
  const std::string tmp_bin = stem + ".bin.tmp", tmp_json = stem + ".json.tmp";
  {
    std::ofstream out(tmp_bin, std::ios::binary);
    for (int c = 0; c < 2; ++c)
      out.write(reinterpret_cast<const char*>(phi.c[c].data()),
                static_cast<std::streamsize>(sizeof(cplx) * static_cast<std::size_t>(phi.size())));
    if (!out) throw NumericalError("reference cache: cannot write " + tmp_bin);
  }
  {
    const json side = {{"key", key}, {"n", phi.size()}, {"checksum", hex64(field_checksum(phi))}};
    std::ofstream out(tmp_json);
    out << side.dump(2) << '\n';
    if (!out) throw NumericalError("reference cache: cannot write " + tmp_json);
  }
  fs::rename(tmp_bin, stem + ".bin");
  fs::rename(tmp_json, stem + ".json");
}

bool read_field_cache(const std::string& dir, const std::string& key, SpinorField& phi) {
  const std::string stem = (fs::path(dir) / hash_hex(key)).string();
  if (!fs::exists(stem + ".json") || !fs::exists(stem + ".bin")) return false;
  try {
    std::ifstream side_in(stem + ".json");
    const json side = json::parse(side_in);
    if (side.at("key").get<std::string>() != key) {
      log_warning("reference cache: key mismatch in " + stem + ".json, recomputing");
      return false;
    }
    const auto n = side.at("n").get<Index>();
    SpinorField out(n);
    std::ifstream in(stem + ".bin", std::ios::binary);
    for (int c = 0; c < 2; ++c)
      in.read(reinterpret_cast<char*>(out.c[c].data()),
              static_cast<std::streamsize>(sizeof(cplx) * static_cast<std::size_t>(n)));
    if (!in || in.peek() != std::char_traits<char>::eof() ||
        hex64(field_checksum(out)) != side.at("checksum").get<std::string>()) {
      log_warning("reference cache: corrupt entry " + stem + ".bin, recomputing");
      return false;
    }
    phi = std::move(out);
    return true;
  } catch (const std::exception& e) {
    log_warning("reference cache: unreadable entry " + stem + " (" + e.what() + "), recomputing");
    return false;
  }
}

SpinorField reference_solution(const DiracModel& m, const SpinorProfile& phi0, double T, const ReferenceSettings& rs) {
  const int n_run = m.grid.size();
  const int n_ref = rs.N == 0 ? n_run : rs.N;
  if (n_ref % n_run != 0)
    throw ConfigError("reference: N_ref=" + std::to_string(n_ref) + " must be a multiple of N=" +
                      std::to_string(n_run));
  const DiracModel mref(m.eps, m.lambda, m.ve, m.vm, SpaceGrid(m.grid.a(), m.grid.b(), n_ref));
  const TauGrid tg(rs.Ntau);
  const SpinorField phi0_ref = sample_profile(phi0, mref.grid);
  const std::string key = reference_key(mref, phi0_ref, T, rs);

  SpinorField full;
  {
    std::lock_guard lock(key_mutex(key));
    if (rs.cache_dir.empty() || !read_field_cache(rs.cache_dir, key, full)) {
      PropagateOptions po;
      po.g1 = rs.g1;
      po.stepper = rs.stepper;
      const TwoScaleState s = propagate(mref, phi0_ref, tg, reference_order(rs, m.eps), Scheme::ua2, rs.dt, T, po);
      full = reconstruct_phi(s, m.eps);
      if (!rs.cache_dir.empty()) write_field_cache(rs.cache_dir, key, full);
    }
  }
  const int stride = n_ref / n_run;
  if (stride == 1) return full;
  SpinorField out(n_run);
  for (int j = 0; j < n_run; ++j)
    for (int c = 0; c < 2; ++c) out.c[c][j] = full.c[c][j * stride];
  return out;
}

// --- reports -------------------------------------------------------------------

namespace {
auto key_of(const ErrorRow& r) { return std::tie(r.scheme, r.init_order, r.eps, r.dt, r.N, r.Ntau); }
} // namespace

void ErrorReport::add(const ErrorRow& row) {
  if (row.err_linf < 0.0 || row.err_l2 < 0.0) throw ConfigError("report: errors must be nonnegative");
  auto it = std::lower_bound(rows_.begin(), rows_.end(), row,
                             [](const ErrorRow& a, const ErrorRow& b) { return key_of(a) < key_of(b); });
  if (it != rows_.end() && key_of(*it) == key_of(row)) throw ConfigError("report: duplicate row");
  rows_.insert(it, row);
}

std::map<double, double> ErrorReport::orders_per_eps() const {
  std::map<double, std::map<double, double>> by_eps; // eps -> dt -> err
  for (const auto& r : rows_) by_eps[r.eps][r.dt] = r.err_linf;
  std::map<double, double> out;
  for (const auto& [eps, series] : by_eps) {
    if (series.size() < 2) continue;
    std::vector<double> dts, errs;
    for (auto it = series.rbegin(); it != series.rend(); ++it) {
      dts.push_back(it->first);
      errs.push_back(it->second);
    }
    out[eps] = observed_order(errs, dts);
  }
  return out;
}

std::map<double, double> ErrorReport::uniform_error() const {
  std::map<double, double> out;
  for (const auto& r : rows_) out[r.dt] = std::max(out[r.dt], r.err_linf);
  return out;
}

double ErrorReport::uniform_order() const {
  const auto u = uniform_error();
  std::vector<double> dts, errs;
  for (auto it = u.rbegin(); it != u.rend(); ++it) {
    dts.push_back(it->first);
    errs.push_back(it->second);
  }
  return observed_order(errs, dts);
}

std::map<double, double> ErrorReport::errors_at_dt(double dt) const {
  std::map<double, double> out;
  for (const auto& r : rows_)
    if (r.dt == dt) out[r.eps] = r.err_linf;
  return out;
}

const char* ErrorReport::csv_header() {
  return "scheme,init_order,epsilon,dt,N,Ntau,err_linf,err_l2,mass_drift,energy_drift,runtime_s";
}

std::string ErrorReport::csv() const {
  std::ostringstream os;
  os << csv_header() << '\n' << std::setprecision(17);
  for (const auto& r : rows_)
    os << r.scheme << ',' << r.init_order << ',' << r.eps << ',' << r.dt << ',' << r.N << ',' << r.Ntau << ','
       << r.err_linf << ',' << r.err_l2 << ',' << r.mass_drift << ',' << r.energy_drift << ','
       << std::setprecision(6) << r.runtime_s << std::setprecision(17) << '\n';
  return os.str();
}

void ErrorReport::write_csv(const std::string& path) const {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path);
  out << csv();
  if (!out) throw NumericalError("cannot write " + path);
}

} // namespace uadirac
