// Acceptance checks 1-10. Each selected check prints exactly one line
//   criterion <k> <name>: PASS|FAIL  <details>
// and the exit status is nonzero if any selected check failed.

#include "dense_oracle.hpp"

#include "uadirac/experiment.hpp"
#include "uadirac/log.hpp"
#include "uadirac/tau_ops.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace uadirac;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> reasons;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      reasons.push_back(what);
    }
  }
};

std::string cache_dir = "acceptance-cache";

std::string g(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// eps in {1, 2^-2, 2^-4, 2^-6, 2^-8}, dt in {0.1 2^-j, j = 0..5}, T = 0.5,
// N = 128, N_tau = 32, same-grid reference at dt = 1e-4.
ExperimentConfig time_sweep_config(Example ex, Scheme scheme, int order) {
  ExperimentConfig cfg;
  cfg.example = ex;
  cfg.scheme = scheme;
  cfg.init_order = order;
  cfg.eps_list = {1.0, 0.25, 0.0625, 0.015625, 0.00390625};
  cfg.dt_list.clear();
  for (int j = 0; j <= 5; ++j) cfg.dt_list.push_back(0.1 / std::pow(2.0, j));
  cfg.T = 0.5;
  cfg.N = 128;
  cfg.Ntau = 32;
  cfg.ref_N = 0;
  cfg.ref_Ntau = 0;
  cfg.ref_dt = 1e-4;
  cfg.cache_dir = cache_dir;
  return cfg;
}

std::string orders_text(const ErrorReport& r) {
  std::ostringstream os;
  os << "orders{";
  bool first = true;
  for (const auto& [eps, o] : r.orders_per_eps()) {
    os << (first ? "" : ", ") << "eps=" << g(eps) << ":" << g(o);
    first = false;
  }
  os << "}";
  return os.str();
}

void add_failures(Outcome& out, const std::vector<std::string>& failures) {
  for (const auto& f : failures) out.require(false, f);
}

// --- 1 ------------------------------------------------------------------------

Outcome uniform_first_order() {
  Outcome out;
  const auto cfg = time_sweep_config(Example::I, Scheme::ua1, 3);
  const auto sw = sweep_time(cfg);
  add_failures(out, sw.failures);
  const auto& r = sw.report;
  for (const auto& [eps, o] : r.orders_per_eps())
    out.require(o >= 0.8 && o <= 1.2, "order at eps=" + g(eps) + " is " + g(o));
  const double uo = r.uniform_order();
  out.require(uo >= 0.8, "uniform order " + g(uo));
  // C(eps) = sup over dt of err/dt; its spread across the eps-set
  std::map<double, double> c;
  for (const auto& row : r.rows()) c[row.eps] = std::max(c[row.eps], row.err_linf / row.dt);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& [eps, v] : c) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.require(hi / lo < 5.0, "sup err/dt spread " + g(hi / lo) + "x");
  out.detail << orders_text(r) << " uniform=" << g(uo) << " sup(err/dt) spread=" << g(hi / lo) << "x";
  return out;
}

// --- 2 ------------------------------------------------------------------------

Outcome uniform_second_order() {
  Outcome out;
  for (Example ex : {Example::I, Example::II, Example::III}) {
    const auto cfg = time_sweep_config(ex, Scheme::ua2, 5);
    const auto sw = sweep_time(cfg);
    const std::string tag = "example " + example_name(ex);
    for (const auto& f : sw.failures) out.require(false, tag + ": " + f);
    const auto& r = sw.report;
    for (const auto& [eps, o] : r.orders_per_eps())
      out.require(o >= 1.7 && o <= 2.3, tag + " order at eps=" + g(eps) + " is " + g(o));
    const double uo = r.empty() ? 0.0 : r.uniform_order();
    out.require(uo >= 1.7 && uo <= 2.3, tag + " uniform order " + g(uo));
    out.detail << tag << ": " << orders_text(r) << " uniform=" << g(uo) << "; ";
  }
  return out;
}

// --- 3 ------------------------------------------------------------------------

Outcome preparation_necessity() {
  Outcome out;
  {
    const auto sw = sweep_time(time_sweep_config(Example::I, Scheme::ua1, 0));
    add_failures(out, sw.failures);
    const double uo = sw.report.uniform_order();
    out.require(uo < 0.5, "UA1 order-0 uniform order " + g(uo));
    double dt = std::numeric_limits<double>::infinity();
    for (const auto& row : sw.report.rows()) dt = std::min(dt, row.dt);
    const auto at = sw.report.errors_at_dt(dt);
    const double growth = at.at(0.0625) / at.at(1.0);
    out.require(growth >= 10.0, "error growth eps 1 -> 2^-4 at dt=" + g(dt) + " is " + g(growth) + "x");
    out.detail << "UA1 U0: uniform=" << g(uo) << " growth(dt=" << g(dt) << ")=" << g(growth) << "x; ";
  }
  out.detail << "UA2 uniform by order:";
  for (int order = 0; order <= 3; ++order) {
    const auto sw = sweep_time(time_sweep_config(Example::I, Scheme::ua2, order));
    add_failures(out, sw.failures);
    const double uo = sw.report.uniform_order();
    out.require(uo < 1.5, "UA2 order-" + std::to_string(order) + " uniform order " + g(uo));
    out.detail << " U" << order << "=" << g(uo);
  }
  return out;
}

// --- 4 ------------------------------------------------------------------------

// Every doubling whose coarser error is above the floor must gain > 10x.
void check_spectral(Outcome& out, const ErrorReport& r, bool by_n, const std::string& axis) {
  constexpr double floor = 1e-9;
  std::vector<std::pair<int, double>> pts;
  for (const auto& row : r.rows()) pts.emplace_back(by_n ? row.N : row.Ntau, row.err_linf);
  std::sort(pts.begin(), pts.end());
  out.detail << axis << ":";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.detail << " " << pts[i].first << "->" << g(pts[i].second);
    if (i > 0 && pts[i - 1].second > floor) {
      const double gain = pts[i - 1].second / pts[i].second;
      out.require(gain > 10.0, axis + " " + std::to_string(pts[i - 1].first) + "->" +
                                   std::to_string(pts[i].first) + " gains only " + g(gain) + "x");
    }
  }
  if (!pts.empty()) out.require(pts.back().second < 1e-6, axis + " final error " + g(pts.back().second));
  out.detail << "; ";
}

Outcome spectral_accuracy() {
  Outcome out;
  ExperimentConfig cfg;
  cfg.example = Example::III;
  cfg.eps_list = {0.25};
  cfg.T = 0.5;
  cfg.space_dt = 1e-4;
  cfg.space_N = {8, 16, 32, 64};
  cfg.space_Ntau = {4, 8, 16, 32};
  cfg.space_ref_N = 128;
  cfg.space_ref_Ntau = 64;
  cfg.cache_dir = cache_dir;
  const auto sw = sweep_space(cfg);
  add_failures(out, sw.failures);
  check_spectral(out, sw.n_sweep, true, "N");
  check_spectral(out, sw.ntau_sweep, false, "Ntau");
  return out;
}

// --- 5 ------------------------------------------------------------------------

Outcome limit_model_rate() {
  Outcome out;
  ExperimentConfig cfg;
  cfg.example = Example::III;
  cfg.limit_eps = {0.25, 0.125, 0.0625, 0.03125, 0.015625};
  cfg.limit_dt = 1e-3;
  cfg.T = 0.5;
  cfg.N = 128;
  cfg.Ntau = 32;
  cfg.ref_N = 0;
  cfg.ref_Ntau = 0;
  cfg.ref_dt = 1e-4;
  cfg.cache_dir = cache_dir;
  const auto res = limit_rate(cfg);
  out.require(res.slope >= 0.7 && res.slope <= 1.3, "slope " + g(res.slope));
  out.detail << "errors{";
  for (const auto& row : res.rows) out.detail << " eps=" << g(row.eps) << ":" << g(row.err_linf);
  out.detail << " } slope=" << g(res.slope);
  return out;
}

// --- 6 ------------------------------------------------------------------------

Outcome q_nonexpansive() {
  Outcome out;
  double worst = 0.0;
  for (double eps : {1.0, 0.0625})
    for (double dt : {0.1, 0.01})
      for (double mu : {0.0, std::numbers::pi / 8.0, 4.0 * std::numbers::pi}) {
        const double r = q_nonexpansive_check(eps, dt, mu, 64, 100);
        worst = std::max(worst, r);
        out.require(r <= 1.02, "ratio " + g(r) + " at eps=" + g(eps) + " dt=" + g(dt) + " mu=" + g(mu));
      }
  out.detail << "max ratio=" << g(worst);
  return out;
}

// --- 7 ------------------------------------------------------------------------

double field_diff(const TwoScaleField& a, const TwoScaleField& b) {
  return std::max((a.c[0] - b.c[0]).cwiseAbs().maxCoeff(), (a.c[1] - b.c[1]).cwiseAbs().maxCoeff());
}

Outcome oracle_equivalence() {
  Outcome out;
  const DiracModel m(0.5, 0.5, potentials::preset_electric(), potentials::preset_magnetic(), SpaceGrid(-8, 8, 4));
  const TauGrid tg(4);
  // a generic state, not prepared data, so every coupling is exercised
  TwoScaleField u(4, 4);
  for (int c = 0; c < 2; ++c)
    for (int j = 0; j < 4; ++j)
      for (int x = 0; x < 4; ++x)
        u.c[c](j, x) = cplx(std::sin(1.0 + c + 0.7 * j + 0.3 * x), std::cos(0.5 * c - 0.4 * j + 1.1 * x));
  const double dt = 0.05, t = 0.1;
  TwoScaleState s{0, t, u, Scheme::ua1};

  StepperOptions opts;
  opts.exec = Exec::serial;
  const double d1 = field_diff(ua1_step(s, build_matrices(m, dt, tg, Scheme::ua1, opts), m).U,
                               oracle::ua1_step(m, u, t, dt));
  out.require(d1 < 1e-11, "UA1 differs by " + g(d1));
  out.detail << "UA1 diff=" << g(d1);

  for (auto pred : {PredictionVariant::half_step, PredictionVariant::printed}) {
    opts.prediction = pred;
    s.scheme = Scheme::ua2;
    const double d2 = field_diff(ua2_step(s, build_matrices(m, dt, tg, Scheme::ua2, opts), m).U,
                                 oracle::ua2_step(m, u, t, dt, pred));
    const std::string name = pred == PredictionVariant::half_step ? "halfstep" : "printed";
    out.require(d2 < 1e-11, "UA2 (" + name + ") differs by " + g(d2));
    out.detail << " UA2(" << name << ") diff=" << g(d2);
  }
  return out;
}

// --- 8 ------------------------------------------------------------------------

Outcome toy_boundedness() {
  Outcome out;
  const ToyProblem prob = make_toy_problem("cos", 1.0, 1.0, 1);
  const auto prep = toy_derivative_bound(prob, true);
  const auto unprep = toy_derivative_bound(prob, false);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& r : prep) {
    lo = std::min(lo, r.estimate);
    hi = std::max(hi, r.estimate);
  }
  out.require(hi / lo <= 1.5, "prepared spread " + g(hi / lo) + "x");
  out.detail << "prepared spread=" << g(hi / lo) << "x; unprepared growth per halving:";
  for (std::size_t i = 1; i < unprep.size(); ++i) {
    const double growth = unprep[i].estimate / unprep[i - 1].estimate;
    out.detail << " " << g(growth);
    out.require(growth >= 3.0 && growth <= 5.0,
                "unprepared growth " + g(growth) + "x at eps=" + g(unprep[i].eps));
  }
  return out;
}

// --- 9 ------------------------------------------------------------------------

Drift drift_of_run(const DiracModel& m, const SpinorField& phi0, int order, double dt) {
  ConservationProbe probe(m);
  PropagateOptions po;
  po.hook = [&](const TwoScaleState& s) { probe.record(reconstruct_phi(s, m.eps)); };
  propagate(m, phi0, TauGrid(32), order, Scheme::ua2, dt, 0.5, po);
  return conservation_drift(probe);
}

Outcome conservation_sanity() {
  Outcome out;
  ExperimentConfig cfg;
  cfg.example = Example::I;
  const DiracModel m = make_model(cfg, 1.0, 128);
  const SpinorField phi0 = sample_profile(preset_profile(), m.grid);
  // same data order as the reference protocol at this eps
  ReferenceSettings rs;
  const int order = reference_order(rs, m.eps);
  const Drift a = drift_of_run(m, phi0, order, 1e-3);
  const Drift b = drift_of_run(m, phi0, order, 5e-4);
  out.require(a.mass < 1e-4, "mass drift " + g(a.mass));
  out.require(a.energy < 1e-4, "energy drift " + g(a.energy));
  const double rm = a.mass / b.mass, re = a.energy / b.energy;
  out.require(rm >= 3.0 && rm <= 5.0, "mass drift ratio " + g(rm));
  out.require(re >= 3.0 && re <= 5.0, "energy drift ratio " + g(re));
  out.detail << "data order " << order << ": mass drift=" << g(a.mass) << " (ratio " << g(rm)
             << "), energy drift=" << g(a.energy) << " (ratio " << g(re) << ")";
  return out;
}

// --- 10 -----------------------------------------------------------------------

double aux_diff(const AuxMap& aux, const std::string& a, const std::string& b) {
  return field_diff(aux.at(a), aux.at(b));
}

Outcome closed_forms() {
  Outcome out;
  ExperimentConfig cfg;
  cfg.example = Example::III;
  const DiracModel m = make_model(cfg, 0.5, 128);
  const SpinorField phi0 = sample_profile(preset_profile(), m.grid);
  const auto prep = prepare_initial_data(phi0, m, TauGrid(32), 5);
  const double df0 = aux_diff(prep.aux, "f0", "f0_closed");
  const double dh0 = aux_diff(prep.aux, "H0", "H0_closed");
  out.require(df0 < 1e-11, "f0 differs by " + g(df0));
  out.require(dh0 < 1e-11, "H0 differs by " + g(dh0));

  const int nt = 64;
  const TauGrid tg(nt);
  CMatrix b(nt, 4), a(nt, 4);
  for (int j = 0; j < nt; ++j) {
    const auto om = osc_matrices(tg.point(j));
    for (int k = 0; k < 4; ++k) {
      b(j, k) = om.B(k / 2, k % 2);
      a(j, k) = om.A(k / 2, k % 2);
    }
  }
  const double dlb = (linv(b) + 0.25 * a).cwiseAbs().maxCoeff();
  const auto o0 = osc_matrices(0.0);
  const double dac = (o0.A * o0.C - 4.0 * o0.B * o0.B * o0.B).cwiseAbs().maxCoeff();
  out.require(dlb < 1e-13, "L^-1 B + A/4 = " + g(dlb));
  out.require(dac < 1e-13, "A(0)C - 4B(0)^3 = " + g(dac));
  out.detail << "f0=" << g(df0) << " H0=" << g(dh0) << " LinvB=" << g(dlb) << " A0C=" << g(dac);
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks for the uniformly accurate two-scale Dirac solver"};
  std::vector<int> selected;
  bool verbose = false;
  app.add_option("-c,--criterion", selected, "Criteria to run (default: all)")->check(CLI::Range(1, 10));
  app.add_option("--cache", cache_dir, "Reference cache directory");
  app.add_flag("-v,--verbose", verbose, "Keep library warnings");
  CLI11_PARSE(app, argc, argv);
  set_quiet(!verbose);

  const std::vector<Criterion> all = {
      {1, "uniform-first-order", uniform_first_order},
      {2, "uniform-second-order", uniform_second_order},
      {3, "preparation-necessity", preparation_necessity},
      {4, "spectral-accuracy", spectral_accuracy},
      {5, "limit-model-rate", limit_model_rate},
      {6, "q-nonexpansive", q_nonexpansive},
      {7, "oracle-equivalence", oracle_equivalence},
      {8, "toy-boundedness", toy_boundedness},
      {9, "conservation", conservation_sanity},
      {10, "closed-forms", closed_forms},
  };
  if (selected.empty())
    for (const auto& c : all) selected.push_back(c.id);

  bool ok = true;
  for (int id : selected) {
    const Criterion& c = all[static_cast<std::size_t>(id - 1)];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("error: ") + e.what());
    }
    std::string why;
    for (const auto& r : o.reasons) why += (why.empty() ? " | failed: " : "; ") + r;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s  %s%s (%.1f s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                o.detail.str().c_str(), why.c_str(), secs);
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
