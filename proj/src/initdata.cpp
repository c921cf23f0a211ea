#include "uadirac/initdata.hpp"
#include "uadirac/error.hpp"
#include "uadirac/tau_ops.hpp"

#include <array>
#include <cmath>

namespace uadirac {

namespace {

// Fixed tau-matrices of the expansion, named by their entry pattern.
Mat2 m1(double tau) { // [[0, e-1], [1-conj(e), 0]]
  const cplx e = std::exp(2.0 * kI * tau);
  Mat2 m;
  m << 0.0, e - 1.0, 1.0 - std::conj(e), 0.0;
  return m;
}
Mat2 m2(double tau) { // [[0, 1-e], [1-conj(e), 0]]
  const cplx e = std::exp(2.0 * kI * tau);
  Mat2 m;
  m << 0.0, 1.0 - e, 1.0 - std::conj(e), 0.0;
  return m;
}
Mat2 m3(double tau) { // [[0, e-1], [conj(e)-1, 0]]
  const cplx e = std::exp(2.0 * kI * tau);
  Mat2 m;
  m << 0.0, e - 1.0, std::conj(e) - 1.0, 0.0;
  return m;
}
Mat2 diag_pp(double tau) { // diag(1-e, 1-conj(e))
  const cplx e = std::exp(2.0 * kI * tau);
  Mat2 m;
  m << 1.0 - e, 0.0, 0.0, 1.0 - std::conj(e);
  return m;
}
Mat2 diag_pm(double tau) { // diag(1-e, conj(e)-1)
  const cplx e = std::exp(2.0 * kI * tau);
  Mat2 m;
  m << 1.0 - e, 0.0, 0.0, std::conj(e) - 1.0;
  return m;
}
Mat2 a_of(double tau) { return osc_matrices(tau).A; }
Mat2 b_of(double tau) { return osc_matrices(tau).B; }

class Builder {
public:
  Builder(const SpinorField& phi0, const DiracModel& m, const TauGrid& tg, G1Variant variant)
      : phi0_(phi0), m_(m), nt_(tg.size()), eps_(m.eps), variant_(variant) {
    if (phi0.size() != m.grid.size()) throw ConfigError("initial data: Phi_0 does not match the model grid");
    for (int k = 0; k <= 5; ++k) d_[static_cast<std::size_t>(k)] = spectral_dx(phi0, m.grid, k);
    const auto pot = sample_potentials(m, 0.0);
    vm_phi0_ = SpinorField(pot.vm.cast<cplx>().cwiseProduct(phi0.c[0]), pot.vm.cast<cplx>().cwiseProduct(phi0.c[1]));
    dvm_phi0_ =
        SpinorField(pot.dvm.cast<cplx>().cwiseProduct(phi0.c[0]), pot.dvm.cast<cplx>().cwiseProduct(phi0.c[1]));
    vm0_ = pot.vm;
    M1_ = sample_tau_matrix(nt_, m1);
    M2_ = sample_tau_matrix(nt_, m2);
    M3_ = sample_tau_matrix(nt_, m3);
    Dpp_ = sample_tau_matrix(nt_, diag_pp);
    Dpm_ = sample_tau_matrix(nt_, diag_pm);
    A_ = sample_tau_matrix(nt_, a_of);
    B_ = sample_tau_matrix(nt_, b_of);
    C_ = osc_matrices(0.0).C;
    B0_ = osc_matrices(0.0).B;
  }

  void build(int level) {
    if (level < 0 || level > 5) throw ConfigError("initial data: order must lie in 0...5");
    const cplx e1 = eps_, e2 = eps_ * eps_, e3 = e2 * eps_, e4 = e3 * eps_, e5 = e4 * eps_;

    U_[0] = bc(phi0_);
    if (level == 0) return;

    U1_ = bc(phi0_) + apply_matrix(M1_, (kI * e1 / 2.0) * d(1));
    U_[1] = U1_;
    if (level == 1) return;

    U2eps_ = U1_ + apply_matrix(Dpp_, (e2 / 4.0) * d(2)) - apply_matrix(M1_, (e2 / 2.0) * vm_phi0_);
    const TwoScaleField f0 = linv(F0(bc(phi0_)));
    aux_["f0"] = f0;
    // f0 = -i V_m(0) B(tau) Phi_0
    aux_["f0_closed"] = apply_matrix(B_, (-kI) * vm_phi0_);
    U2_ = U2eps_ - e2 * minus_at0(f0);
    U_[2] = U2eps_;
    if (level == 2) return;

    const SpinorField fe0 = F_e(0.0, phi0_, m_);
    const TwoScaleField f1 = linv(F0(U1_));
    aux_["f1"] = f1;
    U3eps_ = U2_ + e2 * minus_at0(f1) + apply_matrix(M1_, (kI * e3 / 4.0) * d(1, 3)) +
             apply_matrix(Dpp_, (kI * e3 / 4.0) * dx(vm_phi0_, 1)) + apply_matrix(M2_, (e3 / 4.0) * dx(fe0, 1));
    U_[3] = U3eps_;
    if (level == 3) return;

    const TwoScaleField f2 = linv(F0(U2eps_));
    aux_["f2"] = f2;
    const TwoScaleField g1 = variant_ == G1Variant::printed ? linv(apply_matrix(A_, f1)) : linv(apply_matrix(A_, dx(f1, 1)));
    aux_["g1"] = g1;
    // W0 = C dx^2 Phi_0 + F_e(0, Phi_0),  Z_m = dV_m/dt Phi_0 + V_m W0
    const SpinorField w0_spinor = apply_matrix(C_, d(2)) + fe0;
    const SpinorField zm = dvm_phi0_ + times_vm(w0_spinor);
    aux_["Z_m"] = bc(zm);
    const TwoScaleField phi0b = bc(phi0_);
    const TwoScaleField f_t = linv2(dF_dt(0.0, phi0b, m_) + dF_du(0.0, phi0b, bc(w0_spinor), m_));
    aux_["f_t"] = f_t;
    aux_["f_t_closed"] = apply_matrix(A_, (kI / 4.0) * zm);
    const SpinorField pi_F_U1 = pi_avg(F0(U1_));
    const SpinorField pi_A_d2f1 = pi_avg(apply_matrix(A_, dx(f1, 2)));

    if (level == 4) {
      U_[4] = U2_ + e2 * minus_at0(f2) + apply_matrix(M1_, (kI * e3 / 4.0) * d(3)) +
              apply_matrix(M2_, (e3 / 4.0) * dx(pi_F_U1, 1)) - e3 * minus_at0(g1) -
              apply_matrix(M1_, (kI * e3 / 2.0) * dx(at0(f1), 1)) + apply_matrix(Dpp_, (3.0 * e4 / 16.0) * d(4)) -
              apply_matrix(M1_, (e4 / 8.0) * dx(vm_phi0_, 2)) + apply_matrix(M3_, (e4 / 4.0) * pi_A_d2f1) -
              apply_matrix(Dpm_, (kI * e4 / 8.0) * dx(fe0, 2)) - e4 * minus_at0(f_t);
      return;
    }

    const TwoScaleField f3 = linv(F0(U3eps_));
    aux_["f3"] = f3;
    const TwoScaleField g2 = linv(apply_matrix(A_, dx(f2, 1)));
    aux_["g2"] = g2;
    const TwoScaleField v = linv(apply_matrix(A_, dx(g1, 1)));
    aux_["v"] = v;

    const TwoScaleField H0 = linv(dF_dt(0.0, phi0b, m_) + dF_du(0.0, phi0b, bc(apply_matrix(C_, d(2))), m_) +
                                  dF_du(0.0, phi0b, bc(fe0), m_));
    aux_["H0"] = H0;
    aux_["H0_closed"] = apply_matrix(B_, (-kI) * zm);

    const SpinorField c_d2 = apply_matrix(C_, d(2) + e1 * apply_matrix(B0_, d(3)));
    const SpinorField pi_A_d1f1 = pi_avg(apply_matrix(A_, dx(f1, 1)));
    const SpinorField cd3_dfe = apply_matrix(C_, d(3)) + dx(fe0, 1);
    const TwoScaleField H1 = dF_dt(0.0, U1_, m_) + dF_du(0.0, U1_, bc(c_d2), m_) +
                             dF_du(0.0, U1_, bc(pi_F_U1 - e1 * pi_A_d1f1), m_) -
                             e1 * dF_du(0.0, U1_, apply_matrix(B_, cd3_dfe), m_);
    aux_["H1"] = H1;
    const TwoScaleField w0 = linv2(apply_matrix(A_, dx(H0, 1)));
    const TwoScaleField w1 = linv2(H1);
    aux_["w0"] = w0;
    aux_["w1"] = w1;
    const SpinorField ze = dFe_du(0.0, phi0_, w0_spinor, m_) + dFe_dt(0.0, phi0_, m_);
    aux_["Z_e"] = bc(ze);

    const SpinorField pi_F_U2 = pi_avg(F0(U2eps_));
    const SpinorField pi_A_d3f1 = pi_avg(apply_matrix(A_, dx(f1, 3)));

    // Dmm = diag(e-1, conj(e)-1) = -Dpp and Dmp = diag(e-1, 1-conj(e)) = -Dpm.
    U_[5] = U2_ + e2 * minus_at0(f3) + apply_matrix(M1_, (kI * e3 / 4.0) * d(3)) +
            apply_matrix(M2_, (e3 / 4.0) * dx(pi_F_U2, 1)) - e3 * minus_at0(g2) -
            apply_matrix(M1_, (kI * e3 / 2.0) * dx(at0(f2), 1)) - apply_matrix(Dpp_, (e4 / 4.0) * dx(at0(f1), 2)) -
            apply_matrix(Dpm_, (kI * e4 / 8.0) * dx(pi_F_U1, 2)) + apply_matrix(Dpp_, (3.0 * e4 / 16.0) * d(4)) +
            apply_matrix(M1_, (kI * e4 / 2.0) * dx(at0(g1), 1)) + e4 * minus_at0(v) - e4 * minus_at0(w1) +
            apply_matrix(M3_, (e4 / 4.0) * pi_A_d2f1) + apply_matrix(M1_, (3.0 * kI * e5 / 16.0) * d(5)) +
            e5 * minus_at0(w0) - apply_matrix(M3_, (3.0 * e5 / 16.0) * dx(fe0, 3)) +
            apply_matrix(Dpm_, (kI * e5 / 8.0) * pi_A_d3f1) + apply_matrix(Dpm_, (e5 / 8.0) * dx(zm, 1)) +
            apply_matrix(Dpp_, (kI * e5 / 8.0) * dx(vm_phi0_, 3)) - apply_matrix(M1_, (kI * e5 / 8.0) * dx(ze, 1));
  }

  const TwoScaleField& field(int order) const { return U_[static_cast<std::size_t>(order)]; }
  AuxMap& aux() { return aux_; }

private:
  const SpinorField& d(int k) const { return d_[static_cast<std::size_t>(k)]; }
  // Spinor derivative `k` of Phi_0 (overload used where the order reads better explicitly).
  const SpinorField& d(int, int k) const { return d(k); }

  TwoScaleField bc(const SpinorField& s) const { return TwoScaleField::broadcast(s, nt_); }
  static SpinorField at0(const TwoScaleField& f) { return f.section(0); }
  TwoScaleField minus_at0(const TwoScaleField& f) const { return f - bc(at0(f)); }
  SpinorField dx(const SpinorField& s, int k) const { return spectral_dx(s, m_.grid, k); }
  TwoScaleField dx(const TwoScaleField& s, int k) const { return spectral_dx(s, m_.grid, k); }
  TwoScaleField F0(const TwoScaleField& u) const { return nonlinearity_F(0.0, u, m_); }
  SpinorField times_vm(const SpinorField& s) const {
    return SpinorField(vm0_.cast<cplx>().cwiseProduct(s.c[0]), vm0_.cast<cplx>().cwiseProduct(s.c[1]));
  }

  const SpinorField& phi0_;
  const DiracModel& m_;
  int nt_;
  double eps_;
  G1Variant variant_;

  std::array<SpinorField, 6> d_;
  SpinorField vm_phi0_, dvm_phi0_;
  RVector vm0_;
  TauMatrix M1_, M2_, M3_, Dpp_, Dpm_, A_, B_;
  Mat2 C_, B0_;

  TwoScaleField U1_, U2eps_, U2_, U3eps_;
  std::array<TwoScaleField, 6> U_;
  AuxMap aux_;
};

} // namespace

AuxMap aux_functions(const SpinorField& phi0, const DiracModel& m, const TauGrid& tg, int level,
                     G1Variant variant) {
  Builder b(phi0, m, tg, variant);
  b.build(level);
  return std::move(b.aux());
}

PreparedData prepare_initial_data(const SpinorField& phi0, const DiracModel& m, const TauGrid& tg, int order,
                                  G1Variant variant) {
  Builder b(phi0, m, tg, variant);
  b.build(order);
  PreparedData out;
  out.order = order;
  out.field = b.field(order);
  out.aux = std::move(b.aux());
  return out;
}

} // namespace uadirac
