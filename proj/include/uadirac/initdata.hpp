#pragma once

// Prepared initial data U_k^eps(tau, x), k = 0 ... 5, for the two-scale
// problem. Order k makes U^eps(0, tau) correct up to O(eps^{k+1}); order
// 2p-1 keeps the first p time derivatives of the two-scale solution bounded
// uniformly in eps. Every correction term vanishes at tau = 0, so
// U_k^eps(0, x) = Phi_0(x) exactly.

#include "uadirac/fields.hpp"
#include "uadirac/model.hpp"
#include "uadirac/spectral.hpp"

#include <map>
#include <string>

namespace uadirac {

/// The order-4/5 data involve g1 = L^{-1}(I - Pi)[A f1] as printed. The `dx`
/// variant uses g1 = L^{-1}(I - Pi)[A dx f1], mirroring g2. In both cases
/// v = L^{-1}(I - Pi)[A dx g1].
enum class G1Variant { printed, dx };

using AuxMap = std::map<std::string, TwoScaleField>;

struct PreparedData {
  int order = 0;
  TwoScaleField field;
  /// Auxiliaries used by this order: f0, f1, f2, f3, g1, g2, v, f_t, H0, H1,
  /// w0, w1, Z_e, Z_m (tau-independent ones broadcast), plus the closed forms
  /// f0_closed, H0_closed and f_t_closed for cross-checking.
  AuxMap aux;
};

AuxMap aux_functions(const SpinorField& phi0, const DiracModel& m, const TauGrid& tg, int level,
                     G1Variant variant = G1Variant::printed);

PreparedData prepare_initial_data(const SpinorField& phi0, const DiracModel& m, const TauGrid& tg, int order,
                                  G1Variant variant = G1Variant::printed);

} // namespace uadirac
