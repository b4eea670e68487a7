#pragma once

#include <cstddef>

#include "credal/classical.hpp"
#include "credal/credal_div.hpp"

namespace credal {

inline constexpr double kKlDualityGapTarget = 1e-4;
inline constexpr double kTvDualityGapTarget = 1e-8;
inline constexpr std::size_t kAscentIterations = 20000;
inline constexpr double kAscentStepScale = 1.0;
inline constexpr double kPhiBox = 50.0;

struct DualityCertificate {
  ExtendedReal primal;
  double dual = 0.0;
  /// primal - dual
  double gap = 0.0;
  TestFunction best_phi{std::vector<double>{}};
  std::size_t ascent_iterations = 0;
  /// gap within the target for this certificate kind; false means the
  /// ascent stalled and the gap is reported as found.
  bool certified = false;
};

/// E^P[phi] - log E^Q[exp(phi)] with both expectations sublinear (max over
/// vertices). Throws SpaceMismatch, LengthMismatch or OverflowGuard.
double dual_kl_objective(const CredalSet& p, const CredalSet& q, const TestFunction& phi);

/// Certifies gkl(P, Q) = sup_phi dual_kl_objective(P, Q, phi).
///
/// For each vertex mu of P the concave map
///   phi -> E_mu[phi] - max_k log E_{w_k}[exp(phi)]
/// is maximized by projected supergradient ascent (step 1/sqrt(t), 20000
/// iterations, phi clipped to [-50, 50]); the supergradient is mu minus the
/// exponentially tilted attaining vertex of Q. The best iterate and the
/// running average are both evaluated. The dual is the best full objective
/// over the per-vertex maximizers. Maximizing the full objective directly is
/// avoided because it is a difference of convex functions.
///
/// Throws InfinitePrimal when gkl(P, Q) is +inf.
DualityCertificate maximize_dual_kl(const CredalSet& p, const CredalSet& q,
                                    double tol = kDefaultTolerance,
                                    Execution exec = Execution::parallel);

/// Certifies gtv(P, Q) = 1/2 sup_{|phi| <= 1} |E^P[phi] - E^Q[phi]|. Each
/// directed value is max_i of the LP
///   max t  s.t.  t <= (v_i - w_k) . phi / 2  for all k,  -1 <= phi <= 1.
DualityCertificate maximize_dual_tv(const CredalSet& p, const CredalSet& q,
                                    Execution exec = Execution::parallel);

}  // namespace credal
