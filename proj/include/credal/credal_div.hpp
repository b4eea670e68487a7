#pragma once

#include <cstddef>
#include <optional>

#include "credal/classical.hpp"
#include "credal/core_model.hpp"
#include "credal/extended_real.hpp"
#include "credal/parallel.hpp"

namespace credal {

inline constexpr double kDefaultTolerance = 1e-9;

enum class SolveStatus { converged, iteration_limit };

/// Result of a sup-inf (or inf) solve with its certificate.
///
/// `gap` bounds how far `value` can sit above the true optimum of the inner
/// problem(s): Frank-Wolfe gap for KL, primal-dual LP gap for TV and W_p.
/// For outer maxima it is the largest inner gap over the outer vertices.
struct SolverReport {
  ExtendedReal value;
  std::size_t witness_outer = 0;
  /// Empty exactly when value is +inf.
  std::optional<MixtureWeights> witness_inner;
  /// Mixture of the outer set; only set by joint minimizations (kl_star).
  std::optional<MixtureWeights> witness_outer_weights;
  double gap = 0.0;
  std::size_t iterations = 0;
  SolveStatus status = SolveStatus::converged;
};

struct KlBarValue {
  ExtendedReal forward;
  ExtendedReal backward;
  ExtendedReal total;
};

struct SublinearValue {
  double value = 0.0;
  std::size_t witness = 0;
};

struct GjsReport {
  double value = 0.0;
  SolverReport p_to_mid;
  SolverReport q_to_mid;
};

/// sup over the hull of E[phi]; linear in the measure, so attained at a
/// vertex (lowest index on ties).
SublinearValue sublinear_expectation(const CredalSet& p, const TestFunction& phi);

/// inf over the hull of Q of KL(mu || nu) by away-step Frank-Wolfe from
/// uniform weights. Returns +inf with no witness iff support(mu) is not
/// covered by the union of vertex supports of Q.
SolverReport inf_kl_to_hull(const Distribution& mu, const CredalSet& q,
                            double tol = kDefaultTolerance);

/// Generalized KL: sup over the hull of P of inf over the hull of Q.
///
/// mu -> inf_nu KL(mu || nu) is convex (partial minimization of a jointly
/// convex function), so its sup over a polytope is attained at a vertex and
/// the outer problem is a finite max over the vertices of P.
SolverReport gkl(const CredalSet& p, const CredalSet& q, double tol = kDefaultTolerance,
                 Execution exec = Execution::parallel);

/// Robust KL: inf over both hulls jointly. Alternates away-step Frank-Wolfe
/// steps on the two mixture blocks until the summed gap is <= tol.
SolverReport kl_star(const CredalSet& p, const CredalSet& q, double tol = kDefaultTolerance);

/// Generalized JS against M = minkowski_average(P, Q).
GjsReport gjs_report(const CredalSet& p, const CredalSet& q, double tol = kDefaultTolerance,
                     Execution exec = Execution::parallel);
double gjs(const CredalSet& p, const CredalSet& q, double tol = kDefaultTolerance,
           Execution exec = Execution::parallel);

/// inf over the hull of Q of TV(mu, nu) as an LP (absolute values split
/// into two slacks).
SolverReport inf_tv_to_hull(const Distribution& mu, const CredalSet& q);

/// sup over P of inf over Q of TV; convex in mu, so a max over vertices.
SolverReport directed_tv(const CredalSet& p, const CredalSet& q,
                         Execution exec = Execution::parallel);

/// Hausdorff-type TV: max of the two directed values.
double gtv(const CredalSet& p, const CredalSet& q, Execution exec = Execution::parallel);

/// inf over the hull of Q of W_p(mu, nu), as one LP over the coupling and the
/// mixture weights jointly. Throws NoMetric.
SolverReport inf_wasserstein_to_hull(const Distribution& mu, const CredalSet& q, double p);

/// sup over P of inf over Q of W_p. W_p^p is jointly convex in the pair, so
/// mu -> inf_nu W_p^p is convex and its max sits at a vertex; the p-th root
/// is monotone.
SolverReport directed_wasserstein(const CredalSet& p, const CredalSet& q, double order,
                                  Execution exec = Execution::parallel);

double gwasserstein(const CredalSet& p, const CredalSet& q, double order,
                    Execution exec = Execution::parallel);

/// gkl(P, Q) + gkl(Q, P) with +inf absorption.
KlBarValue kl_bar(const CredalSet& p, const CredalSet& q, double tol = kDefaultTolerance,
                  Execution exec = Execution::parallel);

/// True iff the TV distance from mu to the hull of P is <= tol.
bool hull_contains(const CredalSet& p, const Distribution& mu, double tol);

}  // namespace credal
