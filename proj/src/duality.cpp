#include "credal/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "credal/error.hpp"
#include "credal/linear_program.hpp"

namespace credal {
namespace {

// max_k log E_{w_k}[exp(phi)] with the index of the attaining vertex.
std::pair<double, std::size_t> max_log_partition(const CredalSet& q, std::span<const double> phi) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double l = log_expectation_exp(q.vertex(k).weights(), phi);
    if (l > best) {
      best = l;
      arg = k;
    }
  }
  return {best, arg};
}

struct AscentResult {
  std::vector<double> phi;
  std::size_t iterations = 0;
};

// log(mu / q*) at the primal minimizer q*, clipped to the box; exact up to
// the primal tolerance when the minimizer is interior.
std::vector<double> log_ratio_start(const Distribution& mu, const CredalSet& q, double tol) {
  const std::size_t n = mu.size();
  std::vector<double> phi(n, 0.0);
  const SolverReport inner = inf_kl_to_hull(mu, q, tol);
  if (!inner.witness_inner) return phi;
  const Distribution best = mixture(*inner.witness_inner, q);
  for (std::size_t i = 0; i < n; ++i) {
    if (mu[i] == 0.0) {
      phi[i] = -kPhiBox;
    } else if (best[i] > 0.0) {
      phi[i] = std::clamp(std::log(mu[i] / best[i]), -kPhiBox, kPhiBox);
    } else {
      phi[i] = kPhiBox;
    }
  }
  return phi;
}

AscentResult ascend_vertex(const Distribution& mu, const CredalSet& q, double tol) {
  const std::size_t n = mu.size();
  auto objective = [&](std::span<const double> phi) {
    return expectation(mu.weights(), phi) - max_log_partition(q, phi).first;
  };

  std::vector<double> phi = log_ratio_start(mu, q, tol);
  std::vector<double> average(n, 0.0), best_phi = phi, tilted(n);
  double best = objective(phi);
  for (std::size_t t = 1; t <= kAscentIterations; ++t) {
    const auto [log_z, k] = max_log_partition(q, phi);
    const double value = expectation(mu.weights(), phi) - log_z;
    if (value > best) {
      best = value;
      best_phi = phi;
    }
    const auto w = q.vertex(k).weights();
    const double step = kAscentStepScale / std::sqrt(static_cast<double>(t));
    for (std::size_t i = 0; i < n; ++i) {
      tilted[i] = w[i] > 0.0 ? std::exp(std::log(w[i]) + phi[i] - log_z) : 0.0;
      phi[i] = std::clamp(phi[i] + step * (mu[i] - tilted[i]), -kPhiBox, kPhiBox);
      average[i] += (phi[i] - average[i]) / static_cast<double>(t);
    }
  }
  if (objective(average) > best) best_phi = average;
  return {std::move(best_phi), kAscentIterations};
}

struct DirectedTvDual {
  double value = 0.0;
  std::vector<double> phi;
  std::size_t iterations = 0;
};

// max_phi min_k (v - w_k) . phi / 2 over the box |phi| <= 1.
DirectedTvDual directed_tv_dual_vertex(const Distribution& v, const CredalSet& q) {
  const std::size_t n = v.size();
  const std::size_t k = q.size();
  // variables: t_plus, t_minus, u (n, phi = u - 1), s (k), r (n)
  const std::size_t u0 = 2, s0 = 2 + n, r0 = 2 + n + k;
  LinearProgram lp;
  lp.constraints = Matrix(k + n, 2 + 2 * n + k);
  lp.rhs.assign(k + n, 0.0);
  lp.cost.assign(2 + 2 * n + k, 0.0);
  lp.cost[0] = -1.0;
  lp.cost[1] = 1.0;
  for (std::size_t c = 0; c < k; ++c) {
    double shift = 0.0;
    lp.constraints(c, 0) = 1.0;
    lp.constraints(c, 1) = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double diff = 0.5 * (v[j] - q.vertex(c)[j]);
      lp.constraints(c, u0 + j) = -diff;
      shift += diff;
    }
    lp.constraints(c, s0 + c) = 1.0;
    lp.rhs[c] = -shift;
  }
  for (std::size_t j = 0; j < n; ++j) {
    lp.constraints(k + j, u0 + j) = 1.0;
    lp.constraints(k + j, r0 + j) = 1.0;
    lp.rhs[k + j] = 2.0;
  }
  const LpSolution sol = solve_lp_or_throw(lp, "tv dual");
  DirectedTvDual out;
  out.phi.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.phi[j] = std::clamp(sol.primal[u0 + j] - 1.0, -1.0, 1.0);
  out.value = -sol.objective;
  out.iterations = sol.iterations;
  return out;
}

}  // namespace

double dual_kl_objective(const CredalSet& p, const CredalSet& q, const TestFunction& phi) {
  require_same_space(p.space(), q.space());
  if (phi.size() != p.dimension()) {
    fail(ErrorCode::LengthMismatch, "test function length does not match the space");
  }
  for (double x : phi.values()) {
    if (x > kMaxExponent) fail(ErrorCode::OverflowGuard, "test function entry exceeds 700");
  }
  return sublinear_expectation(p, phi).value - max_log_partition(q, phi.values()).first;
}

DualityCertificate maximize_dual_kl(const CredalSet& p, const CredalSet& q, double tol,
                                    Execution exec) {
  require_same_space(p.space(), q.space());
  const SolverReport primal = gkl(p, q, tol, exec);
  if (primal.value.is_infinite()) {
    fail(ErrorCode::InfinitePrimal,
         "generalized KL is +inf (vertex " + std::to_string(primal.witness_outer) +
             " of P is not absolutely continuous w.r.t. any member of Q); no dual certificate");
  }
  auto per_vertex =
      map_indices(p.size(), [&](std::size_t i) { return ascend_vertex(p.vertex(i), q, tol); }, exec);

  DualityCertificate out;
  out.primal = primal.value;
  out.dual = -std::numeric_limits<double>::infinity();
  for (auto& r : per_vertex) {
    TestFunction phi(std::move(r.phi));
    const double value = dual_kl_objective(p, q, phi);
    out.ascent_iterations += r.iterations;
    if (value > out.dual) {
      out.dual = value;
      out.best_phi = std::move(phi);
    }
  }
  out.gap = out.primal.value() - out.dual;
  out.certified = std::fabs(out.gap) <= kKlDualityGapTarget;
  return out;
}

DualityCertificate maximize_dual_tv(const CredalSet& p, const CredalSet& q, Execution exec) {
  require_same_space(p.space(), q.space());
  auto forward = map_indices(
      p.size(), [&](std::size_t i) { return directed_tv_dual_vertex(p.vertex(i), q); }, exec);
  auto backward = map_indices(
      q.size(), [&](std::size_t i) { return directed_tv_dual_vertex(q.vertex(i), p); }, exec);

  DualityCertificate out;
  double best = -1.0;
  std::vector<double> best_phi;
  for (auto* side : {&forward, &backward}) {
    for (auto& r : *side) {
      out.ascent_iterations += r.iterations;
      if (r.value > best) {
        best = r.value;
        best_phi = r.phi;
      }
    }
  }
  out.best_phi = TestFunction(best_phi, 1.0);
  out.dual = 0.5 * std::fabs(sublinear_expectation(p, out.best_phi).value -
                             sublinear_expectation(q, out.best_phi).value);
  out.primal = ExtendedReal(gtv(p, q, exec));
  out.gap = out.primal.value() - out.dual;
  out.certified = std::fabs(out.gap) <= kTvDualityGapTarget;
  return out;
}

}  // namespace credal
