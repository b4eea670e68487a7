#include "credal/credal_div.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "credal/error.hpp"
#include "credal/frank_wolfe.hpp"
#include "credal/linear_program.hpp"

namespace credal {
namespace {

void require_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    fail(ErrorCode::InvalidArgument, "tolerance must be a positive finite number");
  }
}

void require_order(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorCode::InvalidArgument, "Wasserstein order must be a finite p >= 1");
  }
}

std::vector<std::vector<double>> vertex_columns(const CredalSet& q) {
  std::vector<std::vector<double>> cols;
  cols.reserve(q.size());
  for (const auto& v : q.vertices()) cols.emplace_back(v.weights().begin(), v.weights().end());
  return cols;
}

// LP weights come back with roundoff; clamp and renormalize onto the simplex.
MixtureWeights to_weights(std::span<const double> raw) {
  std::vector<double> w(raw.begin(), raw.end());
  double total = 0.0;
  for (double& x : w) {
    x = std::max(0.0, x);
    total += x;
  }
  for (double& x : w) x /= total;
  return MixtureWeights(std::move(w));
}

// Deterministic max-with-lowest-index reduction over per-vertex reports.
SolverReport reduce_outer_max(std::vector<SolverReport> per_vertex) {
  std::vector<ExtendedReal> values;
  values.reserve(per_vertex.size());
  for (const auto& r : per_vertex) values.push_back(r.value);
  const std::size_t best = argmax_lowest(values);

  SolverReport out = std::move(per_vertex[best]);
  out.witness_outer = best;
  if (out.value.is_finite()) {
    double gap = 0.0;
    for (const auto& r : per_vertex) gap = std::max(gap, r.gap);
    out.gap = gap;
  } else {
    out.gap = 0.0;
  }
  std::size_t iterations = 0;
  for (const auto& r : per_vertex) {
    iterations += r.iterations;
    if (r.status == SolveStatus::iteration_limit) out.status = SolveStatus::iteration_limit;
  }
  out.iterations = iterations;
  return out;
}

bool covered_by(std::span<const double> mu, const std::vector<bool>& mask) {
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] > 0.0 && !mask[i]) return false;
  }
  return true;
}

SolverReport infinite_report(std::size_t outer = 0) {
  SolverReport r;
  r.value = ExtendedReal::infinity();
  r.witness_outer = outer;
  return r;
}

}  // namespace

SublinearValue sublinear_expectation(const CredalSet& p, const TestFunction& phi) {
  if (phi.size() != p.dimension()) {
    fail(ErrorCode::LengthMismatch, "test function length does not match the space");
  }
  SublinearValue out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double e = expectation(p.vertex(k).weights(), phi.values());
    if (k == 0 || e > out.value) {
      out.value = e;
      out.witness = k;
    }
  }
  return out;
}

SolverReport inf_kl_to_hull(const Distribution& mu, const CredalSet& q, double tol) {
  require_same_space(mu.space(), q.space());
  require_tolerance(tol);
  if (!covered_by(mu.weights(), q.support_mask())) return infinite_report();

  SolverReport out;
  if (q.size() == 1) {
    out.witness_inner = MixtureWeights::indicator(1, 0);
  } else {
    const FrankWolfeResult fw = minimize_on_simplex(vertex_columns(q), KlToMixture{mu.weights()}, tol);
    out.witness_inner = MixtureWeights(fw.weights);
    out.gap = fw.gap;
    out.iterations = fw.iterations;
    out.status = fw.converged ? SolveStatus::converged : SolveStatus::iteration_limit;
  }
  out.value = kl_vectors(mu.weights(), mixture_point(out.witness_inner->coefficients(), q));
  return out;
}

SolverReport gkl(const CredalSet& p, const CredalSet& q, double tol, Execution exec) {
  require_same_space(p.space(), q.space());
  require_tolerance(tol);
  auto per_vertex = map_indices(
      p.size(), [&](std::size_t i) { return inf_kl_to_hull(p.vertex(i), q, tol); }, exec);
  return reduce_outer_max(std::move(per_vertex));
}

SolverReport kl_star(const CredalSet& p, const CredalSet& q, double tol) {
  require_same_space(p.space(), q.space());
  require_tolerance(tol);

  // A P-vertex with mass outside the Q supports makes every mixture that
  // uses it infinite, so the joint problem lives on the face spanned by the
  // remaining vertices.
  const std::vector<bool> mask = q.support_mask();
  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (covered_by(p.vertex(i).weights(), mask)) feasible.push_back(i);
  }
  if (feasible.empty()) return infinite_report();

  std::vector<std::vector<double>> outer_cols;
  for (std::size_t i : feasible) {
    const auto w = p.vertex(i).weights();
    outer_cols.emplace_back(w.begin(), w.end());
  }
  SimplexFrankWolfe outer(std::move(outer_cols));
  SimplexFrankWolfe inner(vertex_columns(q));

  SolverReport out;
  std::size_t sweeps = 0;
  double gap = std::numeric_limits<double>::infinity();
  while (true) {
    const double outer_gap = outer.gap(KlFromMixture{inner.point()});
    const double inner_gap = inner.gap(KlToMixture{outer.point()});
    gap = outer_gap + inner_gap;
    if (gap <= tol || sweeps >= kMaxFrankWolfeIterations) break;
    if (outer_gap > 0.0) outer.step(KlFromMixture{inner.point()}, 0.0);
    if (inner_gap > 0.0) inner.step(KlToMixture{outer.point()}, 0.0);
    ++sweeps;
  }

  std::vector<double> alpha(p.size(), 0.0);
  for (std::size_t j = 0; j < feasible.size(); ++j) alpha[feasible[j]] = outer.weights()[j];
  out.witness_outer_weights = MixtureWeights(alpha);
  out.witness_outer = argmax_lowest(alpha);
  out.witness_inner = MixtureWeights(std::vector<double>(inner.weights().begin(), inner.weights().end()));
  out.value = kl_vectors(mixture_point(out.witness_outer_weights->coefficients(), p),
                         mixture_point(out.witness_inner->coefficients(), q));
  out.gap = gap;
  out.iterations = sweeps;
  out.status = gap <= tol ? SolveStatus::converged : SolveStatus::iteration_limit;
  return out;
}

GjsReport gjs_report(const CredalSet& p, const CredalSet& q, double tol, Execution exec) {
  const CredalSet mid = minkowski_average(p, q);
  GjsReport out;
  out.p_to_mid = gkl(p, mid, tol, exec);
  out.q_to_mid = gkl(q, mid, tol, exec);
  out.value = 0.5 * out.p_to_mid.value.value() + 0.5 * out.q_to_mid.value.value();
  return out;
}

double gjs(const CredalSet& p, const CredalSet& q, double tol, Execution exec) {
  return gjs_report(p, q, tol, exec).value;
}

SolverReport inf_tv_to_hull(const Distribution& mu, const CredalSet& q) {
  require_same_space(mu.space(), q.space());
  const std::size_t n = mu.size();
  const std::size_t k = q.size();

  // variables: lambda (k), s_plus (n), s_minus (n)
  LinearProgram lp;
  lp.constraints = Matrix(n + 1, k + 2 * n);
  lp.rhs.assign(n + 1, 0.0);
  lp.cost.assign(k + 2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) lp.constraints(i, j) = q.vertex(j)[i];
    lp.constraints(i, k + i) = 1.0;
    lp.constraints(i, k + n + i) = -1.0;
    lp.rhs[i] = mu[i];
    lp.cost[k + i] = 0.5;
    lp.cost[k + n + i] = 0.5;
  }
  for (std::size_t j = 0; j < k; ++j) lp.constraints(n, j) = 1.0;
  lp.rhs[n] = 1.0;

  const LpSolution sol = solve_lp_or_throw(lp, "inf_tv_to_hull");
  SolverReport out;
  out.witness_inner = to_weights(std::span<const double>(sol.primal).first(k));
  const double value = tv_vectors(mu.weights(), mixture_point(out.witness_inner->coefficients(), q));
  out.value = ExtendedReal(value);
  double mass = 0.0;
  for (double x : sol.primal) mass += x;
  out.gap = std::max(0.0, value - sol.dual_objective) + sol.dual_infeasibility * mass;
  out.iterations = sol.iterations;
  return out;
}

SolverReport directed_tv(const CredalSet& p, const CredalSet& q, Execution exec) {
  require_same_space(p.space(), q.space());
  auto per_vertex =
      map_indices(p.size(), [&](std::size_t i) { return inf_tv_to_hull(p.vertex(i), q); }, exec);
  return reduce_outer_max(std::move(per_vertex));
}

double gtv(const CredalSet& p, const CredalSet& q, Execution exec) {
  const double forward = directed_tv(p, q, exec).value.value();
  const double backward = directed_tv(q, p, exec).value.value();
  return std::max(forward, backward);
}

SolverReport inf_wasserstein_to_hull(const Distribution& mu, const CredalSet& q, double order) {
  require_same_space(mu.space(), q.space());
  require_order(order);
  const Matrix& d = mu.space()->require_metric();
  const std::size_t n = mu.size();
  const std::size_t k = q.size();

  // variables: gamma (n*n, row-major), lambda (k)
  LinearProgram lp;
  lp.constraints = Matrix(2 * n + 1, n * n + k);
  lp.rhs.assign(2 * n + 1, 0.0);
  lp.cost.assign(n * n + k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t v = i * n + j;
      lp.cost[v] = std::pow(d(i, j), order);
      lp.constraints(i, v) = 1.0;
      lp.constraints(n + j, v) = 1.0;
    }
    lp.rhs[i] = mu[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < k; ++c) lp.constraints(n + j, n * n + c) = -q.vertex(c)[j];
  }
  for (std::size_t c = 0; c < k; ++c) lp.constraints(2 * n, n * n + c) = 1.0;
  lp.rhs[2 * n] = 1.0;

  const LpSolution sol = solve_lp_or_throw(lp, "inf_wasserstein_to_hull");
  SolverReport out;
  out.witness_inner = to_weights(std::span<const double>(sol.primal).subspan(n * n, k));
  const double primal = std::max(0.0, sol.objective);
  double mass = 0.0;
  for (double x : sol.primal) mass += x;
  const double dual = std::max(0.0, sol.dual_objective - sol.dual_infeasibility * mass);
  out.value = ExtendedReal(transport_cost_root(primal, order));
  out.gap = std::max(0.0, out.value.value() - transport_cost_root(std::min(dual, primal), order));
  out.iterations = sol.iterations;
  return out;
}

SolverReport directed_wasserstein(const CredalSet& p, const CredalSet& q, double order,
                                  Execution exec) {
  require_same_space(p.space(), q.space());
  require_order(order);
  p.space()->require_metric();
  auto per_vertex = map_indices(
      p.size(), [&](std::size_t i) { return inf_wasserstein_to_hull(p.vertex(i), q, order); }, exec);
  return reduce_outer_max(std::move(per_vertex));
}

double gwasserstein(const CredalSet& p, const CredalSet& q, double order, Execution exec) {
  const double forward = directed_wasserstein(p, q, order, exec).value.value();
  const double backward = directed_wasserstein(q, p, order, exec).value.value();
  return std::max(forward, backward);
}

KlBarValue kl_bar(const CredalSet& p, const CredalSet& q, double tol, Execution exec) {
  KlBarValue out;
  out.forward = gkl(p, q, tol, exec).value;
  out.backward = gkl(q, p, tol, exec).value;
  out.total = out.forward + out.backward;
  return out;
}

bool hull_contains(const CredalSet& p, const Distribution& mu, double tol) {
  require_tolerance(tol);
  return inf_tv_to_hull(mu, p).value.value() <= tol;
}

}  // namespace credal
