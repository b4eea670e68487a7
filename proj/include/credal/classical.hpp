#pragma once

#include <optional>
#include <span>
#include <vector>

#include "credal/core_model.hpp"
#include "credal/extended_real.hpp"

namespace credal {

/// Entries of phi above this are rejected before exponentiation.
inline constexpr double kMaxExponent = 700.0;

/// Bounded real function on the sample space, stored by value per point.
class TestFunction {
 public:
  /// Throws BoundViolation if a bound is given and max |value| exceeds it.
  explicit TestFunction(std::vector<double> values, std::optional<double> bound = std::nullopt);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::optional<double>& bound() const noexcept { return bound_; }

  /// max_i |value_i|
  double sup_norm() const noexcept;

 private:
  std::vector<double> values_;
  std::optional<double> bound_;
};

struct TransportPlan {
  Matrix plan;
  double cost = 0.0;
  /// Primal minus dual objective of the transport LP, plus any dual
  /// infeasibility weighted by the total mass.
  double certified_gap = 0.0;
};

// Raw-vector kernels shared by the solvers and oracles. They assume equal
// lengths and valid probability vectors.
ExtendedReal kl_vectors(std::span<const double> mu, std::span<const double> nu);
double tv_vectors(std::span<const double> mu, std::span<const double> nu);
double expectation(std::span<const double> weights, std::span<const double> phi);
/// log sum_i w_i exp(phi_i), shifted by the max exponent over the support of w.
double log_expectation_exp(std::span<const double> weights, std::span<const double> phi);

/// Sum over the support of mu of mu_i log(mu_i / nu_i); +inf unless
/// support(mu) is contained in support(nu). Throws SpaceMismatch.
ExtendedReal kl(const Distribution& mu, const Distribution& nu);

/// Jensen-Shannon divergence against the midpoint (mu + nu) / 2.
double js(const Distribution& mu, const Distribution& nu);

/// Half the L1 distance.
double tv(const Distribution& mu, const Distribution& nu);

/// Optimal coupling for an n x n nonnegative cost. Throws SpaceMismatch,
/// InvalidArgument (bad cost) or SolverFailure.
TransportPlan solve_transport(const Matrix& cost, const Distribution& mu, const Distribution& nu);

/// p-Wasserstein distance using the space metric. Throws NoMetric,
/// SpaceMismatch or InvalidArgument for p < 1.
double wasserstein(const Distribution& mu, const Distribution& nu, double p);

/// p-th root of an optimal transport cost. Costs below 1e-15 are LP round-off
/// and map to 0, since the root would otherwise inflate them (1e-16 -> 1e-8).
double transport_cost_root(double cost, double p);

/// E_mu[phi] - log E_nu[exp(phi)]; never exceeds kl(mu, nu).
/// Throws OverflowGuard when max phi > 700.
double kl_dual_value(const Distribution& mu, const Distribution& nu, const TestFunction& phi);

/// |E_mu[phi] - E_nu[phi]| / 2 for |phi| <= 1. Throws BoundViolation.
double tv_dual_value(const Distribution& mu, const Distribution& nu, const TestFunction& phi);

}  // namespace credal
